#include "mbuw/lm_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

void validate_config(const LmConfig& c) {
    if (!(c.mu0 > 0.0)) throw ValidationError("lm_solve: mu0 must be positive");
    if (!(c.mu_up > 1.0)) throw ValidationError("lm_solve: mu_up must exceed 1");
    if (!(c.mu_down > 0.0 && c.mu_down < 1.0)) throw ValidationError("lm_solve: mu_down must lie in (0, 1)");
    if (c.max_iter < 1) throw ValidationError("lm_solve: max_iter must be >= 1");
    if (!(c.step_tol > 0.0) || !(c.sse_tol > 0.0)) throw ValidationError("lm_solve: tolerances must be positive");
    if (c.max_inflations < 1) throw ValidationError("lm_solve: max_inflations must be >= 1");
}

Eigen::VectorXd eval_residual(const LmProblem& problem, const Eigen::VectorXd& theta, Eigen::Index p) {
    Eigen::VectorXd r = problem.residual(theta);
    if (r.size() < p) {
        std::ostringstream os;
        os << "lm_solve: " << r.size() << " residuals for " << p << " parameters";
        throw ValidationError(os.str());
    }
    if (!r.allFinite()) {
        std::ostringstream os;
        os << "lm_solve: non-finite residual at theta = [" << theta.transpose() << "]";
        throw NumericalError(os.str());
    }
    return r;
}

Eigen::MatrixXd eval_jacobian(const LmProblem& problem, const Eigen::VectorXd& theta, Eigen::Index m,
                              Eigen::Index p) {
    Eigen::MatrixXd j = problem.jacobian(theta);
    if (j.rows() != m || j.cols() != p) {
        std::ostringstream os;
        os << "lm_solve: Jacobian is " << j.rows() << "x" << j.cols() << ", expected " << m << "x" << p;
        throw ValidationError(os.str());
    }
    if (!j.allFinite()) {
        std::ostringstream os;
        os << "lm_solve: non-finite Jacobian at theta = [" << theta.transpose() << "]";
        throw NumericalError(os.str());
    }
    return j;
}

// Condition number of a symmetric matrix; +inf when not positive definite.
double condition_number(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

bool feasible(const Eigen::VectorXd& theta, const Eigen::VectorXd& lower) {
    return ((theta - lower).array() > 0.0).all();
}

Eigen::MatrixXd damped_inverse(const Eigen::MatrixXd& jtj, double mu) {
    const Eigen::Index p = jtj.rows();
    Eigen::MatrixXd a = jtj + mu * Eigen::MatrixXd::Identity(p, p);
    Eigen::MatrixXd inv = a.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    return 0.5 * (inv + inv.transpose());
}

}  // namespace

LmResult lm_solve(const LmProblem& problem, const Eigen::VectorXd& theta0, const LmConfig& config) {
    validate_config(config);
    if (!problem.residual || !problem.jacobian) throw ValidationError("lm_solve: residual and jacobian are required");
    const Eigen::Index p = theta0.size();
    if (p == 0) throw ValidationError("lm_solve: empty parameter vector");
    Eigen::VectorXd lower = problem.lower_bounds;
    if (lower.size() == 0) lower = Eigen::VectorXd::Constant(p, -std::numeric_limits<double>::infinity());
    if (lower.size() != p) throw ValidationError("lm_solve: lower_bounds length differs from theta0");
    if (!feasible(theta0, lower)) {
        std::ostringstream os;
        os << "lm_solve: theta0 = [" << theta0.transpose() << "] is not above the lower bounds";
        throw ValidationError(os.str());
    }

    LmResult out;
    Eigen::VectorXd theta = theta0;
    Eigen::VectorXd r = eval_residual(problem, theta, p);
    const Eigen::Index m = r.size();
    double sse = r.squaredNorm();
    out.sse_trace.push_back(sse);

    double mu = config.mu0;
    double accepted_mu = config.mu0;
    Eigen::MatrixXd jtj;

    int iter = 0;
    while (true) {
        if (sse == 0.0) {
            out.converged = true;
            out.stop_reason = "zero residual";
            break;
        }
        if (iter >= config.max_iter) {
            out.stop_reason = "iteration limit";
            break;
        }
        ++iter;

        const Eigen::MatrixXd jac = eval_jacobian(problem, theta, m, p);
        jtj = jac.transpose() * jac;
        const Eigen::VectorXd rhs = -(jac.transpose() * r);

        bool accepted = false;
        bool done = false;
        for (int inflations = 0; !accepted && !done; ) {
            const Eigen::MatrixXd a = jtj + mu * Eigen::MatrixXd::Identity(p, p);
            if (condition_number(a) > kLmMaxCondition) {
                if (mu >= kLmSingularMu) {
                    std::ostringstream os;
                    os << "lm_solve: normal equations singular at mu = " << mu;
                    throw NumericalError(os.str());
                }
                mu *= config.mu_up;
                continue;
            }
            Eigen::VectorXd step = a.ldlt().solve(rhs);
            if (!step.allFinite()) throw NumericalError("lm_solve: non-finite step");

            if (step.norm() < config.step_tol) {
                out.converged = true;
                out.stop_reason = "step tolerance";
                done = true;
                break;
            }
            Eigen::VectorXd candidate = theta + step;
            for (int halvings = 0; !feasible(candidate, lower) && halvings < 200; ++halvings) {
                step *= 0.5;
                candidate = theta + step;
            }
            if (!feasible(candidate, lower)) throw NumericalError("lm_solve: cannot find a feasible step");

            const Eigen::VectorXd r_new = eval_residual(problem, candidate, p);
            const double sse_new = r_new.squaredNorm();
            if (sse_new < sse) {
                const double rel = (sse - sse_new) / sse;
                theta = candidate;
                r = r_new;
                sse = sse_new;
                out.sse_trace.push_back(sse);
                accepted_mu = mu;
                mu *= config.mu_down;
                accepted = true;
                if (step.norm() < config.step_tol) {
                    out.converged = true;
                    out.stop_reason = "step tolerance";
                    done = true;
                } else if (rel < config.sse_tol) {
                    out.converged = true;
                    out.stop_reason = "sse tolerance";
                    done = true;
                }
            } else {
                mu *= config.mu_up;
                if (++inflations > config.max_inflations) {
                    out.stop_reason = "damping exhausted";
                    done = true;
                }
            }
        }
        if (done) break;
    }

    out.estimate = theta;
    out.sse = sse;
    out.iterations = iter;
    const Eigen::MatrixXd jac_final = eval_jacobian(problem, theta, m, p);
    out.covariance = damped_inverse(jac_final.transpose() * jac_final, accepted_mu);
    out.covariance_mu = accepted_mu;
    return out;
}

Eigen::VectorXd standard_errors(const Eigen::MatrixXd& covariance, std::size_t n) {
    if (n == 0) throw ValidationError("standard_errors: sample size must be positive");
    if (covariance.rows() != covariance.cols()) throw ValidationError("standard_errors: covariance must be square");
    Eigen::VectorXd se(covariance.rows());
    for (Eigen::Index i = 0; i < covariance.rows(); ++i) {
        const double v = covariance(i, i);
        if (v < 0.0 || std::isnan(v)) {
            std::ostringstream os;
            os << "standard_errors: covariance diagonal " << i << " is negative (" << v << ")";
            throw NumericalError(os.str());
        }
        se(i) = std::sqrt(v / static_cast<double>(n));
    }
    return se;
}

}  // namespace mbuw

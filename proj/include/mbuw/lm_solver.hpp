#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mbuw {

// Damped least-squares problem: minimize ||r(theta)||^2 subject to
// theta_j > lower_bounds_j.
//
// residual maps a parameter vector of length p to m >= p residuals, oriented
// as (data - model). jacobian returns the m x p matrix of residual partial
// derivatives dr_i/dtheta_j (i.e. the negated model Jacobian).
struct LmProblem {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
    Eigen::VectorXd lower_bounds;
};

struct LmConfig {
    double mu0 = 1e-3;     // initial damping
    double mu_up = 10.0;   // multiplier after a rejected step
    double mu_down = 0.1;  // multiplier after an accepted step
    int max_iter = 1000;
    double step_tol = 1e-10;  // accepted (or candidate) step norm
    double sse_tol = 1e-12;   // relative SSE improvement
    int max_inflations = 50;  // rejected retries within one iteration
};

// Damping value above which a numerically singular normal matrix is fatal.
inline constexpr double kLmSingularMu = 1e8;
// Condition-number ceiling for (J'J + mu I).
inline constexpr double kLmMaxCondition = 1e14;
// Default lower bound for distribution parameters.
inline constexpr double kDefaultParamLowerBound = 1e-8;

struct LmResult {
    Eigen::VectorXd estimate;
    double sse = 0.0;
    // (J'J + mu I)^-1 at the final iterate, with mu the damping that produced
    // the last accepted step (mu0 if no step was accepted).
    Eigen::MatrixXd covariance;
    double covariance_mu = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
    // SSE at theta0 followed by the SSE after each accepted step.
    std::vector<double> sse_trace;
};

// Levenberg-Marquardt iteration with identity damping.
//
// Each iteration solves (J'J + mu I) delta = -J'r. A candidate that lowers
// the SSE is accepted and mu shrinks by mu_down; otherwise mu grows by mu_up
// and the step is recomputed from the same iterate. Candidates that cross a
// lower bound are halved toward the current iterate until feasible.
//
// Throws ValidationError on malformed input, NumericalError on a non-finite
// residual/Jacobian or when the normal matrix stays singular at
// mu >= kLmSingularMu. Exhausting max_iter is not an error: the best iterate is
// returned with converged == false.
LmResult lm_solve(const LmProblem& problem, const Eigen::VectorXd& theta0,
                  const LmConfig& config = {});

// sqrt(diag(covariance) / n). Throws NumericalError on a negative diagonal.
Eigen::VectorXd standard_errors(const Eigen::MatrixXd& covariance, std::size_t n);
inline Eigen::VectorXd standard_errors(const LmResult& result, std::size_t n) {
    return standard_errors(result.covariance, n);
}

}  // namespace mbuw

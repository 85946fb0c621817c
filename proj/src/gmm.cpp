#include "mbuw/gmm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

// d E[Y^k] / d lambda.
double moment_lambda_derivative(int k, double lambda) {
    const double kl = k * lambda;
    const double a = 2.0 + kl;
    const double b = 3.0 + kl;
    return -6.0 * k * (5.0 + 2.0 * kl) / (a * a * b * b);
}

void check_moments(const MomentSummary& ms) {
    if (ms.n < 2) throw ValidationError("moment summary needs n >= 2");
    if (!(ms.m1 > 0.0 && ms.m1 < 1.0) || !(ms.m2 > 0.0 && ms.m2 <= ms.m1)) {
        std::ostringstream os;
        os << "moment summary violates 0 < m2 <= m1 < 1 (m1=" << ms.m1 << ", m2=" << ms.m2 << ")";
        throw ValidationError(os.str());
    }
}

Eigen::VectorXd nan_vector(Eigen::Index n) {
    return Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Mle: return "mle";
        case Method::Gmm: return "gmm";
        case Method::Percentile: return "percentile";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "mle") return Method::Mle;
    if (name == "gmm") return Method::Gmm;
    if (name == "percentile") return Method::Percentile;
    throw ValidationError("unknown method '" + std::string(name) + "' (expected mle, gmm or percentile)");
}

MomentSummary sample_moments(const UnitSample& s) {
    if (s.size() < 2) throw ValidationError("sample_moments: need at least 2 observations");
    double s1 = 0.0;
    double s2 = 0.0;
    for (double y : s.values()) {
        s1 += y;
        s2 += y * y;
    }
    const double n = static_cast<double>(s.size());
    return MomentSummary{s1 / n, s2 / n, s.size()};
}

Eigen::Vector2d moment_residuals(const MbuwParams& theta, const MomentSummary& ms) {
    return {ms.m1 - raw_moment(1, theta), ms.m2 - raw_moment(2, theta)};
}

Eigen::Matrix2d moment_jacobian(const MbuwParams& theta, const MomentSummary& /*ms*/) {
    const double a = theta.alpha();
    const double b = theta.beta();
    const double lambda = theta.lambda();
    const double dl_da = b * std::pow(a, b - 1.0);
    const double dl_db = lambda * std::log(a);
    Eigen::Matrix2d j;
    for (int k = 1; k <= 2; ++k) {
        const double dmu = moment_lambda_derivative(k, lambda);
        j(k - 1, 0) = -dmu * dl_da;
        j(k - 1, 1) = -dmu * dl_db;
    }
    return j;
}

MbuwParams gmm_default_start(const MomentSummary& ms) {
    check_moments(ms);
    const double m1 = ms.m1;
    const double disc = 25.0 * m1 * m1 - 4.0 * m1 * (6.0 * m1 - 6.0);
    const double lambda = (-5.0 * m1 + std::sqrt(disc)) / (2.0 * m1);
    return MbuwParams::from_lambda(lambda);
}

FitReport fit_gmm(const UnitSample& s, std::optional<MbuwParams> theta0, const LmConfig& config) {
    const MomentSummary ms = sample_moments(s);
    check_moments(ms);
    const MbuwParams start = theta0 ? *theta0 : gmm_default_start(ms);

    LmProblem problem;
    problem.residual = [&ms](const Eigen::VectorXd& th) -> Eigen::VectorXd {
        try {
            return moment_residuals(MbuwParams(th(0), th(1)), ms);
        } catch (const DomainError&) {
            return nan_vector(2);
        }
    };
    problem.jacobian = [&ms](const Eigen::VectorXd& th) -> Eigen::MatrixXd {
        try {
            return moment_jacobian(MbuwParams(th(0), th(1)), ms);
        } catch (const DomainError&) {
            return Eigen::MatrixXd::Constant(2, 2, std::numeric_limits<double>::quiet_NaN());
        }
    };
    problem.lower_bounds = Eigen::Vector2d::Constant(kDefaultParamLowerBound);

    const LmResult res = lm_solve(problem, Eigen::Vector2d(start.alpha(), start.beta()), config);

    FitReport report(Method::Gmm, MbuwParams(res.estimate(0), res.estimate(1)), s.size());
    report.covariance = res.covariance;
    report.standard_errors = standard_errors(res, s.size());
    report.sse = res.sse;
    report.converged = res.converged;
    report.iterations = res.iterations;
    report.stop_reason = res.stop_reason;
    report.moments = ms;
    return report;
}

}  // namespace mbuw

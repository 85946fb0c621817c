#include "mbuw/percentile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

constexpr double kFuzz = 4.0 * std::numeric_limits<double>::epsilon();

void check_pair(const QuantilePair& qp) {
    if (!(qp.u_lo > 0.0 && qp.u_lo < qp.u_hi && qp.u_hi < 1.0)) {
        std::ostringstream os;
        os << "quantile levels must satisfy 0 < u_lo < u_hi < 1 (got " << qp.u_lo << ", " << qp.u_hi << ")";
        throw ValidationError(os.str());
    }
    if (!(qp.y_lo > 0.0 && qp.y_lo <= qp.y_hi && qp.y_hi < 1.0)) {
        std::ostringstream os;
        os << "target quantiles must satisfy 0 < y_lo <= y_hi < 1 (got " << qp.y_lo << ", " << qp.y_hi << ")";
        throw ValidationError(os.str());
    }
}

}  // namespace

double empirical_quantile(const UnitSample& s, double u, int type) {
    if (s.size() < 4) throw ValidationError("empirical_quantile: need at least 4 observations");
    if (!(u > 0.0 && u < 1.0)) throw DomainError("empirical_quantile: level must lie in (0, 1)");
    if (type < 1 || type > 9) throw ValidationError("empirical_quantile: type must be 1..9");

    const auto x = s.sorted();
    const auto n = static_cast<long>(x.size());
    // 1-based order statistic, clamped to the sample range.
    auto order_stat = [&](long i) { return x[static_cast<std::size_t>(std::clamp(i, 1L, n) - 1)]; };

    double h = 0.0;
    long j = 0;
    if (type <= 3) {
        const double nppm = type == 3 ? n * u - 0.5 : n * u;
        const double fuzz = kFuzz * std::max(1.0, std::fabs(nppm));
        j = static_cast<long>(std::floor(nppm + fuzz));
        const bool above = nppm > static_cast<double>(j) + fuzz;
        switch (type) {
            case 1: h = above ? 1.0 : 0.0; break;
            case 2: h = above ? 1.0 : 0.5; break;
            default: h = (above || j % 2 == 1) ? 1.0 : 0.0; break;
        }
    } else {
        double a = 0.0;
        double b = 0.0;
        switch (type) {
            case 4: a = 0.0; b = 1.0; break;
            case 5: a = 0.5; b = 0.5; break;
            case 6: a = 0.0; b = 0.0; break;
            case 7: a = 1.0; b = 1.0; break;
            case 8: a = 1.0 / 3.0; b = 1.0 / 3.0; break;
            default: a = 3.0 / 8.0; b = 3.0 / 8.0; break;
        }
        const double nppm = a + u * (static_cast<double>(n) + 1.0 - a - b);
        const double fuzz = kFuzz * std::max(1.0, std::fabs(nppm));
        j = static_cast<long>(std::floor(nppm + fuzz));
        h = nppm - static_cast<double>(j);
        if (std::fabs(h) < fuzz) h = 0.0;
    }
    if (h == 0.0) return order_stat(j);
    if (h == 1.0) return order_stat(j + 1);
    return (1.0 - h) * order_stat(j) + h * order_stat(j + 1);
}

QuantilePair make_quantile_pair(const UnitSample& s, const QuantileSettings& settings) {
    QuantilePair qp{settings.u_lo, settings.u_hi, 0.0, 0.0, settings.type};
    if (!(qp.u_lo > 0.0 && qp.u_lo < qp.u_hi && qp.u_hi < 1.0)) {
        std::ostringstream os;
        os << "quantile levels must satisfy 0 < u_lo < u_hi < 1 (got " << qp.u_lo << ", " << qp.u_hi << ")";
        throw ValidationError(os.str());
    }
    qp.y_lo = empirical_quantile(s, qp.u_lo, qp.type);
    qp.y_hi = empirical_quantile(s, qp.u_hi, qp.type);
    return qp;
}

Eigen::Vector2d percentile_residuals(const MbuwParams& theta, const QuantilePair& qp) {
    const double lambda = theta.lambda();
    return {qp.y_lo - std::pow(c_constant(qp.u_lo), lambda), qp.y_hi - std::pow(c_constant(qp.u_hi), lambda)};
}

Eigen::Matrix2d percentile_jacobian(const MbuwParams& theta, const QuantilePair& qp) {
    const double a = theta.alpha();
    const double b = theta.beta();
    const double lambda = theta.lambda();
    const double dl_da = b * std::pow(a, b - 1.0);
    const double dl_db = lambda * std::log(a);
    Eigen::Matrix2d j;
    const double levels[2] = {qp.u_lo, qp.u_hi};
    for (int k = 0; k < 2; ++k) {
        const double c = c_constant(levels[k]);
        // d(c^lambda)/d lambda
        const double dq = std::pow(c, lambda) * std::log(c);
        j(k, 0) = -dq * dl_da;
        j(k, 1) = -dq * dl_db;
    }
    return j;
}

MbuwParams percentile_default_start(const QuantilePair& qp) {
    check_pair(qp);
    const double l_lo = std::log(qp.y_lo) / std::log(c_constant(qp.u_lo));
    const double l_hi = std::log(qp.y_hi) / std::log(c_constant(qp.u_hi));
    return MbuwParams::from_lambda(0.5 * (l_lo + l_hi));
}

FitReport fit_percentile(const UnitSample& s, std::optional<MbuwParams> theta0,
                         const QuantileSettings& settings, const LmConfig& config) {
    if (s.size() < 4) throw ValidationError("fit_percentile: need at least 4 observations");
    const QuantilePair qp = make_quantile_pair(s, settings);
    check_pair(qp);
    const MbuwParams start = theta0 ? *theta0 : percentile_default_start(qp);

    const auto nan2 = [] { return Eigen::VectorXd::Constant(2, std::numeric_limits<double>::quiet_NaN()); };
    LmProblem problem;
    problem.residual = [&qp, nan2](const Eigen::VectorXd& th) -> Eigen::VectorXd {
        try {
            return percentile_residuals(MbuwParams(th(0), th(1)), qp);
        } catch (const DomainError&) {
            return nan2();
        }
    };
    problem.jacobian = [&qp](const Eigen::VectorXd& th) -> Eigen::MatrixXd {
        try {
            return percentile_jacobian(MbuwParams(th(0), th(1)), qp);
        } catch (const DomainError&) {
            return Eigen::MatrixXd::Constant(2, 2, std::numeric_limits<double>::quiet_NaN());
        }
    };
    problem.lower_bounds = Eigen::Vector2d::Constant(kDefaultParamLowerBound);

    const LmResult res = lm_solve(problem, Eigen::Vector2d(start.alpha(), start.beta()), config);

    FitReport report(Method::Percentile, MbuwParams(res.estimate(0), res.estimate(1)), s.size());
    report.covariance = res.covariance;
    report.standard_errors = standard_errors(res, s.size());
    report.sse = res.sse;
    report.converged = res.converged;
    report.iterations = res.iterations;
    report.stop_reason = res.stop_reason;
    report.quantiles = qp;
    return report;
}

}  // namespace mbuw

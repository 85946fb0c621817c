#include "mbuw/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

constexpr int kScanPoints = 400;

double profile_nll(const UnitSample& s, double log_lambda) {
    return nll(s, MbuwParams::from_lambda(std::exp(log_lambda)));
}

}  // namespace

double nll(const UnitSample& s, const MbuwParams& p) {
    double total = 0.0;
    for (double y : s.values()) {
        const double lp = log_pdf(y, p);
        if (!std::isfinite(lp)) {
            std::ostringstream os;
            os << "nll: density is zero or non-finite at y=" << y << " (lambda=" << p.lambda() << ")";
            throw NumericalError(os.str());
        }
        total -= lp;
    }
    return total;
}

FitReport fit_mle(const UnitSample& s, std::optional<MbuwParams> theta0) {
    if (s.size() < 3) throw ValidationError("fit_mle: need at least 3 observations");
    const double beta = theta0 ? theta0->beta() : 1.0;

    const double lo = std::log(kLambdaMin);
    const double hi = std::log(kLambdaMax);
    const double h = (hi - lo) / (kScanPoints - 1);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        double v = std::numeric_limits<double>::infinity();
        try {
            v = profile_nll(s, lo + h * i);
        } catch (const NumericalError&) {
        }
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == 0 || best == kScanPoints - 1 || !std::isfinite(best_val)) {
        std::ostringstream os;
        os << "fit_mle: likelihood maximum not bracketed inside lambda in [" << kLambdaMin << ", " << kLambdaMax << "]";
        throw ConvergenceError(os.str());
    }

    auto objective = [&s](double t) {
        try {
            return profile_nll(s, t);
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::uintmax_t max_iter = 200;
    const auto [log_lambda, value] = boost::math::tools::brent_find_minima(
        objective, lo + h * (best - 1), lo + h * (best + 1), std::numeric_limits<double>::digits / 2, max_iter);
    const double lambda = std::exp(log_lambda);

    FitReport report(Method::Mle, MbuwParams(std::pow(lambda, 1.0 / beta), beta), s.size());
    report.loglik = -value;
    report.iterations = static_cast<int>(max_iter);
    report.converged = max_iter < 200;
    report.stop_reason = report.converged ? "bracket tolerance" : "iteration limit";

    // Observed information in lambda from a central second difference.
    const double step = 1e-4 * lambda;
    auto nll_at = [&s](double l) { return nll(s, MbuwParams::from_lambda(l)); };
    const double curvature = (nll_at(lambda + step) - 2.0 * nll_at(lambda) + nll_at(lambda - step)) / (step * step);
    if (curvature > 0.0) report.lambda_se = 1.0 / std::sqrt(curvature);
    return report;
}

LikelihoodSummary likelihood_summary(const FitReport& fit) {
    if (!fit.loglik) throw ValidationError("likelihood_summary: fit carries no log-likelihood");
    return LikelihoodSummary{*fit.loglik, -*fit.loglik, 2, fit.n};
}

SimplexResult minimize_nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> x0, double initial_step, double tol, int max_iter) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw ValidationError("minimize_nelder_mead: empty start vector");
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += initial_step;
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    SimplexResult out;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];
        if (std::fabs(vals[worst] - vals[best]) <= tol * (std::fabs(vals[best]) + tol)) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i : order) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d] / static_cast<double>(dim);
        }
        auto toward = [&](double coef) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + coef * (pts[worst][d] - centroid[d]);
            return p;
        };

        const auto reflected = toward(-1.0);
        const double f_ref = f(reflected);
        if (f_ref < vals[best]) {
            const auto expanded = toward(-2.0);
            const double f_exp = f(expanded);
            if (f_exp < f_ref) {
                pts[worst] = expanded;
                vals[worst] = f_exp;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_ref;
            }
        } else if (f_ref < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = f_ref;
        } else {
            const bool outside = f_ref < vals[worst];
            const auto contracted = toward(outside ? -0.5 : 0.5);
            const double f_con = f(contracted);
            if (f_con < std::min(f_ref, vals[worst])) {
                pts[worst] = contracted;
                vals[worst] = f_con;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    const auto best_it = std::min_element(vals.begin(), vals.end());
    out.x = pts[static_cast<std::size_t>(best_it - vals.begin())];
    out.value = *best_it;
    out.iterations = iter;
    return out;
}

BaselineFit fit_baseline_mle(const UnitSample& s, Family family, std::optional<BaselineParams> start) {
    if (s.size() < 3) throw ValidationError("fit_baseline_mle: need at least 3 observations");
    BaselineParams init = start ? *start : BaselineParams{family, 1.0, 1.0};
    init.family = family;
    const int k = baseline_param_count(family);

    auto to_params = [family, k](const std::vector<double>& x) {
        return BaselineParams{family, std::exp(x[0]), k == 2 ? std::exp(x[1]) : 1.0};
    };
    auto objective = [&](const std::vector<double>& x) {
        const BaselineParams q = to_params(x);
        double total = 0.0;
        for (double y : s.values()) {
            double d = 0.0;
            try {
                d = baseline_pdf(y, q);
            } catch (const Error&) {
                return std::numeric_limits<double>::infinity();
            }
            if (!(d > 0.0) || !std::isfinite(d)) return std::numeric_limits<double>::infinity();
            total -= std::log(d);
        }
        return total;
    };

    std::vector<double> x0{std::log(init.alpha)};
    if (k == 2) x0.push_back(std::log(init.beta));
    const SimplexResult res = minimize_nelder_mead(objective, x0, 0.5, 1e-12, 10000);
    return BaselineFit{to_params(res.x), -res.value, res.iterations, res.converged};
}

}  // namespace mbuw

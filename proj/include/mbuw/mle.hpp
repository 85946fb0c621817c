#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mbuw/baseline.hpp"
#include "mbuw/data.hpp"
#include "mbuw/distribution.hpp"
#include "mbuw/fit.hpp"

namespace mbuw {

struct LikelihoodSummary {
    double loglik = 0.0;
    double nll = 0.0;  // -loglik
    int k = 2;
    std::size_t n = 0;
};

// Lambda search interval for the profile likelihood.
inline constexpr double kLambdaMin = 1e-3;
inline constexpr double kLambdaMax = 1e3;

// -sum log f(y_i). Throws NumericalError if any term is non-finite.
double nll(const UnitSample& s, const MbuwParams& p);

// Profile maximum likelihood in lambda over [kLambdaMin, kLambdaMax]: a
// log-spaced scan brackets the minimum, Brent's method polishes it. The
// reported pair keeps beta = theta0.beta (1 when absent) and sets
// alpha = lambda^(1/beta). Throws ConvergenceError when the minimum sits on
// the edge of the search interval.
FitReport fit_mle(const UnitSample& s, std::optional<MbuwParams> theta0 = std::nullopt);

LikelihoodSummary likelihood_summary(const FitReport& mle_fit);

// Generic maximum-likelihood fit for a comparison family, minimizing the
// negative log-likelihood built from baseline_pdf with Nelder-Mead over
// log-parameters.
struct BaselineFit {
    BaselineParams params;
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
};

BaselineFit fit_baseline_mle(const UnitSample& s, Family family, std::optional<BaselineParams> start = std::nullopt);

// Nelder-Mead simplex minimizer; exposed for the baseline fits and tests.
struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

SimplexResult minimize_nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> x0, double initial_step = 0.5,
                                   double tol = 1e-10, int max_iter = 5000);

}  // namespace mbuw

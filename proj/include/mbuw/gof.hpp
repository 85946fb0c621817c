#pragma once

#include <functional>

#include "mbuw/data.hpp"
#include "mbuw/distribution.hpp"
#include "mbuw/mle.hpp"

namespace mbuw {

// Two-sided Kolmogorov-Smirnov distance between the sample's empirical cdf and
// cdf_fn, evaluated at the order-statistic steps. Throws DomainError if
// cdf_fn leaves [0, 1].
double ks_statistic(const UnitSample& s, const std::function<double(double)>& cdf_fn);

// Asymptotic Kolmogorov tail probability with Stephens' small-sample scaling
// z = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) d.
double ks_pvalue(double d, std::size_t n);

struct InformationCriteria {
    double aic = 0.0;
    double aicc = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
};

// Two readings of the same likelihood:
//   standard         -2 loglik + penalty
//   nll_substituted  -2 nll + penalty, i.e. the negative log-likelihood used
//                    in place of the log-likelihood; published MBUW tables
//                    follow this convention.
// hqic_printed_formula is 2 ln(ln(n) (k - 2 nll)), reported for reference only.
struct CriteriaBundle {
    InformationCriteria standard;
    InformationCriteria nll_substituted;
    double hqic_printed_formula = 0.0;
};

// Requires n > k + 1 (ValidationError otherwise).
CriteriaBundle information_criteria(const LikelihoodSummary& ls);

struct GofReport {
    double ks_stat = 0.0;
    double p_value = 1.0;
    bool reject_at_05 = false;
    double loglik = 0.0;
    double nll = 0.0;
    int k = 2;
    std::size_t n = 0;
    CriteriaBundle criteria;
};

inline constexpr double kSignificanceLevel = 0.05;

// KS test against the MBUW cdf plus likelihood criteria at p (k = 2).
GofReport assess_fit(const UnitSample& s, const MbuwParams& p);

}  // namespace mbuw

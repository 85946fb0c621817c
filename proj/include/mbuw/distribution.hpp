#pragma once

#include <cstdint>
#include <vector>

namespace mbuw {

// Shape pair (alpha, beta) of the Median Based Unit Weibull distribution.
//
// Every density, distribution, quantile and moment formula depends on the
// pair only through lambda = alpha^beta, so two parameter sets with equal
// lambda describe the same distribution. The pair is kept for reporting; all
// evaluation goes through lambda().
class MbuwParams {
public:
    // Throws DomainError unless alpha > 0 and beta > 0 (and lambda is finite
    // and positive).
    MbuwParams(double alpha, double beta);

    // Representative (alpha = lambda, beta = 1) of the lambda level set.
    static MbuwParams from_lambda(double lambda);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double lambda() const noexcept { return lambda_; }

private:
    double alpha_;
    double beta_;
    double lambda_;
};

// Unique root t in [0, 1] of 3t^2 - 2t^3 = u (trigonometric form of the
// cubic). The MBUW quantile is this root raised to lambda.
double unit_cubic_root(double u);

// Density on the open interval (0, 1).
double pdf(double y, const MbuwParams& p);

// log(pdf) computed in log space. Returns -infinity when 1 - y^(1/lambda)
// underflows to zero.
double log_pdf(double y, const MbuwParams& p);

// Distribution function, extended by continuity to [0, 1].
double cdf(double y, const MbuwParams& p);

// Inverse of cdf on [0, 1]; quantile(0) = 0, quantile(1) = 1.
double quantile(double u, const MbuwParams& p);

// Non-central moment E[Y^r] = 6 / ((2 + r lambda)(3 + r lambda)).
double raw_moment(int r, const MbuwParams& p);

// n inverse-transform draws; deterministic for a given seed.
std::vector<double> sample(std::size_t n, const MbuwParams& p, std::uint64_t seed);

}  // namespace mbuw

#pragma once

#include <string_view>

namespace mbuw {

// Comparison families on the unit interval.
enum class Family { Beta, Kumaraswamy, Mbur };

std::string_view family_name(Family f);

// Parameters of a comparison family. MBUR uses alpha only; beta is ignored.
struct BaselineParams {
    Family family;
    double alpha;
    double beta = 1.0;
};

double baseline_pdf(double y, const BaselineParams& q);
double baseline_cdf(double y, const BaselineParams& q);

// Free parameter count of the family (2 for Beta and Kumaraswamy, 1 for MBUR).
int baseline_param_count(Family f);

// log Gamma(x) for x > 0 by a Lanczos approximation (g = 7, 9 terms), with
// reflection for x < 0.5.
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Throws ConvergenceError if the fraction does not settle within its
// iteration budget.
double regularized_incomplete_beta(double x, double a, double b);

}  // namespace mbuw

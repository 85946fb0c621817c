#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mbuw/data.hpp"
#include "mbuw/distribution.hpp"
#include "mbuw/fit.hpp"
#include "mbuw/lm_solver.hpp"

namespace mbuw {

// Sample quantile by the Hyndman-Fan definitions (type 1..9, as in R's
// quantile()). Type 2 takes x_(ceil(nu)), averaging x_(nu) and x_(nu+1)
// when nu is an integer. Requires n >= 4 and 0 < u < 1.
double empirical_quantile(const UnitSample& s, double u, int type = 2);

// Root c in [0, 1] of 3c^2 - 2c^3 = u; the MBUW u-quantile is c^lambda.
inline double c_constant(double u) { return unit_cubic_root(u); }

QuantilePair make_quantile_pair(const UnitSample& s, const QuantileSettings& settings = {});

// (y_lo - c(u_lo)^lambda, y_hi - c(u_hi)^lambda).
Eigen::Vector2d percentile_residuals(const MbuwParams& theta, const QuantilePair& qp);

// Rows follow percentile_residuals, columns (alpha, beta).
Eigen::Matrix2d percentile_jacobian(const MbuwParams& theta, const QuantilePair& qp);

// lambda0 = mean over the two targets of log(y_k) / log(c_k), as (lambda0, 1).
MbuwParams percentile_default_start(const QuantilePair& qp);

FitReport fit_percentile(const UnitSample& s, std::optional<MbuwParams> theta0 = std::nullopt,
                         const QuantileSettings& settings = {}, const LmConfig& config = {});

}  // namespace mbuw

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mbuw/data.hpp"
#include "mbuw/distribution.hpp"
#include "mbuw/fit.hpp"
#include "mbuw/lm_solver.hpp"

namespace mbuw {

// Mean of y and y^2 over the sample. Throws ValidationError when n < 2.
MomentSummary sample_moments(const UnitSample& s);

// (m1 - E[Y], m2 - E[Y^2]) at theta.
Eigen::Vector2d moment_residuals(const MbuwParams& theta, const MomentSummary& ms);

// Partial derivatives of moment_residuals with respect to (alpha, beta),
// row k = moment order. The beta column vanishes at alpha = 1.
Eigen::Matrix2d moment_jacobian(const MbuwParams& theta, const MomentSummary& ms);

// (alpha, beta) = (lambda1, 1) where lambda1 > 0 solves E[Y] = m1, i.e.
// m1 lambda^2 + 5 m1 lambda + 6 m1 - 6 = 0.
MbuwParams gmm_default_start(const MomentSummary& ms);

// Two-moment fit by Levenberg-Marquardt from theta0 (gmm_default_start when
// absent).
FitReport fit_gmm(const UnitSample& s, std::optional<MbuwParams> theta0 = std::nullopt,
                  const LmConfig& config = {});

}  // namespace mbuw

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "mbuw/distribution.hpp"

namespace mbuw {

enum class Method { Mle, Gmm, Percentile };

std::string_view method_name(Method m);
// Throws ValidationError for anything but "mle", "gmm" or "percentile".
Method parse_method(std::string_view name);

// First and second non-central sample moments.
struct MomentSummary {
    double m1 = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
};

// Probability levels and empirical-quantile definition (Hyndman-Fan type
// 1..9) used by the percentile estimator.
struct QuantileSettings {
    double u_lo = 0.25;
    double u_hi = 0.75;
    int type = 2;
};

// Target quantiles for the percentile system.
struct QuantilePair {
    double u_lo = 0.25;
    double u_hi = 0.75;
    double y_lo = 0.0;
    double y_hi = 0.0;
    int type = 2;
};

// Outcome of any of the three estimators.
struct FitReport {
    FitReport(Method m, const MbuwParams& est, std::size_t sample_size)
        : method(m), estimate(est), n(sample_size) {}

    Method method;
    MbuwParams estimate;
    std::size_t n = 0;

    double lambda() const noexcept { return estimate.lambda(); }

    // Least-squares fits: (J'J + mu I)^-1 over (alpha, beta) and
    // sqrt(diag / n). Empty for maximum likelihood.
    Eigen::MatrixXd covariance;
    Eigen::VectorXd standard_errors;
    std::optional<double> sse;

    // Maximum likelihood: observed-information standard error of lambda-hat
    // and the maximized log-likelihood.
    std::optional<double> lambda_se;
    std::optional<double> loglik;

    bool converged = false;
    int iterations = 0;
    std::string stop_reason;

    std::optional<MomentSummary> moments;
    std::optional<QuantilePair> quantiles;
};

}  // namespace mbuw

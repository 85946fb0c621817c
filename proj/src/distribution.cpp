#include "mbuw/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

void require_open_unit(double y, const char* fn) {
    if (!(y > 0.0 && y < 1.0)) {
        std::ostringstream os;
        os << fn << ": argument " << y << " outside (0, 1)";
        throw DomainError(os.str());
    }
}

void require_closed_unit(double u, const char* fn) {
    if (!(u >= 0.0 && u <= 1.0)) {
        std::ostringstream os;
        os << fn << ": probability " << u << " outside [0, 1]";
        throw DomainError(os.str());
    }
}

// t = y^(1/lambda), formed through the logarithm.
double root_transform(double y, double lambda) { return std::exp(std::log(y) / lambda); }

}  // namespace

MbuwParams::MbuwParams(double alpha, double beta) : alpha_(alpha), beta_(beta), lambda_(0.0) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        std::ostringstream os;
        os << "MBUW parameters must be positive and finite (alpha=" << alpha << ", beta=" << beta
           << ")";
        throw DomainError(os.str());
    }
    lambda_ = std::pow(alpha, beta);
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
        std::ostringstream os;
        os << "alpha^beta is not a positive finite number (alpha=" << alpha << ", beta=" << beta
           << ")";
        throw DomainError(os.str());
    }
}

MbuwParams MbuwParams::from_lambda(double lambda) { return MbuwParams(lambda, 1.0); }

double unit_cubic_root(double u) {
    require_closed_unit(u, "unit_cubic_root");
    const double arg = std::clamp(1.0 - 2.0 * u, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    const double c = -0.5 * (std::cos(phi) - std::numbers::sqrt3 * std::sin(phi)) + 0.5;
    return std::clamp(c, 0.0, 1.0);
}

double pdf(double y, const MbuwParams& p) {
    require_open_unit(y, "pdf");
    const double lambda = p.lambda();
    const double log_y = std::log(y);
    const double one_minus_t = -std::expm1(log_y / lambda);
    return (6.0 / lambda) * one_minus_t * std::exp((2.0 / lambda - 1.0) * log_y);
}

double log_pdf(double y, const MbuwParams& p) {
    require_open_unit(y, "log_pdf");
    const double lambda = p.lambda();
    const double log_y = std::log(y);
    // 1 - y^(1/lambda) = -expm1(log(y)/lambda), accurate when y^(1/lambda) is near 1.
    const double one_minus_t = -std::expm1(log_y / lambda);
    if (!(one_minus_t > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(6.0) - std::log(lambda) + std::log(one_minus_t) + (2.0 / lambda - 1.0) * log_y;
}

double cdf(double y, const MbuwParams& p) {
    if (std::isnan(y)) throw DomainError("cdf: argument is NaN");
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double t = root_transform(y, p.lambda());
    return std::clamp(t * t * (3.0 - 2.0 * t), 0.0, 1.0);
}

double quantile(double u, const MbuwParams& p) {
    require_closed_unit(u, "quantile");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;
    const double c = unit_cubic_root(u);
    return std::exp(p.lambda() * std::log(c));
}

double raw_moment(int r, const MbuwParams& p) {
    if (r < 1) {
        std::ostringstream os;
        os << "raw_moment: order must be >= 1 (got " << r << ")";
        throw DomainError(os.str());
    }
    const double rl = r * p.lambda();
    return 6.0 / ((2.0 + rl) * (3.0 + rl));
}

std::vector<double> sample(std::size_t n, const MbuwParams& p, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample: n must be >= 1");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double u = unif(gen);
        if (u <= 0.0) continue;
        const double y = quantile(u, p);
        // Extreme lambda can round a draw onto the boundary.
        if (y > 0.0 && y < 1.0) out.push_back(y);
    }
    return out;
}

}  // namespace mbuw

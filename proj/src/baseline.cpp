#include "mbuw/baseline.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mbuw/distribution.hpp"
#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

void check_params(const BaselineParams& q) {
    const bool alpha_ok = q.alpha > 0.0 && std::isfinite(q.alpha);
    const bool beta_ok = q.family == Family::Mbur || (q.beta > 0.0 && std::isfinite(q.beta));
    if (!alpha_ok || !beta_ok) {
        std::ostringstream os;
        os << family_name(q.family) << ": parameters must be positive (alpha=" << q.alpha
           << ", beta=" << q.beta << ")";
        throw DomainError(os.str());
    }
}

void check_open_unit(double y, const BaselineParams& q) {
    if (!(y > 0.0 && y < 1.0)) {
        std::ostringstream os;
        os << family_name(q.family) << ": argument " << y << " outside (0, 1)";
        throw DomainError(os.str());
    }
}

MbuwParams mbur_as_mbuw(const BaselineParams& q) { return MbuwParams(q.alpha, 2.0); }

double log_beta_fn(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    std::ostringstream os;
    os << "incomplete beta continued fraction did not converge (x=" << x << ", a=" << a
       << ", b=" << b << ")";
    throw ConvergenceError(os.str());
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Beta: return "beta";
        case Family::Kumaraswamy: return "kumaraswamy";
        case Family::Mbur: return "mbur";
    }
    return "unknown";
}

int baseline_param_count(Family f) { return f == Family::Mbur ? 1 : 2; }

double log_gamma(double x) {
    if (!(x > 0.0) && std::floor(x) == x) throw DomainError("log_gamma: pole at non-positive integer");
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::fabs(std::sin(std::numbers::pi * x))) -
               log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = kLanczosCoef[0];
    const double t = z + kLanczosG + 0.5;
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) a += kLanczosCoef[i] / (z + static_cast<double>(i));
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("regularized_incomplete_beta: a, b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_incomplete_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta_fn(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double baseline_pdf(double y, const BaselineParams& q) {
    check_params(q);
    check_open_unit(y, q);
    switch (q.family) {
        case Family::Beta:
            return std::exp((q.alpha - 1.0) * std::log(y) + (q.beta - 1.0) * std::log1p(-y) -
                            log_beta_fn(q.alpha, q.beta));
        case Family::Kumaraswamy: {
            const double ya = std::pow(y, q.alpha);
            return q.alpha * q.beta * std::pow(y, q.alpha - 1.0) * std::pow(1.0 - ya, q.beta - 1.0);
        }
        case Family::Mbur: return pdf(y, mbur_as_mbuw(q));
    }
    throw DomainError("baseline_pdf: unknown family");
}

double baseline_cdf(double y, const BaselineParams& q) {
    check_params(q);
    check_open_unit(y, q);
    switch (q.family) {
        case Family::Beta: return regularized_incomplete_beta(y, q.alpha, q.beta);
        case Family::Kumaraswamy: return -std::expm1(q.beta * std::log1p(-std::pow(y, q.alpha)));
        case Family::Mbur: return cdf(y, mbur_as_mbuw(q));
    }
    throw DomainError("baseline_cdf: unknown family");
}

}  // namespace mbuw

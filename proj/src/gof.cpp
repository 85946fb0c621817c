#include "mbuw/gof.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

double ks_statistic(const UnitSample& s, const std::function<double(double)>& cdf_fn) {
    const auto x = s.sorted();
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf_fn(x[i]);
        if (!(f >= 0.0 && f <= 1.0)) {
            std::ostringstream os;
            os << "ks_statistic: cdf returned " << f << " at x=" << x[i];
            throw DomainError(os.str());
        }
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    if (n == 0) throw ValidationError("ks_pvalue: n must be positive");
    if (!(d >= 0.0 && d <= 1.0)) throw DomainError("ks_pvalue: statistic outside [0, 1]");
    const double rn = std::sqrt(static_cast<double>(n));
    const double z = (rn + 0.12 + 0.11 / rn) * d;
    // The alternating series converges slowly for small z, where p is ~1.
    if (z < 0.2) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 1000; ++j) {
        const double term = std::exp(-2.0 * j * j * z * z);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

CriteriaBundle information_criteria(const LikelihoodSummary& ls) {
    const double n = static_cast<double>(ls.n);
    const double k = static_cast<double>(ls.k);
    if (!(n > k + 1.0)) {
        std::ostringstream os;
        os << "information_criteria: need n > k + 1 (n=" << ls.n << ", k=" << ls.k << ")";
        throw DomainError(os.str());
    }
    const double correction = 2.0 * k * (k + 1.0) / (n - k - 1.0);
    auto bundle = [&](double mll) {
        InformationCriteria c;
        c.aic = -2.0 * mll + 2.0 * k;
        c.aicc = c.aic + correction;
        c.bic = -2.0 * mll + k * std::log(n);
        c.hqic = -2.0 * mll + 2.0 * k * std::log(std::log(n));
        return c;
    };
    CriteriaBundle out;
    out.standard = bundle(ls.loglik);
    out.nll_substituted = bundle(ls.nll);
    out.hqic_printed_formula = 2.0 * std::log(std::log(n) * (k - 2.0 * ls.nll));
    return out;
}

GofReport assess_fit(const UnitSample& s, const MbuwParams& p) {
    GofReport g;
    g.n = s.size();
    g.k = 2;
    g.ks_stat = ks_statistic(s, [&p](double y) { return cdf(y, p); });
    g.p_value = ks_pvalue(g.ks_stat, s.size());
    g.reject_at_05 = g.p_value < kSignificanceLevel;
    g.nll = nll(s, p);
    g.loglik = -g.nll;
    if (s.size() > 3) g.criteria = information_criteria(LikelihoodSummary{g.loglik, g.nll, g.k, g.n});
    return g;
}

}  // namespace mbuw

#include "mbuw/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "mbuw/gmm.hpp"
#include "mbuw/mle.hpp"
#include "mbuw/percentile.hpp"

namespace mbuw {

namespace {

constexpr const char* kRidgeNote =
    "the distribution depends on (alpha, beta) only through lambda = alpha^beta; "
    "the pair is one point on a flat ridge, so per-parameter variances are not identified";

double parse_number(std::string_view s, const char* what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw ValidationError(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

std::pair<double, double> parse_pair(std::string_view s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        throw ValidationError(std::string(what) + " must be two comma-separated numbers, got '" + std::string(s) + "'");
    }
    return {parse_number(s.substr(0, comma), what), parse_number(s.substr(comma + 1), what)};
}

std::string fmt(double v, int precision = 6) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

std::string csv_num(double v) {
    if (!std::isfinite(v)) return fmt(v);
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

bool is_percentile_reported(const std::string& id) { return id == "support" || id == "voter"; }

nlohmann::json criteria_json(const InformationCriteria& c) {
    return {{"aic", c.aic}, {"aicc", c.aicc}, {"bic", c.bic}, {"hqic", c.hqic}};
}

std::string decision(const GofReport& g) { return g.reject_at_05 ? "reject" : "fail to reject"; }

}  // namespace

OutputFormat parse_format(std::string_view s) {
    if (s == "text") return OutputFormat::Text;
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw ValidationError("unknown format '" + std::string(s) + "' (expected text, json or csv)");
}

InitSpec parse_init(std::string_view s) {
    if (s.empty() || s == "default") return {};
    if (s == "mle") return InitSpec{InitSpec::Kind::Mle, std::nullopt};
    const auto [a, b] = parse_pair(s, "initial pair");
    try {
        return InitSpec{InitSpec::Kind::Pair, MbuwParams(a, b)};
    } catch (const DomainError& e) {
        throw ValidationError(std::string("initial pair: ") + e.what());
    }
}

std::pair<double, double> parse_levels(std::string_view s) {
    const auto levels = parse_pair(s, "quantile levels");
    if (!(levels.first > 0.0 && levels.first < levels.second && levels.second < 1.0)) {
        throw ValidationError("quantile levels must satisfy 0 < u_lo < u_hi < 1");
    }
    return levels;
}

Dataset resolve_dataset(const RunSpec& spec) {
    const std::string& src = spec.dataset;
    if (src.empty()) throw ValidationError("no dataset given");
    const auto& ids = builtin_ids();
    if (std::find(ids.begin(), ids.end(), src) != ids.end()) return load_builtin(src);
    if (src.rfind("synthetic:", 0) == 0) {
        const std::string_view rest = std::string_view(src).substr(10);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw ValidationError("synthetic dataset must be synthetic:<n>:<lambda>");
        const double n = parse_number(rest.substr(0, colon), "synthetic size");
        const double lambda = parse_number(rest.substr(colon + 1), "synthetic lambda");
        if (!(n >= 1.0) || n != std::floor(n)) throw ValidationError("synthetic size must be a positive integer");
        if (!(lambda > 0.0)) throw ValidationError("synthetic lambda must be positive");
        Dataset d;
        d.id = src;
        d.name = "synthetic MBUW sample";
        d.values = sample(static_cast<std::size_t>(n), MbuwParams::from_lambda(lambda), spec.seed);
        d.source_note = "inverse-transform draws, seed " + std::to_string(spec.seed);
        return d;
    }
    return load_csv(src, spec.column);
}

FitOutcome fit_dataset(const Dataset& d, Method method, const InitSpec& init, const QuantileSettings& quantiles,
                       const LmConfig& lm) {
    const UnitSample s = validate(d);
    std::optional<FitReport> init_fit;
    std::optional<MbuwParams> theta0;
    if (init.kind == InitSpec::Kind::Pair) theta0 = init.pair;

    if (method == Method::Mle) {
        FitReport fit = fit_mle(s, theta0);
        GofReport gof = assess_fit(s, fit.estimate);
        return FitOutcome{d, std::nullopt, std::move(fit), std::move(gof)};
    }
    if (init.kind == InitSpec::Kind::Mle) {
        init_fit = fit_mle(s);
        theta0 = init_fit->estimate;
    }
    FitReport fit = method == Method::Gmm ? fit_gmm(s, theta0, lm) : fit_percentile(s, theta0, quantiles, lm);
    GofReport gof = assess_fit(s, fit.estimate);
    return FitOutcome{d, std::move(init_fit), std::move(fit), std::move(gof)};
}

FitOutcome run_fit(const RunSpec& spec) {
    return fit_dataset(resolve_dataset(spec), spec.method, spec.init, spec.quantiles, spec.lm);
}

nlohmann::json to_json(const FitOutcome& o) {
    using nlohmann::json;
    const FitReport& f = o.fit;
    json j;
    j["dataset"] = {{"id", o.dataset.id}, {"name", o.dataset.name}, {"n", o.dataset.n()}, {"source", o.dataset.source_note}};
    j["method"] = std::string(method_name(f.method));
    j["estimate"] = {{"alpha", f.estimate.alpha()}, {"beta", f.estimate.beta()}, {"lambda", f.lambda()}};
    j["note"] = kRidgeNote;
    j["converged"] = f.converged;
    j["iterations"] = f.iterations;
    j["stop_reason"] = f.stop_reason;
    if (o.init_fit) {
        j["init"] = {{"from", "mle"},
                     {"alpha", o.init_fit->estimate.alpha()},
                     {"beta", o.init_fit->estimate.beta()},
                     {"lambda", o.init_fit->lambda()}};
    }
    if (f.covariance.size() > 0) {
        json cov = json::array();
        for (Eigen::Index r = 0; r < f.covariance.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < f.covariance.cols(); ++c) row.push_back(f.covariance(r, c));
            cov.push_back(row);
        }
        j["covariance"] = cov;
        j["standard_errors"] = {{"alpha", f.standard_errors(0)}, {"beta", f.standard_errors(1)}};
    }
    if (f.sse) j["sse"] = *f.sse;
    if (f.lambda_se) j["lambda_se"] = *f.lambda_se;
    if (f.moments) j["moments"] = {{"m1", f.moments->m1}, {"m2", f.moments->m2}};
    if (f.quantiles) {
        j["quantiles"] = {{"u_lo", f.quantiles->u_lo}, {"u_hi", f.quantiles->u_hi}, {"y_lo", f.quantiles->y_lo},
                          {"y_hi", f.quantiles->y_hi}, {"type", f.quantiles->type}};
    }
    const GofReport& g = o.gof;
    j["gof"] = {{"ks_stat", g.ks_stat},
                {"p_value", g.p_value},
                {"reject_at_05", g.reject_at_05},
                {"loglik", g.loglik},
                {"nll", g.nll},
                {"k", g.k},
                {"n", g.n},
                {"criteria",
                 {{"standard", criteria_json(g.criteria.standard)},
                  {"nll_substituted", criteria_json(g.criteria.nll_substituted)},
                  {"hqic_printed_formula", g.criteria.hqic_printed_formula}}}};
    return j;
}

std::string format_fit(const FitOutcome& o, OutputFormat format) {
    const FitReport& f = o.fit;
    const GofReport& g = o.gof;
    if (format == OutputFormat::Json) return to_json(o).dump(2) + "\n";

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("dataset", o.dataset.id);
    kv.emplace_back("n", std::to_string(o.dataset.n()));
    kv.emplace_back("method", std::string(method_name(f.method)));
    if (o.init_fit) {
        kv.emplace_back("init", "mle (" + fmt(o.init_fit->estimate.alpha()) + ", " + fmt(o.init_fit->estimate.beta()) + ")");
    }
    kv.emplace_back("alpha", fmt(f.estimate.alpha()));
    kv.emplace_back("beta", fmt(f.estimate.beta()));
    kv.emplace_back("lambda", fmt(f.lambda()));
    if (f.standard_errors.size() == 2) {
        kv.emplace_back("se_alpha", fmt(f.standard_errors(0)));
        kv.emplace_back("se_beta", fmt(f.standard_errors(1)));
    }
    if (f.lambda_se) kv.emplace_back("se_lambda", fmt(*f.lambda_se));
    if (f.sse) kv.emplace_back("sse", fmt(*f.sse));
    if (f.moments) {
        kv.emplace_back("m1", fmt(f.moments->m1));
        kv.emplace_back("m2", fmt(f.moments->m2));
    }
    if (f.quantiles) {
        kv.emplace_back("y_lo", fmt(f.quantiles->y_lo));
        kv.emplace_back("y_hi", fmt(f.quantiles->y_hi));
    }
    kv.emplace_back("converged", f.converged ? "yes" : "no");
    kv.emplace_back("stop_reason", f.stop_reason);
    kv.emplace_back("ks_d", fmt(g.ks_stat));
    kv.emplace_back("ks_p", fmt(g.p_value));
    kv.emplace_back("h0_at_0.05", decision(g));
    kv.emplace_back("loglik", fmt(g.loglik));
    kv.emplace_back("nll", fmt(g.nll));
    kv.emplace_back("aic", fmt(g.criteria.standard.aic));
    kv.emplace_back("aicc", fmt(g.criteria.standard.aicc));
    kv.emplace_back("bic", fmt(g.criteria.standard.bic));
    kv.emplace_back("hqic", fmt(g.criteria.standard.hqic));
    kv.emplace_back("aic_nll_sub", fmt(g.criteria.nll_substituted.aic));
    kv.emplace_back("aicc_nll_sub", fmt(g.criteria.nll_substituted.aicc));
    kv.emplace_back("bic_nll_sub", fmt(g.criteria.nll_substituted.bic));

    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "field,value\n";
        for (const auto& [k, v] : kv) os << k << "," << v << "\n";
        return os.str();
    }
    for (const auto& [k, v] : kv) os << std::left << std::setw(14) << k << v << "\n";
    os << "note: " << kRidgeNote << "\n";
    return os.str();
}

PlotKind parse_plot_kind(std::string_view s) {
    if (s == "ecdf") return PlotKind::Ecdf;
    if (s == "pp") return PlotKind::Pp;
    if (s == "qq") return PlotKind::Qq;
    throw ValidationError("unknown plot kind '" + std::string(s) + "' (expected ecdf, pp or qq)");
}

PlotSeries emit_plot_series(const UnitSample& s, const MbuwParams& p, PlotKind kind) {
    const auto x = s.sorted();
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);
    PlotSeries out{kind, {}, {}};
    switch (kind) {
        case PlotKind::Ecdf: {
            out.names = {"x", "ecdf", "cdf"};
            out.columns.assign(3, std::vector<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                out.columns[0][i] = x[i];
                out.columns[1][i] = static_cast<double>(i + 1) / dn;
                out.columns[2][i] = cdf(x[i], p);
            }
            break;
        }
        case PlotKind::Pp: {
            out.names = {"empirical_probability", "model_cdf"};
            out.columns.assign(2, std::vector<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                out.columns[0][i] = (static_cast<double>(i) + 0.5) / dn;
                out.columns[1][i] = cdf(x[i], p);
            }
            break;
        }
        case PlotKind::Qq: {
            out.names = {"model_quantile", "sample_quantile"};
            out.columns.assign(2, std::vector<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                out.columns[0][i] = quantile((static_cast<double>(i) + 0.5) / dn, p);
                out.columns[1][i] = x[i];
            }
            break;
        }
    }
    return out;
}

std::string to_csv(const PlotSeries& series) {
    std::ostringstream os;
    for (std::size_t c = 0; c < series.names.size(); ++c) os << (c ? "," : "") << series.names[c];
    os << "\n";
    for (std::size_t r = 0; r < series.rows(); ++r) {
        for (std::size_t c = 0; c < series.columns.size(); ++c) os << (c ? "," : "") << csv_num(series.columns[c][r]);
        os << "\n";
    }
    return os.str();
}

Table run_table(Method method, const QuantileSettings& quantiles, const LmConfig& lm) {
    Table t{method, {}, {}};
    const InitSpec init = method == Method::Mle ? InitSpec{} : InitSpec{InitSpec::Kind::Mle, std::nullopt};
    for (const auto& id : builtin_ids()) {
        t.rows.push_back(fit_dataset(load_builtin(id), method, init, quantiles, lm));
        t.reported.push_back(method != Method::Percentile || is_percentile_reported(id));
    }
    return t;
}

std::string format_table(const Table& table, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::json j = nlohmann::json::array();
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            nlohmann::json row = to_json(table.rows[i]);
            row["reported"] = table.reported[i];
            j.push_back(std::move(row));
        }
        return j.dump(2) + "\n";
    }

    std::vector<std::string> header = {"dataset", "n", "alpha", "beta", "lambda"};
    const bool lsq = table.method != Method::Mle;
    if (lsq) {
        header.insert(header.end(), {"se_alpha", "se_beta", "sse"});
    } else {
        header.insert(header.end(), {"se_lambda", "loglik", "aic", "aicc", "bic"});
    }
    header.insert(header.end(), {"ks_d", "ks_p", "h0"});
    if (table.method == Method::Gmm) header.insert(header.end(), {"m1", "m2"});
    if (table.method == Method::Percentile) header.insert(header.end(), {"y_lo", "y_hi", "reported"});
    header.push_back("converged");

    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const FitOutcome& o = table.rows[i];
        const FitReport& f = o.fit;
        std::vector<std::string> row = {o.dataset.id, std::to_string(o.dataset.n()), fmt(f.estimate.alpha(), 5),
                                        fmt(f.estimate.beta(), 5), fmt(f.lambda(), 5)};
        if (lsq) {
            row.push_back(fmt(f.standard_errors(0), 4));
            row.push_back(fmt(f.standard_errors(1), 4));
            row.push_back(fmt(f.sse.value_or(NAN), 4));
        } else {
            // Criteria in the nll-substituted convention, matching published tables.
            row.push_back(fmt(f.lambda_se.value_or(NAN), 4));
            row.push_back(fmt(o.gof.loglik, 6));
            row.push_back(fmt(o.gof.criteria.nll_substituted.aic, 6));
            row.push_back(fmt(o.gof.criteria.nll_substituted.aicc, 6));
            row.push_back(fmt(o.gof.criteria.nll_substituted.bic, 6));
        }
        row.push_back(fmt(o.gof.ks_stat, 4));
        row.push_back(fmt(o.gof.p_value, 4));
        row.push_back(decision(o.gof));
        if (f.moments) {
            row.push_back(fmt(f.moments->m1, 4));
            row.push_back(fmt(f.moments->m2, 4));
        }
        if (f.quantiles) {
            row.push_back(fmt(f.quantiles->y_lo, 4));
            row.push_back(fmt(f.quantiles->y_hi, 4));
            row.push_back(table.reported[i] ? "yes" : "no");
        }
        row.push_back(f.converged ? "yes" : "no");
        cells.push_back(std::move(row));
    }

    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
        os << "\n";
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
            os << "\n";
        }
        return os.str();
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << row[c];
        os << "\n";
    };
    line(header);
    for (const auto& row : cells) line(row);
    if (table.method == Method::Mle) os << "aic/aicc/bic use -2*nll + penalty (negative log-likelihood substituted for the log-likelihood)\n";
    os << "note: " << kRidgeNote << "\n";
    return os.str();
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Io: return 2;
        case ErrorKind::Domain:
        case ErrorKind::Parse:
        case ErrorKind::Validation: return 3;
        case ErrorKind::Convergence:
        case ErrorKind::Numerical: return 4;
    }
    return 1;
}

}  // namespace mbuw

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mbuw/data.hpp"
#include "mbuw/errors.hpp"
#include "mbuw/fit.hpp"
#include "mbuw/gof.hpp"
#include "mbuw/lm_solver.hpp"

namespace mbuw {

enum class OutputFormat { Text, Json, Csv };
OutputFormat parse_format(std::string_view s);

// How the least-squares estimators are started.
struct InitSpec {
    enum class Kind { Default, Pair, Mle };
    Kind kind = Kind::Default;
    std::optional<MbuwParams> pair;
};

// Parses "mle", "default" or "a,b".
InitSpec parse_init(std::string_view s);

// Parses "u_lo,u_hi".
std::pair<double, double> parse_levels(std::string_view s);

struct RunSpec {
    // Builtin id, CSV path, or "synthetic:<n>:<lambda>" (drawn with seed).
    std::string dataset;
    std::string column = "0";
    Method method = Method::Mle;
    InitSpec init;
    QuantileSettings quantiles;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 1;
    LmConfig lm;
};

Dataset resolve_dataset(const RunSpec& spec);

struct FitOutcome {
    Dataset dataset;
    std::optional<FitReport> init_fit;  // MLE fit used to seed the method
    FitReport fit;
    GofReport gof;
};

FitOutcome run_fit(const RunSpec& spec);
FitOutcome fit_dataset(const Dataset& d, Method method, const InitSpec& init,
                       const QuantileSettings& quantiles = {}, const LmConfig& lm = {});

nlohmann::json to_json(const FitOutcome& outcome);
std::string format_fit(const FitOutcome& outcome, OutputFormat format);

enum class PlotKind { Ecdf, Pp, Qq };
PlotKind parse_plot_kind(std::string_view s);

struct PlotSeries {
    PlotKind kind;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// ecdf: (x, ecdf = i/n, cdf(x)); pp: ((i - 0.5)/n, cdf(x_(i)));
// qq: (quantile((i - 0.5)/n), x_(i)).
PlotSeries emit_plot_series(const UnitSample& s, const MbuwParams& p, PlotKind kind);
std::string to_csv(const PlotSeries& series);

// Multi-dataset reproduction of the real-data analyses for one method. Every
// builtin dataset is fitted by maximum likelihood first; gmm and percentile
// are then seeded from that fit.
struct Table {
    Method method;
    std::vector<FitOutcome> rows;
    // Percentile only: datasets for which results were published.
    std::vector<bool> reported;
};

Table run_table(Method method, const QuantileSettings& quantiles = {}, const LmConfig& lm = {});
std::string format_table(const Table& table, OutputFormat format);

// CLI exit status: 2 io, 3 validation/domain/parse, 4 convergence/numerical.
int exit_code_for(const Error& e);
inline constexpr int kExitNotConverged = 4;

}  // namespace mbuw

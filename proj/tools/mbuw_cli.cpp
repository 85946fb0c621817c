// mbuw: fit the Median Based Unit Weibull distribution to unit-interval data.
//
//   mbuw datasets
//   mbuw fit   --data dwelling --method gmm --init mle [--format json]
//   mbuw plot  --data support --method percentile --kind qq --out qq.csv
//   mbuw table --method gmm --format csv

#include <fstream>
#include <optional>
#include <sstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mbuw/data.hpp"
#include "mbuw/report.hpp"

namespace {

struct CommonOptions {
    std::string data;
    std::string column = "0";
    std::string method = "mle";
    std::string init = "default";
    std::string levels = "0.25,0.75";
    int qtype = 2;
    std::string format = "text";
    std::string out;
    std::uint64_t seed = 1;
    int max_iter = 1000;
};

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw mbuw::IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw mbuw::IoError("error writing '" + path + "'");
}

mbuw::RunSpec make_spec(const CommonOptions& o) {
    mbuw::RunSpec spec;
    spec.dataset = o.data;
    spec.column = o.column;
    spec.method = mbuw::parse_method(o.method);
    spec.init = mbuw::parse_init(o.init);
    const auto [lo, hi] = mbuw::parse_levels(o.levels);
    spec.quantiles = mbuw::QuantileSettings{lo, hi, o.qtype};
    spec.format = mbuw::parse_format(o.format);
    spec.seed = o.seed;
    spec.lm.max_iter = o.max_iter;
    return spec;
}

int cmd_datasets(const CommonOptions& o) {
    const auto format = mbuw::parse_format(o.format);
    std::ostringstream os;
    if (format == mbuw::OutputFormat::Json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& id : mbuw::builtin_ids()) {
            const auto d = mbuw::load_builtin(id);
            j.push_back({{"id", d.id}, {"name", d.name}, {"n", d.n()}, {"source", d.source_note}});
        }
        os << j.dump(2) << "\n";
    } else {
        const char* sep = format == mbuw::OutputFormat::Csv ? "," : "\t";
        os << "id" << sep << "n" << sep << "name\n";
        for (const auto& id : mbuw::builtin_ids()) {
            const auto d = mbuw::load_builtin(id);
            os << d.id << sep << d.n() << sep << d.name << "\n";
        }
    }
    write_output(os.str(), o.out);
    return 0;
}

int cmd_fit(const CommonOptions& o) {
    const auto spec = make_spec(o);
    const auto outcome = mbuw::run_fit(spec);
    write_output(mbuw::format_fit(outcome, spec.format), o.out);
    if (!outcome.fit.converged) {
        std::cerr << "mbuw: " << mbuw::method_name(spec.method) << " fit of '" << spec.dataset
                  << "' did not converge (" << outcome.fit.stop_reason << ")\n";
        return mbuw::kExitNotConverged;
    }
    return 0;
}

int cmd_plot(const CommonOptions& o, const std::string& kind, const std::string& params) {
    const auto spec = make_spec(o);
    const auto plot_kind = mbuw::parse_plot_kind(kind);
    const auto dataset = mbuw::resolve_dataset(spec);
    const auto sample = mbuw::validate(dataset);
    bool converged = true;
    std::optional<mbuw::MbuwParams> theta;
    if (!params.empty()) {
        const auto init = mbuw::parse_init(params);
        if (init.kind != mbuw::InitSpec::Kind::Pair) throw mbuw::ValidationError("--params must be a pair a,b");
        theta = init.pair;
    } else {
        const auto outcome = mbuw::fit_dataset(dataset, spec.method, spec.init, spec.quantiles, spec.lm);
        theta = outcome.fit.estimate;
        converged = outcome.fit.converged;
    }
    write_output(mbuw::to_csv(mbuw::emit_plot_series(sample, *theta, plot_kind)), o.out);
    return converged ? 0 : mbuw::kExitNotConverged;
}

int cmd_table(const CommonOptions& o) {
    const auto method = mbuw::parse_method(o.method);
    const auto [lo, hi] = mbuw::parse_levels(o.levels);
    mbuw::LmConfig lm;
    lm.max_iter = o.max_iter;
    const auto table = mbuw::run_table(method, mbuw::QuantileSettings{lo, hi, o.qtype}, lm);
    write_output(mbuw::format_table(table, mbuw::parse_format(o.format)), o.out);
    return 0;
}

void add_io_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--format", o.format, "Output format: text, json or csv")->capture_default_str();
    cmd->add_option("--out", o.out, "Write output to this path instead of stdout");
}

void add_fit_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--data", o.data, "Builtin dataset id, CSV path, or synthetic:<n>:<lambda>")->required();
    cmd->add_option("--column", o.column, "CSV column name or zero-based index")->capture_default_str();
    cmd->add_option("--method", o.method, "Estimator: mle, gmm or percentile")->capture_default_str();
    cmd->add_option("--init", o.init, "Initial guess: 'a,b', 'mle' or 'default'")->capture_default_str();
    cmd->add_option("--levels", o.levels, "Percentile levels u_lo,u_hi")->capture_default_str();
    cmd->add_option("--qtype", o.qtype, "Empirical quantile type (1-9)")->capture_default_str()->check(CLI::Range(1, 9));
    cmd->add_option("--seed", o.seed, "Seed for synthetic datasets")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "Levenberg-Marquardt iteration limit")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Median Based Unit Weibull fitting: MLE, moments and percentile estimators"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string plot_kind = "ecdf";
    std::string plot_params;

    auto* datasets = app.add_subcommand("datasets", "List the builtin datasets");
    add_io_options(datasets, opts);

    auto* fit = app.add_subcommand("fit", "Fit one dataset and report goodness of fit");
    add_fit_options(fit, opts);
    add_io_options(fit, opts);

    auto* plot = app.add_subcommand("plot", "Emit ecdf/pp/qq series as CSV");
    add_fit_options(plot, opts);
    plot->add_option("--kind", plot_kind, "Series kind: ecdf, pp or qq")->capture_default_str();
    plot->add_option("--params", plot_params, "Use this (alpha,beta) instead of fitting");
    plot->add_option("--out", opts.out, "Write CSV to this path instead of stdout");

    auto* table = app.add_subcommand("table", "Fit every builtin dataset with one method");
    table->add_option("--method", opts.method, "Estimator: mle, gmm or percentile")->capture_default_str();
    table->add_option("--levels", opts.levels, "Percentile levels u_lo,u_hi")->capture_default_str();
    table->add_option("--qtype", opts.qtype, "Empirical quantile type (1-9)")->capture_default_str()->check(CLI::Range(1, 9));
    table->add_option("--max-iter", opts.max_iter, "Levenberg-Marquardt iteration limit")->capture_default_str()->check(CLI::PositiveNumber);
    add_io_options(table, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (datasets->parsed()) return cmd_datasets(opts);
        if (fit->parsed()) return cmd_fit(opts);
        if (plot->parsed()) return cmd_plot(opts, plot_kind, plot_params);
        if (table->parsed()) return cmd_table(opts);
    } catch (const mbuw::Error& e) {
        std::cerr << "mbuw: " << e.what() << "\n";
        return mbuw::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "mbuw: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

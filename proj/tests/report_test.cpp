#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mbuw/errors.hpp"
#include "mbuw/gof.hpp"
#include "mbuw/report.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + MBUW_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

mbuw::RunSpec spec_for(const std::string& data, mbuw::Method m, mbuw::InitSpec::Kind init) {
    mbuw::RunSpec s;
    s.dataset = data;
    s.method = m;
    s.init.kind = init;
    return s;
}

}  // namespace

TEST(Parse, InitAndLevels) {
    EXPECT_EQ(mbuw::parse_init("mle").kind, mbuw::InitSpec::Kind::Mle);
    const auto pair = mbuw::parse_init("0.5,1.2");
    ASSERT_EQ(pair.kind, mbuw::InitSpec::Kind::Pair);
    EXPECT_DOUBLE_EQ(pair.pair->alpha(), 0.5);
    EXPECT_DOUBLE_EQ(pair.pair->beta(), 1.2);
    EXPECT_THROW(mbuw::parse_init("-1,2"), mbuw::ValidationError);
    EXPECT_EQ(mbuw::parse_levels("0.1,0.9"), std::make_pair(0.1, 0.9));
    EXPECT_THROW(mbuw::parse_levels("0.9,0.1"), mbuw::ValidationError);
    EXPECT_THROW(mbuw::parse_format("yaml"), mbuw::ValidationError);
}

TEST(RunFit, SyntheticDatasetUsesSeed) {
    auto a = spec_for("synthetic:200:1.5", mbuw::Method::Mle, mbuw::InitSpec::Kind::Default);
    auto b = a;
    b.seed = 99;
    EXPECT_EQ(mbuw::resolve_dataset(a).values, mbuw::resolve_dataset(a).values);
    EXPECT_NE(mbuw::resolve_dataset(a).values, mbuw::resolve_dataset(b).values);
}

TEST(RunFit, FloodMleAic) {
    const auto o = mbuw::run_fit(spec_for("flood", mbuw::Method::Mle, mbuw::InitSpec::Kind::Default));
    EXPECT_NEAR(o.gof.criteria.nll_substituted.aic, 16.9233, 0.1);
}

TEST(RunFit, SupportPercentileQuantiles) {
    const auto o = mbuw::run_fit(spec_for("support", mbuw::Method::Percentile, mbuw::InitSpec::Kind::Mle));
    ASSERT_TRUE(o.fit.quantiles.has_value());
    EXPECT_NEAR(o.fit.quantiles->y_lo, 0.865, 1e-12);
    EXPECT_NEAR(o.fit.quantiles->y_hi, 0.95, 1e-12);
    ASSERT_TRUE(o.init_fit.has_value());
}

// Printed GMM row for the first dataset.
TEST(RunFit, DwellingGmmFromMle) {
    const auto o = mbuw::run_fit(spec_for("dwelling", mbuw::Method::Gmm, mbuw::InitSpec::Kind::Mle));
    EXPECT_NEAR(*o.fit.sse, 0.001, 0.001);
    EXPECT_NEAR(o.gof.ks_stat, 0.1804, 0.005);
}

TEST(Json, RoundTripIsByteIdentical) {
    for (auto m : {mbuw::Method::Mle, mbuw::Method::Gmm, mbuw::Method::Percentile}) {
        const auto o = mbuw::run_fit(spec_for("voter", m, mbuw::InitSpec::Kind::Mle));
        const std::string text = mbuw::format_fit(o, mbuw::OutputFormat::Json);
        EXPECT_EQ(nlohmann::json::parse(text).dump(2) + "\n", text);
        const auto j = nlohmann::json::parse(text);
        EXPECT_TRUE(j.contains("estimate"));
        EXPECT_TRUE(j["estimate"].contains("lambda"));
        EXPECT_TRUE(j.contains("note"));
        EXPECT_TRUE(j["gof"]["criteria"].contains("nll_substituted"));
    }
}

TEST(Text, ReportsLambdaAndRidgeNote) {
    const auto o = mbuw::run_fit(spec_for("pumps", mbuw::Method::Gmm, mbuw::InitSpec::Kind::Mle));
    const std::string text = mbuw::format_fit(o, mbuw::OutputFormat::Text);
    EXPECT_NE(text.find("lambda"), std::string::npos);
    EXPECT_NE(text.find("ridge"), std::string::npos);
}

TEST(Plot, ColumnsAndRows) {
    const auto s = mbuw::validate(mbuw::load_builtin("support"));
    const mbuw::MbuwParams p(0.257, 1.5073);
    const std::vector<std::pair<mbuw::PlotKind, std::vector<std::string>>> kinds{
        {mbuw::PlotKind::Ecdf, {"x", "ecdf", "cdf"}},
        {mbuw::PlotKind::Pp, {"empirical_probability", "model_cdf"}},
        {mbuw::PlotKind::Qq, {"model_quantile", "sample_quantile"}}};
    for (const auto& [kind, names] : kinds) {
        const auto series = mbuw::emit_plot_series(s, p, kind);
        EXPECT_EQ(series.names, names);
        EXPECT_EQ(series.rows(), s.size());
        const std::string csv = mbuw::to_csv(series);
        std::istringstream in(csv);
        std::string line;
        std::size_t lines = 0;
        std::getline(in, line);
        EXPECT_EQ(std::count(line.begin(), line.end(), ',') + 1, static_cast<long>(names.size()));
        while (std::getline(in, line)) ++lines;
        EXPECT_EQ(lines, s.size());
    }
}

TEST(Plot, PpWithinUnitSquare) {
    const auto s = mbuw::validate(mbuw::load_builtin("capacity"));
    const auto series = mbuw::emit_plot_series(s, mbuw::MbuwParams::from_lambda(2.6), mbuw::PlotKind::Pp);
    for (const auto& col : series.columns) {
        for (double v : col) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Plot, EcdfGapMatchesKs) {
    const auto s = mbuw::validate(mbuw::load_builtin("dwelling"));
    const auto o = mbuw::run_fit(spec_for("dwelling", mbuw::Method::Gmm, mbuw::InitSpec::Kind::Mle));
    const auto series = mbuw::emit_plot_series(s, o.fit.estimate, mbuw::PlotKind::Ecdf);
    double gap = 0.0;
    for (std::size_t i = 0; i < series.rows(); ++i) gap = std::max(gap, std::fabs(series.columns[1][i] - series.columns[2][i]));
    EXPECT_LE(std::fabs(gap - o.gof.ks_stat), 1.0 / static_cast<double>(s.size()) + 1e-12);
}

TEST(Plot, QqNearDiagonalForModelSample) {
    const auto p = mbuw::MbuwParams::from_lambda(1.3);
    const mbuw::UnitSample s(mbuw::sample(1000, p, 3));
    const auto series = mbuw::emit_plot_series(s, p, mbuw::PlotKind::Qq);
    for (std::size_t i = 100; i < 900; ++i) EXPECT_NEAR(series.columns[0][i], series.columns[1][i], 0.05);
}

TEST(Table, MleAicColumn) {
    const auto t = mbuw::run_table(mbuw::Method::Mle);
    const std::vector<double> aic{152.585, 64.079, 48.1377, 16.9233, 43.862, 19.2158};
    ASSERT_EQ(t.rows.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(t.rows[i].gof.criteria.nll_substituted.aic, aic[i], 0.1) << i;
}

TEST(Table, PercentileFlagsReportedDatasets) {
    const auto t = mbuw::run_table(mbuw::Method::Percentile);
    ASSERT_EQ(t.rows.size(), 6u);
    const std::vector<bool> expected{false, true, true, false, false, false};
    EXPECT_EQ(t.reported, expected);
    const std::string text = mbuw::format_table(t, mbuw::OutputFormat::Text);
    EXPECT_NE(text.find("reported"), std::string::npos);
    const auto j = nlohmann::json::parse(mbuw::format_table(t, mbuw::OutputFormat::Json));
    ASSERT_EQ(j.size(), 6u);
    EXPECT_TRUE(j[1]["reported"].get<bool>());
}

// Printed GMM SSE column.
TEST(Table, GmmSseColumn) {
    const auto t = mbuw::run_table(mbuw::Method::Gmm);
    const std::vector<double> sse{0.001, 0.0003, 0.000001, 0.0035, 0.00007, 0.0106};
    ASSERT_EQ(t.rows.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(*t.rows[i].fit.sse, sse[i], std::max(0.002, 0.5 * sse[i])) << t.rows[i].dataset.id;
    }
}

TEST(ExitCodes, MapErrorKinds) {
    EXPECT_EQ(mbuw::exit_code_for(mbuw::IoError("x")), 2);
    EXPECT_EQ(mbuw::exit_code_for(mbuw::ValidationError("x")), 3);
    EXPECT_EQ(mbuw::exit_code_for(mbuw::DomainError("x")), 3);
    EXPECT_EQ(mbuw::exit_code_for(mbuw::ConvergenceError("x")), 4);
}

TEST(Cli, ExitCodes) {
    const fs::path dir = fs::temp_directory_path() / "mbuw_cli_test";
    fs::create_directories(dir);
    const fs::path bad = dir / "bad.csv";
    {
        std::ofstream f(bad);
        f << "y\n0.2\n1.5\n0.4\n0.5\n";
    }
    EXPECT_EQ(run_cli("datasets"), 0);
    EXPECT_EQ(run_cli("fit --data " + (dir / "missing.csv").string()), 2);
    EXPECT_EQ(run_cli("fit --data " + bad.string() + " --column y"), 3);
    EXPECT_EQ(run_cli("fit --data dwelling --method gmm --init 6.636,0.8726 --max-iter 1"), 4);
    EXPECT_EQ(run_cli("fit --data dwelling --method bogus"), 3);
    fs::remove_all(dir);
}

TEST(Cli, WritesJsonAndPlotFiles) {
    const fs::path dir = fs::temp_directory_path() / "mbuw_cli_out";
    fs::create_directories(dir);
    const fs::path json = dir / "fit.json";
    const fs::path plot = dir / "qq.csv";
    ASSERT_EQ(run_cli("fit --data support --method percentile --init mle --format json --out " + json.string()), 0);
    const auto j = nlohmann::json::parse(slurp(json));
    EXPECT_NEAR(j["quantiles"]["y_lo"].get<double>(), 0.865, 1e-12);
    ASSERT_EQ(run_cli("plot --data support --method gmm --kind qq --out " + plot.string()), 0);
    const std::string csv = slurp(plot);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
    fs::remove_all(dir);
}

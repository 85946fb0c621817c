#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include <gtest/gtest.h>

#include "mbuw/data.hpp"
#include "mbuw/errors.hpp"

namespace fs = std::filesystem;

TEST(Builtins, SizesAndListings) {
    const std::vector<std::pair<std::string, std::size_t>> sizes{
        {"dwelling", 35}, {"support", 20}, {"voter", 38}, {"flood", 20}, {"pumps", 23}, {"capacity", 23}};
    ASSERT_EQ(mbuw::builtin_ids().size(), sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        EXPECT_EQ(mbuw::builtin_ids()[i], sizes[i].first);
        EXPECT_EQ(mbuw::load_builtin(sizes[i].first).n(), sizes[i].second);
    }

    const auto d = mbuw::load_builtin("dwelling");
    EXPECT_EQ(d.values.front(), 0.008);
    EXPECT_EQ(d.values.back(), 0.359);

    const auto f = mbuw::load_builtin("flood");
    EXPECT_EQ(f.values[0], 0.26);
    EXPECT_EQ(f.values[1], 0.27);
    EXPECT_EQ(f.values[2], 0.30);

    const auto p = mbuw::load_builtin("pumps");
    EXPECT_NE(std::find(p.values.begin(), p.values.end(), 0.4082), p.values.end());
    EXPECT_NE(std::find(p.values.begin(), p.values.end(), 0.656), p.values.end());
}

TEST(Builtins, DwellingSumMatchesPrintedMean) {
    const auto d = mbuw::load_builtin("dwelling");
    EXPECT_NEAR(std::accumulate(d.values.begin(), d.values.end(), 0.0), 35 * 0.0475, 0.02);
}

TEST(Builtins, AllValidate) {
    for (const auto& id : mbuw::builtin_ids()) EXPECT_NO_THROW(mbuw::validate(mbuw::load_builtin(id))) << id;
}

TEST(Builtins, UnknownId) { EXPECT_THROW(mbuw::load_builtin("nope"), mbuw::ValidationError); }

TEST(Validate, RejectsBoundaries) {
    try {
        mbuw::validate(mbuw::Dataset{"t", "t", {0.2, 1.0, 0.4}, ""});
        FAIL() << "expected a domain error";
    } catch (const mbuw::DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("[1]"), std::string::npos) << e.what();
    }
    EXPECT_THROW(mbuw::validate(mbuw::Dataset{"t", "t", {0.0, 0.5}, ""}), mbuw::DomainError);
    EXPECT_THROW(mbuw::validate(mbuw::Dataset{"t", "t", {}, ""}), mbuw::ValidationError);
}

TEST(Validate, SortedViewIsStable) {
    const mbuw::UnitSample s({0.3, 0.1, 0.3, 0.2});
    const std::vector<double> sorted(s.sorted().begin(), s.sorted().end());
    EXPECT_EQ(sorted, (std::vector<double>{0.1, 0.2, 0.3, 0.3}));
    const mbuw::UnitSample again(sorted);
    EXPECT_TRUE(std::equal(again.sorted().begin(), again.sorted().end(), sorted.begin()));
    EXPECT_TRUE(std::is_permutation(s.values().begin(), s.values().end(), sorted.begin()));
}

TEST(Csv, SingleColumn) {
    const auto d = mbuw::parse_csv("0.1\n0.2\n0.3\n", "0", "mem");
    EXPECT_EQ(d.n(), 3u);
}

TEST(Csv, HeaderByName) {
    std::string text = "id,y\n";
    for (int i = 1; i <= 20; ++i) text += std::to_string(i) + "," + std::to_string(i / 21.0) + "\n";
    const auto d = mbuw::parse_csv(text, "y", "mem");
    EXPECT_EQ(d.n(), 20u);
    EXPECT_NEAR(d.values[0], 1 / 21.0, 1e-6);
    EXPECT_NE(d.source_note.find("y"), std::string::npos);
    EXPECT_THROW(mbuw::parse_csv(text, "z", "mem"), mbuw::ValidationError);
}

TEST(Csv, WhitespaceDelimited) {
    const auto d = mbuw::parse_csv("a b\n1 0.4\n2 0.6\n", "1", "mem");
    EXPECT_EQ(d.values, (std::vector<double>{0.4, 0.6}));
}

TEST(Csv, ParseErrorNamesLine) {
    try {
        mbuw::parse_csv("0.1\n0.2\n0.3\nabc\n", "0", "mem");
        FAIL() << "expected a parse error";
    } catch (const mbuw::ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(Csv, FileRoundTrip) {
    const fs::path path = fs::temp_directory_path() / "mbuw_data_io_test.csv";
    {
        std::ofstream f(path);
        f << "y\n0.25\n0.5\n";
    }
    const auto d = mbuw::load_csv(path.string(), "y");
    EXPECT_EQ(d.values, (std::vector<double>{0.25, 0.5}));
    fs::remove(path);
    EXPECT_THROW(mbuw::load_csv(path.string()), mbuw::IoError);
}

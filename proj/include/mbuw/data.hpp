#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbuw {

// Raw observations plus provenance. Values are not range-checked until
// validate() turns the dataset into a UnitSample.
struct Dataset {
    std::string id;
    std::string name;
    std::vector<double> values;
    std::string source_note;

    std::size_t n() const noexcept { return values.size(); }
};

// Observations on the open unit interval with a cached ascending view.
class UnitSample {
public:
    // Throws ValidationError if empty or if any value lies outside (0, 1).
    explicit UnitSample(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> sorted() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

// Identifiers of the embedded real-data sets, in listing order.
const std::vector<std::string>& builtin_ids();

// Throws ValidationError for an unknown id.
Dataset load_builtin(std::string_view id);

// Comma- or whitespace-separated text with an optional header row. column is
// either a header name or a zero-based index. Throws IoError, ParseError
// (carrying the 1-based line number) or ValidationError for a missing column.
Dataset load_csv(const std::string& path, const std::string& column = "0");

// Same as load_csv but reads from an in-memory string; source names the
// origin for messages.
Dataset parse_csv(std::string_view text, const std::string& column, const std::string& source);

// Throws ValidationError naming every offending index/value.
UnitSample validate(const Dataset& d);

}  // namespace mbuw

#include "mbuw/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

struct Builtin {
    const char* id;
    const char* name;
    const char* note;
    std::vector<double> values;
};

const std::vector<Builtin>& builtins() {
    static const std::vector<Builtin> table = {
        {"dwelling", "Dwelling without basic facilities",
         "OECD Better Life Index; share of dwellings lacking basic facilities",
         {0.008, 0.007, 0.002, 0.094, 0.123, 0.023, 0.005, 0.005, 0.057, 0.004, 0.005, 0.001,
          0.004, 0.035, 0.002, 0.006, 0.064, 0.025, 0.112, 0.118, 0.001, 0.259, 0.001, 0.023,
          0.009, 0.015, 0.002, 0.003, 0.049, 0.005, 0.001, 0.03,  0.067, 0.138, 0.359}},
        {"support", "Quality of support network",
         "OECD Better Life Index; share of people with someone to rely on",
         {0.92, 0.93, 0.88, 0.80, 0.82, 0.96, 0.95, 0.96, 0.94, 0.90,
          0.78, 0.98, 0.89, 0.92, 0.91, 0.77, 0.94, 0.95, 0.96, 0.85}},
        {"voter", "Voter turnout", "OECD Better Life Index; voter turnout share",
         {0.92, 0.76, 0.88, 0.68, 0.47, 0.53, 0.66, 0.62, 0.85, 0.64, 0.69, 0.75, 0.79,
          0.58, 0.70, 0.81, 0.63, 0.67, 0.73, 0.53, 0.77, 0.55, 0.57, 0.90, 0.63, 0.79,
          0.82, 0.78, 0.68, 0.49, 0.66, 0.53, 0.72, 0.87, 0.45, 0.86, 0.68, 0.65}},
        {"flood", "Susquehanna River maximum flood level",
         "Maximum flood level, Susquehanna River at Harrisburg PA (Dumonceaux & Antle 1973)",
         {0.26, 0.27, 0.3,  0.32, 0.32, 0.34, 0.38, 0.38, 0.39, 0.4,
          0.41, 0.42, 0.42, 0.42, 0.45, 0.48, 0.49, 0.61, 0.65, 0.74}},
        {"pumps", "Time between failures of secondary reactor pumps",
         "Secondary reactor pump failure times, unit-interval form (Suprawhardana & Prayoto 1999)",
         {0.216,  0.015,  0.4082, 0.0746, 0.0358, 0.0199, 0.0402, 0.0101, 0.0605, 0.0954, 0.1359, 0.0273,
          0.0491, 0.3465, 0.007,  0.656,  0.106,  0.0062, 0.4992, 0.0614, 0.532,  0.0347, 0.1921}},
        {"capacity", "Unit capacity factors",
         "Unit capacity factors comparing SC16 and P3 algorithms (Maya et al. 2024)",
         {0.853, 0.759, 0.866, 0.809, 0.717, 0.544, 0.492, 0.403, 0.344, 0.213, 0.116, 0.116,
          0.092, 0.07,  0.059, 0.048, 0.036, 0.029, 0.021, 0.014, 0.011, 0.008, 0.006}},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, bool comma) {
    std::vector<std::string_view> out;
    if (comma) {
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) out.push_back(line.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out, std::chars_format::general);
    return ec == std::errc() && ptr == end;
}

bool is_index(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

UnitSample::UnitSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("sample is empty");
    std::ostringstream bad;
    std::size_t n_bad = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double y = values_[i];
        if (!(y > 0.0 && y < 1.0)) {
            if (n_bad++ > 0) bad << ", ";
            bad << "[" << i << "]=" << y;
        }
    }
    if (n_bad > 0) {
        std::ostringstream os;
        os << n_bad << " value(s) outside the open interval (0, 1): " << bad.str();
        throw DomainError(os.str());
    }
    sorted_ = values_;
    std::stable_sort(sorted_.begin(), sorted_.end());
}

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& b : builtins()) v.emplace_back(b.id);
        return v;
    }();
    return ids;
}

Dataset load_builtin(std::string_view id) {
    for (const auto& b : builtins()) {
        if (id == b.id) return Dataset{b.id, b.name, b.values, b.note};
    }
    std::ostringstream os;
    os << "unknown builtin dataset '" << id << "' (known:";
    for (const auto& b : builtins()) os << " " << b.id;
    os << ")";
    throw ValidationError(os.str());
}

Dataset parse_csv(std::string_view text, const std::string& column, const std::string& source) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find('\n', start);
        std::string_view line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        ++line_no;
        if (!trim(line).empty()) lines.emplace_back(line_no, trim(line));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (lines.empty()) throw ParseError(source + ": no data", 0);

    const bool comma = lines.front().second.find(',') != std::string_view::npos;

    std::vector<std::string_view> header;
    std::size_t first_data = 0;
    {
        const auto fields = split(lines.front().second, comma);
        double dummy = 0.0;
        const bool numeric = std::all_of(fields.begin(), fields.end(), [&](std::string_view f) { return parse_double(f, dummy); });
        if (!numeric) {
            header = fields;
            first_data = 1;
        }
    }

    std::size_t col = 0;
    const auto by_name = std::find(header.begin(), header.end(), std::string_view(column));
    if (by_name != header.end()) {
        col = static_cast<std::size_t>(by_name - header.begin());
    } else if (is_index(column)) {
        col = std::stoul(column);
        if (!header.empty() && col >= header.size()) {
            throw ValidationError(source + ": column index " + column + " out of range");
        }
    } else {
        throw ValidationError(source + ": no column named '" + column + "'");
    }

    Dataset d;
    d.id = source;
    d.name = source;
    d.source_note = "csv " + source + ", column " + (header.empty() ? column : std::string(header[col]));
    for (std::size_t i = first_data; i < lines.size(); ++i) {
        const auto& [no, line] = lines[i];
        const auto fields = split(line, comma);
        if (col >= fields.size()) {
            std::ostringstream os;
            os << source << ": line " << no << " has " << fields.size() << " field(s), column " << col << " missing";
            throw ParseError(os.str(), no);
        }
        double v = 0.0;
        if (!parse_double(fields[col], v)) {
            std::ostringstream os;
            os << source << ": line " << no << ": cannot parse '" << fields[col] << "' as a number";
            throw ParseError(os.str(), no);
        }
        d.values.push_back(v);
    }
    if (d.values.empty()) throw ParseError(source + ": header but no data rows", lines.front().first);
    return d;
}

Dataset load_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return parse_csv(buf.str(), column, path);
}

UnitSample validate(const Dataset& d) {
    if (d.values.empty()) throw ValidationError("dataset '" + d.id + "' is empty");
    try {
        return UnitSample(d.values);
    } catch (const DomainError& e) {
        throw DomainError("dataset '" + d.id + "': " + e.what());
    }
}

}  // namespace mbuw

#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tdldos {

/// Sampled columns with `key=value` metadata. Column names carry their unit suffix.
struct TimeSeries {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw Error("time series has no column '" + std::string(name) + "'");
    }

    bool has_column(std::string_view name) const {
        for (const auto& c : columns)
            if (c == name) return true;
        return false;
    }

    std::vector<double> column(std::string_view name) const {
        const std::size_t k = column_index(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[k]);
        return out;
    }

    const std::string* meta(std::string_view key) const {
        for (const auto& [k, v] : metadata)
            if (k == key) return &v;
        return nullptr;
    }

    /// Row width matches the header and the first column strictly increases.
    void validate() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != columns.size())
                throw Error("time series row " + std::to_string(i) + " has wrong column count");
            if (i > 0 && !(rows[i][0] > rows[i - 1][0]))
                throw Error("time series first column not strictly increasing at row " + std::to_string(i));
        }
    }
};

/// Shortest-safe rendering: 17 significant digits, which round-trips every double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw Error("not a number: '" + std::string(s) + "'");
    return v;
}

inline void write_csv(const TimeSeries& ts, std::ostream& os) {
    ts.validate();
    for (const auto& [k, v] : ts.metadata) {
        if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos)
            throw Error("metadata entry '" + k + "' cannot be written as a single key=value line");
        os << "# " << k << '=' << v << '\n';
    }
    for (std::size_t i = 0; i < ts.columns.size(); ++i) os << (i ? "," : "") << ts.columns[i];
    os << '\n';
    for (const auto& r : ts.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
    if (!os) throw Error("failed writing CSV stream");
}

inline void write_csv(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path.string() + "' for writing");
    write_csv(ts, os);
    os.close();
    if (!os) throw Error("I/O failure writing '" + path.string() + "'");
}

inline std::string to_csv(const TimeSeries& ts) {
    std::ostringstream os;
    write_csv(ts, os);
    return os.str();
}

inline TimeSeries read_csv(std::istream& is) {
    TimeSeries ts;
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    auto split = [](std::string_view s) {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t c = s.find(',', start);
            parts.push_back(s.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
            if (c == std::string_view::npos) break;
            start = c + 1;
        }
        return parts;
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header && line.rfind("# ", 0) == 0) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(line_no, 1, "metadata line without '='");
            ts.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!header) {
            for (auto name : split(line)) ts.columns.emplace_back(name);
            header = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        for (auto cell : split(line)) row.push_back(parse_double(cell));
        if (row.size() != ts.columns.size())
            throw ParseError(line_no, 1, "expected " + std::to_string(ts.columns.size()) + " columns");
        ts.rows.push_back(std::move(row));
    }
    if (!header) throw Error("CSV has no header row");
    ts.validate();
    return ts;
}

inline TimeSeries read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open '" + path.string() + "'");
    return read_csv(is);
}

} // namespace tdldos

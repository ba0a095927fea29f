#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

// Strict INI-style documents:
//
//   # comment
//   [section]
//   key = value          ; value is a bare token or a "quoted string"
//
// Section and key names are [a-z0-9_]+. Every key belongs to a section, and both
// sections and keys may appear only once.

namespace tdldos {

struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line = 0;
    std::size_t key_column = 0;
    std::size_t value_column = 0;
};

struct ConfigSection {
    std::string name;
    std::size_t line = 0;
};

class ConfigDocument {
public:
    std::vector<ConfigSection> sections;
    std::vector<ConfigEntry> entries;

    bool has_section(std::string_view name) const {
        return std::any_of(sections.begin(), sections.end(),
                           [&](const ConfigSection& s) { return s.name == name; });
    }

    const ConfigEntry* find(std::string_view section, std::string_view key) const {
        for (const auto& e : entries)
            if (e.section == section && e.key == key) return &e;
        return nullptr;
    }

    /// Inserts or replaces a value, creating the section if needed.
    void set(std::string_view section, std::string_view key, std::string value) {
        for (auto& e : entries) {
            if (e.section == section && e.key == key) {
                e.value = std::move(value);
                return;
            }
        }
        if (!has_section(section)) sections.push_back({std::string(section), 0});
        entries.push_back({std::string(section), std::string(key), std::move(value), 0, 0, 0});
    }
};

namespace detail {

inline bool is_name_char(char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '_';
}

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

} // namespace detail

inline ConfigDocument parse_config(std::string_view text) {
    ConfigDocument doc;
    std::string current;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;

        std::size_t i = 0;
        auto skip_blank = [&] {
            while (i < line.size() && detail::is_blank(line[i])) ++i;
        };
        auto at_end = [&] {
            skip_blank();
            return i >= line.size() || line[i] == '#' || line[i] == ';';
        };
        auto fail = [&](const std::string& msg) -> ParseError { return ParseError(line_no, i + 1, msg); };

        if (at_end()) continue;

        if (line[i] == '[') {
            ++i;
            skip_blank();
            const std::size_t start = i;
            while (i < line.size() && detail::is_name_char(line[i])) ++i;
            if (i == start) throw fail("expected section name");
            std::string name(line.substr(start, i - start));
            skip_blank();
            if (i >= line.size() || line[i] != ']') throw fail("expected ']'");
            ++i;
            if (!at_end()) throw fail("unexpected text after section header");
            if (doc.has_section(name)) throw ParseError(line_no, start + 1, "duplicate section [" + name + "]");
            doc.sections.push_back({name, line_no});
            current = std::move(name);
            continue;
        }

        const std::size_t key_start = i;
        while (i < line.size() && detail::is_name_char(line[i])) ++i;
        if (i == key_start) throw fail("expected key or section header");
        std::string key(line.substr(key_start, i - key_start));
        skip_blank();
        if (i >= line.size() || line[i] != '=') throw fail("expected '=' after key");
        ++i;
        skip_blank();
        const std::size_t value_start = i;
        std::string value;
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                const char c = line[i++];
                if (c == '"') {
                    closed = true;
                    break;
                }
                if (c == '\\') {
                    if (i >= line.size()) break;
                    const char n = line[i++];
                    if (n != '"' && n != '\\') throw ParseError(line_no, i - 1, "unknown escape");
                    value.push_back(n);
                } else {
                    value.push_back(c);
                }
            }
            if (!closed) throw ParseError(line_no, value_start + 1, "unterminated string");
            if (!at_end()) throw fail("unexpected text after string value");
        } else {
            while (i < line.size() && line[i] != '#' && line[i] != ';') ++i;
            std::size_t end = i;
            while (end > value_start && detail::is_blank(line[end - 1])) --end;
            value = std::string(line.substr(value_start, end - value_start));
            if (value.empty()) throw ParseError(line_no, value_start + 1, "missing value");
        }

        if (current.empty())
            throw ParseError(line_no, key_start + 1, "key '" + key + "' outside of any section");
        if (doc.find(current, key))
            throw ParseError(line_no, key_start + 1, "duplicate key '" + current + "." + key + "'");
        doc.entries.push_back({current, std::move(key), std::move(value), line_no, key_start + 1,
                               value_start + 1});
    }
    return doc;
}

/// Quotes a value only when a bare token would not survive parsing.
inline std::string config_quote(std::string_view value) {
    const bool bare = !value.empty() && value.front() != '"' &&
                      std::none_of(value.begin(), value.end(), [](char c) {
                          return c == '#' || c == ';' || c == '\n' || c == '"';
                      }) &&
                      !detail::is_blank(value.front()) && !detail::is_blank(value.back());
    if (bare) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace tdldos

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "lumen/error.hpp"

namespace lumen::csv {

struct NumericRow {
    std::size_t line;            // 1-based line number in the source
    std::vector<double> values;  // one per header column
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

inline double parse_double(std::string_view field, std::size_t line, std::string_view column) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(line, "column '" + std::string(column) + "': cannot parse '" +
                                   std::string(field) + "' as a number");
    }
    return v;
}

}  // namespace detail

/// Reads a header-led CSV whose data cells are all numeric.
///
/// The first line must equal `header` exactly (after stripping a UTF-8 BOM
/// and a trailing CR). Blank lines are skipped. Decimal separator is '.'
/// regardless of locale.
inline std::vector<NumericRow> read_numeric(std::istream& in, const std::vector<std::string>& header) {
    std::string text;
    std::size_t line = 0;
    if (!std::getline(in, text)) throw ParseError(1, "empty input, expected a header line");
    ++line;
    std::string_view head = text;
    if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
    const auto columns = detail::split(detail::trim(head));
    if (columns.size() != header.size()) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) expected += (i ? "," : "") + header[i];
        throw ParseError(line, "expected header '" + expected + "', got " +
                                   std::to_string(columns.size()) + " column(s)");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (columns[i] != header[i]) {
            throw ParseError(line, "missing column '" + header[i] + "' (found '" +
                                       std::string(columns[i]) + "')");
        }
    }

    std::vector<NumericRow> rows;
    while (std::getline(in, text)) {
        ++line;
        const auto body = detail::trim(text);
        if (body.empty()) continue;
        const auto fields = detail::split(body);
        if (fields.size() != header.size()) {
            throw ParseError(line, "expected " + std::to_string(header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
        }
        NumericRow row{line, {}};
        row.values.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            row.values.push_back(detail::parse_double(fields[i], line, header[i]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Nine significant digits, '.' decimal separator, no grouping.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // fold -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace lumen::csv

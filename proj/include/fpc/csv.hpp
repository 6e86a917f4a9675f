#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fpc/core.hpp"

namespace fpc {

/// Malformed input data; carries the 1-based line number.
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& msg)
        : error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_fields(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            fields.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

// Accepts '.' or ',' as decimal separator; the whole field must be consumed
// and the value must be finite.
inline bool parse_field_number(std::string field, double& out) {
    if (field.empty()) return false;
    for (char& ch : field)
        if (ch == ',') ch = '.';
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace detail

/// Parse a comma- (or semicolon-)separated table of points. An optional
/// header row and an optional leading label column are auto-detected; labels
/// default to "p1", "p2", ... when absent. Blank lines are skipped.
inline Dataset parse_csv(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }

    std::size_t first = 0;
    while (first < lines.size() && detail::trim(lines[first]).empty()) ++first;
    if (first == lines.size())
        throw parse_error(1, "empty input");

    // ';'-separated files may use decimal commas; ','-separated files cannot.
    const char sep = lines[first].find(';') != std::string::npos ? ';' : ',';

    // A non-numeric field after the first one marks a header row.
    std::vector<std::string> head = detail::split_fields(lines[first], sep);
    bool has_header = false;
    for (std::size_t i = 1; i < head.size(); ++i) {
        double v;
        if (!detail::parse_field_number(head[i], v)) {
            has_header = true;
            break;
        }
    }

    std::size_t row_start = has_header ? first + 1 : first;
    bool labeled = false;
    std::size_t dim = 0;
    bool shape_known = false;

    std::vector<Point> points;
    std::set<std::string> seen_labels;
    for (std::size_t li = row_start; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        if (detail::trim(lines[li]).empty()) continue;
        std::vector<std::string> fields = detail::split_fields(lines[li], sep);
        if (!shape_known) {
            double v;
            labeled = !detail::parse_field_number(fields[0], v);
            if (fields.size() <= (labeled ? 1u : 0u))
                throw parse_error(line_no, "row has no numeric coordinates");
            dim = fields.size() - (labeled ? 1 : 0);
            shape_known = true;
        }
        if (fields.size() != dim + (labeled ? 1 : 0))
            throw parse_error(line_no, "expected " + std::to_string(dim + (labeled ? 1 : 0)) +
                                           " fields, got " + std::to_string(fields.size()));
        Point p;
        p.label = labeled ? fields[0] : "p" + std::to_string(points.size() + 1);
        if (!seen_labels.insert(p.label).second)
            throw parse_error(line_no, "duplicate label '" + p.label + "'");
        p.coords.reserve(dim);
        for (std::size_t j = (labeled ? 1 : 0); j < fields.size(); ++j) {
            double v;
            if (!detail::parse_field_number(fields[j], v))
                throw parse_error(line_no, "invalid number '" + fields[j] + "'");
            p.coords.push_back(v);
        }
        points.push_back(std::move(p));
    }
    if (points.empty())
        throw parse_error(lines.size(), "no data rows");
    return Dataset(std::move(points));
}

inline Dataset parse_csv_text(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

/// Serialize a dataset with full double precision; parse_csv reads the
/// result back exactly. Unlabeled points get canonical "p<k>" labels.
inline std::string write_csv(const Dataset& ds) {
    std::string out = "label";
    for (std::size_t j = 0; j < ds.dimension(); ++j)
        out += ",x" + std::to_string(j + 1);
    out += '\n';
    char buf[64];
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const Point& p = ds[k];
        out += p.label.empty() ? "p" + std::to_string(k + 1) : p.label;
        for (double v : p.coords) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace fpc

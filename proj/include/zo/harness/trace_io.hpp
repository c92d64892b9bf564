// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Trace CSV format:
//
//   # key=value            metadata lines (version, PRNG, resolved config, run cell)
//   iter,fval,gap,step_norm[,cos_g,cos_m,relerr_v_ori,relerr_v_ours]
//   0,2000,2000,0[,,,,]
//   ...
//   # error=<message>       only when the run aborted; belongs to the last row
//
// Reals are written with 17 significant digits, so parsing is lossless.
// Absent diagnostics fields are empty.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "zo/errors.hpp"
#include "zo/trace.hpp"

namespace zo::harness {

using Header = std::vector<std::pair<std::string, std::string>>;

struct TraceFile {
    Header header;
    bool has_diagnostics = false;
    std::vector<TraceRecord> records;

    /// Value of header key `key`, if present.
    std::optional<std::string> get(std::string_view key) const {
        for (const auto& [k, v] : header)
            if (k == key) return v;
        return std::nullopt;
    }
};

inline constexpr std::string_view kBaseColumns = "iter,fval,gap,step_norm";
inline constexpr std::string_view kDiagnosticColumns = ",cos_g,cos_m,relerr_v_ori,relerr_v_ours";

inline std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string single_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

inline double parse_real(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw IoError("trace line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    return value;
}

inline std::optional<double> parse_optional_real(std::string_view field, std::size_t line_no) {
    if (field.empty()) return std::nullopt;
    return parse_real(field, line_no);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline void append_optional(std::string& row, const std::optional<double>& x) {
    row += ',';
    if (x) row += format_real(*x);
}

} // namespace detail

inline void write_trace(std::ostream& os, const Header& header, const std::vector<TraceRecord>& records,
                        bool diagnostics_columns) {
    for (const auto& [k, v] : header) os << "# " << k << '=' << detail::single_line(v) << '\n';
    os << kBaseColumns;
    if (diagnostics_columns) os << kDiagnosticColumns;
    os << '\n';

    std::string row;
    for (const TraceRecord& r : records) {
        row.clear();
        row += std::to_string(r.iter);
        row += ',';
        row += format_real(r.fval);
        row += ',';
        row += format_real(r.gap);
        row += ',';
        row += format_real(r.step_norm);
        if (diagnostics_columns) {
            const MomentDiagnostics diag = r.diagnostics.value_or(MomentDiagnostics{});
            detail::append_optional(row, diag.cos_g);
            detail::append_optional(row, diag.cos_m);
            detail::append_optional(row, diag.relerr_v_ori);
            detail::append_optional(row, diag.relerr_v_ours);
        }
        row += '\n';
        os << row;
    }
    if (!records.empty() && records.back().error) os << "# error=" << detail::single_line(*records.back().error) << '\n';
}

/// Parses a trace. Rows whose four diagnostics fields are all empty get no diagnostics.
inline TraceFile read_trace(std::istream& is) {
    TraceFile file;
    std::string line;
    std::size_t line_no = 0;
    bool seen_columns = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body(line);
            body.remove_prefix(1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            std::string key(body.substr(0, eq));
            std::string value(body.substr(eq + 1));
            if (seen_columns && key == "error") {
                if (file.records.empty()) throw IoError("trace: error marker without records");
                file.records.back().error = value;
            } else {
                file.header.emplace_back(std::move(key), std::move(value));
            }
            continue;
        }
        if (!seen_columns) {
            if (line == std::string(kBaseColumns)) {
                file.has_diagnostics = false;
            } else if (line == std::string(kBaseColumns) + std::string(kDiagnosticColumns)) {
                file.has_diagnostics = true;
            } else {
                throw IoError("trace line " + std::to_string(line_no) + ": unexpected column header");
            }
            seen_columns = true;
            continue;
        }
        const auto fields = detail::split_commas(line);
        const std::size_t expected = file.has_diagnostics ? 8 : 4;
        if (fields.size() != expected)
            throw IoError("trace line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                          " fields");
        TraceRecord r;
        std::uint64_t iter = 0;
        auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), iter);
        if (res.ec != std::errc{} || res.ptr != fields[0].data() + fields[0].size())
            throw IoError("trace line " + std::to_string(line_no) + ": bad iteration");
        r.iter = iter;
        r.fval = detail::parse_real(fields[1], line_no);
        r.gap = detail::parse_real(fields[2], line_no);
        r.step_norm = detail::parse_real(fields[3], line_no);
        if (file.has_diagnostics) {
            MomentDiagnostics diag{detail::parse_optional_real(fields[4], line_no),
                                   detail::parse_optional_real(fields[5], line_no),
                                   detail::parse_optional_real(fields[6], line_no),
                                   detail::parse_optional_real(fields[7], line_no)};
            if (diag != MomentDiagnostics{}) r.diagnostics = diag;
        }
        file.records.push_back(std::move(r));
    }
    if (!seen_columns) throw IoError("trace: missing column header");
    return file;
}

inline TraceFile read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace '" + path + "'");
    return read_trace(in);
}

inline std::string trace_to_string(const Header& header, const std::vector<TraceRecord>& records,
                                   bool diagnostics_columns) {
    std::ostringstream os;
    write_trace(os, header, records, diagnostics_columns);
    return os.str();
}

} // namespace zo::harness

/// @file ingest.hpp
/// @brief Loading external (x, pi(x)) tables for x beyond the sieve range.
///
/// Format: UTF-8 CSV, header `x,pi`, both fields exact decimal integers of
/// any length. Blank lines and lines starting with `#` are ignored.
#pragma once

#include "primephase/error.hpp"
#include "primephase/phase.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace primephase {

struct PiRow
{
    std::string x;
    std::string pi_x;
};

/// Validated table: x strictly increasing, pi non-decreasing, pi <= x.
struct PiTable
{
    std::vector<PiRow> rows;
    std::string source;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool is_decimal(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::string strip_zeros(std::string_view s)
{
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return std::string(s);
}

/// Compare two canonical (no leading zero) decimal strings numerically.
inline int compare_decimal(std::string_view a, std::string_view b)
{
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    const int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace detail

inline PiTable parse_pi_table(std::istream& in, std::string source = "stream")
{
    PiTable table{{}, std::move(source)};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3); // BOM
        if (view.empty() || view.front() == '#') continue;

        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(line_no, "expected exactly two comma-separated fields");
        const auto first = detail::trim(view.substr(0, comma));
        const auto second = detail::trim(view.substr(comma + 1));

        if (!header_seen) {
            if (first != "x" || second != "pi") throw ParseError(line_no, "expected header 'x,pi'");
            header_seen = true;
            continue;
        }
        if (!detail::is_decimal(first) || !detail::is_decimal(second))
            throw ParseError(line_no, "fields must be non-negative decimal integers");

        PiRow row{detail::strip_zeros(first), detail::strip_zeros(second)};
        if (detail::compare_decimal(row.pi_x, row.x) > 0)
            throw ParseError(line_no, "pi(x) exceeds x at x = " + row.x);
        if (!table.rows.empty()) {
            const auto& prev = table.rows.back();
            if (detail::compare_decimal(row.x, prev.x) <= 0)
                throw ParseError(line_no, "x not strictly increasing at x = " + row.x);
            if (detail::compare_decimal(row.pi_x, prev.pi_x) < 0)
                throw ParseError(line_no, "pi(x) decreases at x = " + row.x);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline PiTable load_pi_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pi table: " + path);
    return parse_pi_table(in, path);
}

/// Largest x for which li and R are evaluated in double precision.
inline constexpr double kMaxExtendedX = 1e300;

/// Phase samples for every table row; pi is taken from the table.
inline std::vector<PhaseSample> extended_samples(const PiTable& table, const EnvelopeParams& env,
                                                 const RModel& model = {})
{
    std::vector<PhaseSample> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const double x = std::strtod(row.x.c_str(), nullptr);
        const double pi = std::strtod(row.pi_x.c_str(), nullptr);
        if (x < 2.0) throw DomainError("extended_samples: x must be >= 2 (row x = " + row.x + ")");
        if (!(x <= kMaxExtendedX)) throw RangeError("extended_samples: x = " + row.x + " exceeds 1e300");
        out.push_back(make_sample(x, pi, env, model));
    }
    return out;
}

} // namespace primephase

/// @file cli.hpp
/// @brief Command implementations behind the `primephase` tool. Each command
///        returns a Table that is written as CSV or JSON.
#pragma once

#include "primephase/error.hpp"
#include "primephase/ingest.hpp"
#include "primephase/phase.hpp"
#include "primephase/pipeline.hpp"
#include "primephase/primes.hpp"
#include "primephase/stats.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace primephase::cli {

enum class OutputFormat { csv, json };
enum class Decimation { none, log_window };

inline constexpr std::size_t kLogWindows = 200;

struct RunConfig
{
    std::uint64_t max_x = 1'000'000;
    EnvelopeKind eta_kind = EnvelopeKind::eta1;
    Category category = Category::all;
    Quantity quantity = Quantity::cos_delta;
    OutputFormat output_format = OutputFormat::csv;
    std::optional<std::string> output_path;
    std::optional<std::string> table_path;
    Decimation decimation = Decimation::none;
    RModel model{};
    std::optional<double> eta_amplitude; // overrides the envelope constant a

    EnvelopeParams envelope() const
    {
        auto e = EnvelopeParams::of(eta_kind);
        if (eta_amplitude) e.a = *eta_amplitude;
        return e;
    }

    PipelineOptions pipeline() const
    {
        PipelineOptions opt;
        opt.envelope = envelope();
        opt.model = model;
        return opt;
    }

    void validate() const
    {
        if (max_x < 2) throw DomainError("--max must be >= 2");
        if (eta_amplitude && !(*eta_amplitude >= 0.0)) throw DomainError("--eta-amplitude must be >= 0");
    }
};

// ---------------------------------------------------------------------------
// Tabular output

struct Cell
{
    std::string text;
    bool numeric = true;
};

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> comments;
};

inline Cell fixed6(double v) { return {fmt::format("{:.6f}", v)}; }
inline Cell sig12(double v) { return {fmt::format("{:.12g}", v)}; }
inline Cell integer(std::uint64_t v) { return {fmt::format("{}", v)}; }
inline Cell text(std::string s) { return {std::move(s), false}; }
inline Cell empty() { return {"", false}; }

/// Integers below 2^53 print exactly; larger values print the shortest
/// form that reads back to the same double.
inline Cell whole(double v)
{
    if (v >= 0 && v < 9007199254740992.0) return integer(static_cast<std::uint64_t>(v));
    return {fmt::format("{}", v)};
}

inline void write_csv(const Table& t, std::ostream& out)
{
    for (const auto& c : t.comments) out << "# " << c << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].text;
        out << '\n';
    }
}

inline void write_json(const Table& t, std::ostream& out)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& cell = row[i];
            if (cell.text.empty())
                obj[t.columns[i]] = nullptr;
            else if (cell.numeric)
                obj[t.columns[i]] = nlohmann::ordered_json::parse(cell.text);
            else
                obj[t.columns[i]] = cell.text;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

inline void write_table(const Table& t, OutputFormat f, std::ostream& out)
{
    if (f == OutputFormat::json)
        write_json(t, out);
    else
        write_csv(t, out);
}

// ---------------------------------------------------------------------------
// Argument helpers

/// Accepts "1000000" or "1e6"; the value must be a non-negative integer.
inline std::uint64_t parse_count(const std::string& s)
{
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw DomainError("integer out of range: " + s);
        }
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: " + s);
    }
    if (used != s.size() || !(v >= 0.0) || v != std::floor(v) || v >= 1.8e19)
        throw DomainError("not a non-negative integer: " + s);
    return static_cast<std::uint64_t>(v);
}

/// A range endpoint: any finite non-negative number ("2", "1e6", "1e250").
inline double parse_bound(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: " + s);
    }
    if (used != s.size() || !(v >= 0.0) || !std::isfinite(v)) throw DomainError("not a finite non-negative number: " + s);
    return v;
}

namespace detail {

/// Keeps the rows holding the minimum and maximum of a key within each of
/// kLogWindows logarithmically spaced windows over [lo, hi].
template <typename Row>
class LogWindowDecimator
{
public:
    LogWindowDecimator(double lo, double hi) : lo_(lo), span_(std::log(hi / lo)) {}

    void push(double x, double key, Row row)
    {
        std::size_t w = 0;
        if (span_ > 0) {
            const double f = std::log(x / lo_) / span_ * static_cast<double>(kLogWindows);
            w = std::min(kLogWindows - 1, static_cast<std::size_t>(std::max(0.0, f)));
        }
        if (!current_ || w != window_) {
            flush();
            window_ = w;
            current_ = true;
            min_ = max_ = Entry{x, key, row};
            return;
        }
        if (key < min_.key) min_ = Entry{x, key, row};
        if (key > max_.key) max_ = Entry{x, key, std::move(row)};
    }

    std::vector<Row> finish()
    {
        flush();
        return std::move(out_);
    }

private:
    struct Entry
    {
        double x;
        double key;
        Row row;
    };

    void flush()
    {
        if (!current_) return;
        if (min_.x == max_.x) {
            out_.push_back(min_.row);
        } else if (min_.x < max_.x) {
            out_.push_back(min_.row);
            out_.push_back(max_.row);
        } else {
            out_.push_back(max_.row);
            out_.push_back(min_.row);
        }
        current_ = false;
    }

    double lo_;
    double span_;
    bool current_ = false;
    std::size_t window_ = 0;
    Entry min_{};
    Entry max_{};
    std::vector<Row> out_;
};

inline void check_range(double lo, double hi)
{
    if (!(lo >= 2.0) || !(hi >= lo) || !std::isfinite(hi)) throw DomainError("range must satisfy 2 <= x_lo <= x_hi");
}

// Integer endpoints of [lo, hi] for the sieve path.
inline std::pair<std::uint64_t, std::uint64_t> sieve_bounds(double lo, double hi)
{
    if (hi > static_cast<double>(kSieveCeiling))
        throw RangeError(fmt::format("x_hi = {} exceeds the sieve ceiling {}; supply --pi-table", hi, kSieveCeiling));
    return {static_cast<std::uint64_t>(std::ceil(lo)), static_cast<std::uint64_t>(std::floor(hi))};
}

inline std::string envelope_label(const RunConfig& cfg)
{
    const auto e = cfg.envelope();
    if (e.kind == EnvelopeKind::eta1) return fmt::format("eta1: {} / ln ln(x + {})", e.a, e.b);
    return fmt::format("eta2: {} / [ln(x + {})]^{}", e.a, e.b, e.p);
}

inline std::string model_label(const RunConfig& cfg)
{
    if (cfg.model.form == RForm::exact) return "R: exact (Gram series)";
    return fmt::format("R: tabulated ({}-term Moebius sum)", cfg.model.terms);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Commands

/// Mean, sigma, mean |.| and count of one quantity over [2, 10^k] for each
/// decade up to max_x.
inline Table cmd_tables(const RunConfig& cfg)
{
    cfg.validate();
    const auto analysis = analyze_ranges(decade_checkpoints(cfg.max_x), cfg.pipeline());
    Table t;
    t.comments = {fmt::format("quantity: {}  category: {}", to_string(cfg.quantity), to_string(cfg.category)),
                  detail::envelope_label(cfg), detail::model_label(cfg)};
    t.columns = {"range_lo", "range_max", "mean", "sigma", "mean_abs", "count"};
    for (std::size_t i = 0; i < analysis.checkpoints.size(); ++i) {
        const auto& acc = analysis.cumulative[i].at(cfg.category, cfg.quantity);
        const auto row = make_row(analysis.checkpoints[i], acc);
        t.rows.push_back({integer(2), integer(row.range_max), fixed6(row.mean), fixed6(row.sigma),
                          fixed6(row.mean_abs), integer(row.count)});
    }
    return t;
}

/// cos(delta) distribution over [2, max_x] with the reference Gaussian at
/// the bin centres.
inline Table cmd_hist(const RunConfig& cfg)
{
    cfg.validate();
    const auto analysis = analyze_ranges({cfg.max_x}, cfg.pipeline());
    const auto& band = analysis.cumulative.back();
    const auto& h = band.cos_delta_hist;
    const auto& mom = band.at(Category::all, Quantity::cos_delta);

    Table t;
    t.comments = {fmt::format("samples: {}  sample_mean: {:.6f}  sample_sigma: {:.6f}", h.total(), mom.mean,
                              mom.sigma()),
                  fmt::format("gaussian: mean {} sigma {} height {:.6f}", kReferenceGaussian.mean,
                              kReferenceGaussian.sigma, kReferenceGaussian.height()),
                  detail::envelope_label(cfg), detail::model_label(cfg)};
    t.columns = {"bin_lo", "bin_hi", "center", "count", "density", "gaussian"};
    for (const auto& b : density(h)) {
        t.rows.push_back({fixed6(b.lo), fixed6(b.hi), fixed6(b.center), integer(b.count), fixed6(b.density),
                          fixed6(kReferenceGaussian.pdf(b.center))});
    }
    t.rows.push_back({text("-inf"), fixed6(-1.0), empty(), integer(h.underflow()), empty(), empty()});
    t.rows.push_back({fixed6(1.0), text("inf"), empty(), integer(h.overflow()), empty(), empty()});
    return t;
}

namespace detail {

inline std::vector<PhaseSample> table_samples_in(const RunConfig& cfg, double lo, double hi)
{
    const auto table = load_pi_table(*cfg.table_path);
    PiTable selected{{}, table.source};
    for (const auto& row : table.rows) {
        const double x = std::strtod(row.x.c_str(), nullptr);
        if (x >= lo && x <= hi) selected.rows.push_back(row);
    }
    return extended_samples(selected, cfg.envelope(), cfg.model);
}

} // namespace detail

/// Per-integer phase data over [x_lo, x_hi]: from the sieve, or from the
/// ingested pi table when one is configured.
inline Table cmd_scan(const RunConfig& cfg, double lo, double hi)
{
    detail::check_range(lo, hi);
    if (cfg.eta_amplitude) cfg.validate();

    const auto e1 = EnvelopeParams::eta1();
    const auto e2 = EnvelopeParams::eta2();
    using Row = std::vector<Cell>;
    const auto make = [&](const PhaseSample& s) -> Row {
        return {whole(s.x),
                whole(s.pi_x),
                sig12(s.li_x),
                sig12(s.r_x),
                sig12(eta(e1, s.x)),
                sig12(eta(e2, s.x)),
                sig12(s.sqrt_pi_minus_sqrt_r()),
                sig12(s.sqrt_li_minus_sqrt_pi()),
                sig12(s.sqrt_li_minus_sqrt_r()),
                sig12(s.li_minus_pi()),
                sig12(s.cos_delta),
                sig12(s.cos_delta_bar)};
    };

    Table t;
    t.comments = {detail::envelope_label(cfg) + " (cos_delta, cos_delta_bar)", detail::model_label(cfg)};
    t.columns = {"x",
                 "pi",
                 "li",
                 "r",
                 "eta1",
                 "eta2",
                 "sqrt_pi_minus_sqrt_r",
                 "sqrt_li_minus_sqrt_pi",
                 "sqrt_li_minus_sqrt_r",
                 "li_minus_pi",
                 "cos_delta",
                 "cos_delta_bar"};

    detail::LogWindowDecimator<Row> decimator(lo, hi);
    const auto emit = [&](const PhaseSample& s) {
        if (cfg.decimation == Decimation::log_window)
            decimator.push(s.x, s.sqrt_pi_minus_sqrt_r(), make(s));
        else
            t.rows.push_back(make(s));
    };

    if (cfg.table_path) {
        for (const auto& s : detail::table_samples_in(cfg, lo, hi)) emit(s);
    } else {
        const auto ends = detail::sieve_bounds(lo, hi);
        const std::uint64_t x_lo = ends.first, x_hi = ends.second;
        if (x_lo <= x_hi) for_each_sample(x_lo, x_hi, cfg.pipeline(), emit);
    }
    if (cfg.decimation == Decimation::log_window) t.rows = decimator.finish();
    return t;
}

/// li - pi with its exact bounds and, from 1e8 on, the large-x bounds.
inline Table cmd_bounds(const RunConfig& cfg, double lo, double hi)
{
    detail::check_range(lo, hi);
    if (cfg.eta_amplitude) cfg.validate();
    const auto env = cfg.envelope();

    using Row = std::vector<Cell>;
    const auto make = [&](double x, double pi) -> Row {
        const double li_x = li(x);
        const double r_x = cfg.model.value(x);
        const auto exact = exact_bounds(li_x, r_x, eta(env, x));
        Row row{whole(x), sig12(li_x - pi), sig12(exact.lo), sig12(exact.hi)};
        if (x >= kAsymptoticThreshold) {
            const auto asym = li_pi_bounds_asymptotic(x, env);
            row.push_back(sig12(asym.lo));
            row.push_back(sig12(asym.hi));
        } else {
            row.push_back(empty());
            row.push_back(empty());
        }
        row.push_back(sig12(li_x - r_x));
        return row;
    };

    Table t;
    t.comments = {detail::envelope_label(cfg), detail::model_label(cfg)};
    t.columns = {"x", "li_minus_pi", "exact_lo", "exact_hi", "asym_lo", "asym_hi", "li_minus_r"};

    detail::LogWindowDecimator<Row> decimator(lo, hi);
    const auto emit = [&](double x, double pi) {
        if (cfg.decimation == Decimation::log_window)
            decimator.push(x, li(x) - pi, make(x, pi));
        else
            t.rows.push_back(make(x, pi));
    };

    if (cfg.table_path) {
        const auto table = load_pi_table(*cfg.table_path);
        for (const auto& row : table.rows) {
            const double x = std::strtod(row.x.c_str(), nullptr);
            if (x < lo || x > hi) continue;
            if (!(x <= kMaxExtendedX)) throw RangeError("x = " + row.x + " exceeds 1e300");
            emit(x, std::strtod(row.pi_x.c_str(), nullptr));
        }
    } else {
        const auto ends = detail::sieve_bounds(lo, hi);
        const std::uint64_t x_lo = ends.first, x_hi = ends.second;
        if (x_lo <= x_hi)
            pi_stream(x_hi, [&](std::uint64_t x, std::uint64_t pi, bool) {
                if (x >= x_lo) emit(static_cast<double>(x), static_cast<double>(pi));
            });
    }
    if (cfg.decimation == Decimation::log_window) t.rows = decimator.finish();
    return t;
}

struct CrossingReport
{
    double log_x;
    double log10_x;
    std::string x_text;
    std::string note;
};

inline CrossingReport crossing_report(EnvelopeKind kind)
{
    const double log_x = first_crossing_estimate(EnvelopeParams::of(kind));
    const double log10_x = log_x / std::numbers::ln10;
    const double exponent = std::floor(log10_x);
    const double mantissa = std::pow(10.0, log10_x - exponent);
    CrossingReport r{log_x, log10_x, fmt::format("{:.4f}e{:.0f}", mantissa, exponent), ""};
    if (kind == EnvelopeKind::eta1) {
        r.note = fmt::format("ln x = {:.3f} puts the crossing near 10^{:.2f}; a figure of 10^65 corresponds to "
                             "reading e^65 as 10^65",
                             log_x, log10_x);
    }
    return r;
}

inline Table cmd_crossing(EnvelopeKind kind)
{
    const auto r = crossing_report(kind);
    Table t;
    t.columns = {"envelope", "log_x", "log10_x", "x", "note"};
    if (!r.note.empty()) t.comments.push_back("note: " + r.note);
    t.rows.push_back({text(std::string(to_string(kind))), {fmt::format("{:.6f}", r.log_x)},
                      {fmt::format("{:.6f}", r.log10_x)}, text(r.x_text),
                      r.note.empty() ? empty() : text(r.note)});
    return t;
}

} // namespace primephase::cli

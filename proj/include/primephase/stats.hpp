/// @file stats.hpp
/// @brief Mergeable one-pass moments, the fixed 21-bin cos(delta) histogram,
///        density normalisation and the Gaussian overlay.
#pragma once

#include "primephase/error.hpp"
#include "primephase/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace primephase {

/// Count, mean, sum of squared deviations and mean |value|. sigma() uses the
/// population divisor: sqrt(<f^2> - <f>^2).
struct MomentAccumulator
{
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double mean_abs = 0.0;

    void push(double v) noexcept
    {
        ++count;
        const double n = static_cast<double>(count);
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
        mean_abs += (std::abs(v) - mean_abs) / n;
    }

    double variance() const noexcept { return count ? m2 / static_cast<double>(count) : 0.0; }
    double sigma() const noexcept { return std::sqrt(variance()); }
};

inline MomentAccumulator accumulate(MomentAccumulator acc, double value) noexcept
{
    acc.push(value);
    return acc;
}

inline MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b) noexcept
{
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double n = na + nb;
    const double delta = b.mean - a.mean;
    MomentAccumulator out;
    out.count = a.count + b.count;
    out.mean = a.mean + delta * (nb / n);
    out.m2 = a.m2 + b.m2 + delta * delta * (na * nb / n);
    out.mean_abs = (na * a.mean_abs + nb * b.mean_abs) / n;
    return out;
}

// ---------------------------------------------------------------------------
// Histogram

/// Bins (-1,-0.95), (-0.95,-0.85), ..., (0.85,0.95), (0.95,1). Membership is
/// [lo, hi) except the last bin, which is closed at 1.
class Histogram
{
public:
    static constexpr std::size_t kBins = 21;

    /// Edge i for i = 0..21.
    static constexpr double edge(std::size_t i) noexcept
    {
        if (i == 0) return -1.0;
        if (i == kBins) return 1.0;
        return (-95.0 + 10.0 * static_cast<double>(i - 1)) / 100.0;
    }

    static constexpr double width(std::size_t bin) noexcept { return edge(bin + 1) - edge(bin); }
    static constexpr double center(std::size_t bin) noexcept { return 0.5 * (edge(bin) + edge(bin + 1)); }

    /// Bin index of v, or nullopt when v lies outside [-1, 1] (or is NaN).
    static std::optional<std::size_t> bin_of(double v) noexcept
    {
        if (!(v >= -1.0 && v <= 1.0)) return std::nullopt;
        if (v == 1.0) return kBins - 1;
        std::size_t b = 0;
        while (b + 1 < kBins && v >= edge(b + 1)) ++b;
        return b;
    }

    void add(double v) noexcept
    {
        if (const auto b = bin_of(v)) {
            ++counts_[*b];
        } else if (v > 1.0) {
            ++overflow_;
        } else {
            ++underflow_; // below -1, or NaN
        }
    }

    void merge(const Histogram& o) noexcept
    {
        for (std::size_t i = 0; i < kBins; ++i) counts_[i] += o.counts_[i];
        underflow_ += o.underflow_;
        overflow_ += o.overflow_;
    }

    std::uint64_t count(std::size_t bin) const { return counts_.at(bin); }
    const std::array<std::uint64_t, kBins>& counts() const noexcept { return counts_; }
    std::uint64_t underflow() const noexcept { return underflow_; }
    std::uint64_t overflow() const noexcept { return overflow_; }

    std::uint64_t total() const noexcept
    {
        std::uint64_t t = underflow_ + overflow_;
        for (auto c : counts_) t += c;
        return t;
    }

private:
    std::array<std::uint64_t, kBins> counts_{};
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
};

template <typename Range>
Histogram histogram(const Range& values)
{
    Histogram h;
    for (double v : values) h.add(v);
    return h;
}

struct DensityBin
{
    double lo;
    double hi;
    double center;
    std::uint64_t count;
    double density;
};

/// Relative frequency divided by bin width; the bars integrate to
/// 1 - (underflow + overflow) / total.
inline std::vector<DensityBin> density(const Histogram& h)
{
    const auto total = h.total();
    if (total == 0) throw DomainError("density: empty histogram");
    std::vector<DensityBin> out;
    out.reserve(Histogram::kBins);
    for (std::size_t b = 0; b < Histogram::kBins; ++b) {
        const double rel = static_cast<double>(h.count(b)) / static_cast<double>(total);
        out.push_back({Histogram::edge(b), Histogram::edge(b + 1), Histogram::center(b), h.count(b),
                       rel / Histogram::width(b)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian overlay

struct GaussianOverlay
{
    double mean;
    double sigma;

    double height() const noexcept { return 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma); }

    double pdf(double x) const noexcept
    {
        const double z = (x - mean) / sigma;
        return height() * std::exp(-0.5 * z * z);
    }
};

/// The fixed overlay drawn on every cos(delta) distribution (not fitted).
inline constexpr GaussianOverlay kReferenceGaussian{0.014, 0.28};

inline std::vector<std::pair<double, double>> gaussian_overlay(double mean, double sigma,
                                                               const std::vector<double>& grid)
{
    if (!(sigma > 0.0)) throw DomainError("gaussian_overlay: sigma must be > 0");
    const GaussianOverlay g{mean, sigma};
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) out.emplace_back(x, g.pdf(x));
    return out;
}

// ---------------------------------------------------------------------------
// Quantities averaged in the tables

enum class Quantity { sqrt_diff, pi_minus_r, cos_delta, cos_delta_bar };

inline constexpr Quantity kAllQuantities[] = {Quantity::sqrt_diff, Quantity::pi_minus_r, Quantity::cos_delta,
                                              Quantity::cos_delta_bar};

inline double value_of(const PhaseSample& s, Quantity q) noexcept
{
    switch (q) {
    case Quantity::sqrt_diff: return s.sqrt_pi_minus_sqrt_r();
    case Quantity::pi_minus_r: return s.pi_minus_r();
    case Quantity::cos_delta: return s.cos_delta;
    case Quantity::cos_delta_bar: return s.cos_delta_bar;
    }
    return 0.0;
}

inline std::string_view to_string(Quantity q)
{
    switch (q) {
    case Quantity::sqrt_diff: return "sqrt_diff";
    case Quantity::pi_minus_r: return "pi_minus_r";
    case Quantity::cos_delta: return "cos_delta";
    case Quantity::cos_delta_bar: return "cos_delta_bar";
    }
    return "?";
}

inline std::optional<Quantity> parse_quantity(std::string_view s)
{
    for (Quantity q : kAllQuantities)
        if (to_string(q) == s) return q;
    return std::nullopt;
}

} // namespace primephase

/// @file primes.hpp
/// @brief Segmented sieve of Eratosthenes, streaming prime counting and
///        integer category classification.
#pragma once

#include "primephase/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primephase {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;

/// Largest x the streaming pipeline will sieve up to. Beyond this an
/// ingested table of pi(x) is required.
inline constexpr std::uint64_t kSieveCeiling = 10'000'000'000ULL;

/// floor(sqrt(n)), exact for every 64-bit n.
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept
{
    if (n < 2) return n;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

/// Primes up to and including @p limit (simple sieve, used for base primes).
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit)
{
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

/// Primality flags for the closed interval [lo, hi].
class SieveSegment
{
public:
    SieveSegment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint8_t> flags)
        : lo_(lo), hi_(hi), flags_(std::move(flags))
    {}

    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return flags_.size(); }

    bool is_prime(std::uint64_t x) const
    {
        if (x < lo_ || x > hi_) throw RangeError("x outside sieve segment");
        return flags_[x - lo_] != 0;
    }

    /// Flag at offset i, i.e. for the integer lo()+i.
    bool operator[](std::size_t i) const noexcept { return flags_[i] != 0; }

    std::span<const std::uint8_t> flags() const noexcept { return flags_; }

    std::uint64_t prime_count() const noexcept
    {
        return static_cast<std::uint64_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
    }

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint8_t> flags_;
};

/// Base primes for sieving any segment with hi <= n_max.
class SegmentedSieve
{
public:
    explicit SegmentedSieve(std::uint64_t n_max, std::uint64_t segment_size = kDefaultSegmentSize)
        : n_max_(n_max), segment_size_(segment_size), base_(small_primes(isqrt(n_max)))
    {
        if (segment_size == 0) throw ConfigError("segment size must be positive");
    }

    std::uint64_t n_max() const noexcept { return n_max_; }
    std::uint64_t segment_size() const noexcept { return segment_size_; }

    SieveSegment segment(std::uint64_t lo, std::uint64_t hi) const
    {
        if (lo < 2) throw DomainError("sieve_range: lo must be >= 2");
        if (hi < lo) throw DomainError("sieve_range: hi must be >= lo");
        if (hi > n_max_) throw RangeError("sieve_range: hi beyond base-prime bound");
        if (hi - lo + 1 > segment_size_) throw RangeError("sieve_range: range exceeds segment limit");

        std::vector<std::uint8_t> flags(hi - lo + 1, 1);
        for (std::uint64_t p : base_) {
            const std::uint64_t sq = p * p;
            if (sq > hi) break;
            std::uint64_t start = std::max(sq, (lo + p - 1) / p * p);
            for (std::uint64_t m = start; m <= hi; m += p) flags[m - lo] = 0;
        }
        return SieveSegment(lo, hi, std::move(flags));
    }

private:
    std::uint64_t n_max_;
    std::uint64_t segment_size_;
    std::vector<std::uint32_t> base_;
};

/// Sieve the closed interval [lo, hi].
inline SieveSegment sieve_range(std::uint64_t lo, std::uint64_t hi,
                                std::uint64_t segment_limit = kDefaultSegmentSize)
{
    if (lo < 2) throw DomainError("sieve_range: lo must be >= 2");
    if (hi < lo) throw DomainError("sieve_range: hi must be >= lo");
    if (hi - lo + 1 > segment_limit) throw RangeError("sieve_range: range exceeds segment limit");
    return SegmentedSieve(hi, segment_limit).segment(lo, hi);
}

struct PiPoint
{
    std::uint64_t x;
    std::uint64_t pi_x;

    friend bool operator==(const PiPoint&, const PiPoint&) = default;
};

/// Calls visit(x, pi_x, is_prime) for x = 2..n_max in increasing order.
template <typename Visit>
void pi_stream(std::uint64_t n_max, Visit&& visit, std::uint64_t segment_size = kDefaultSegmentSize)
{
    if (n_max < 2) throw DomainError("pi_stream: n_max must be >= 2");
    const SegmentedSieve sieve(n_max, segment_size);
    std::uint64_t pi = 0;
    for (std::uint64_t lo = 2; lo <= n_max;) {
        const std::uint64_t hi = std::min(n_max, lo + segment_size - 1);
        const auto seg = sieve.segment(lo, hi);
        for (std::size_t i = 0; i < seg.size(); ++i) {
            const bool prime = seg[i];
            pi += prime;
            visit(lo + i, pi, prime);
        }
        if (hi == n_max) break;
        lo = hi + 1;
    }
}

/// Materialised pi stream; intended for small n_max.
inline std::vector<PiPoint> pi_stream(std::uint64_t n_max)
{
    std::vector<PiPoint> out;
    out.reserve(n_max - 1);
    pi_stream(n_max, [&](std::uint64_t x, std::uint64_t pi, bool) { out.push_back({x, pi}); });
    return out;
}

/// Number of primes in [2, x].
inline std::uint64_t pi_at(std::uint64_t x, std::uint64_t segment_size = kDefaultSegmentSize)
{
    if (x < 2) throw DomainError("pi_at: x must be >= 2");
    const SegmentedSieve sieve(x, segment_size);
    std::uint64_t count = 0;
    for (std::uint64_t lo = 2; lo <= x;) {
        const std::uint64_t hi = std::min(x, lo + segment_size - 1);
        count += sieve.segment(lo, hi).prime_count();
        if (hi == x) break;
        lo = hi + 1;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Categories

/// Sample subsets. 1 never belongs to any of them; even_composite excludes 2.
enum class Category { all, prime, even_composite, odd_composite, odd };

inline constexpr Category kAllCategories[] = {Category::all, Category::prime, Category::even_composite,
                                              Category::odd_composite, Category::odd};

/// The partition class of x: prime, even_composite or odd_composite.
inline Category classify(std::uint64_t x, bool is_prime)
{
    if (x < 2) throw DomainError("classify: x must be >= 2");
    if (is_prime) return Category::prime;
    return (x % 2 == 0) ? Category::even_composite : Category::odd_composite;
}

/// Whether x (with the given primality) is a member of category c.
inline bool in_category(Category c, std::uint64_t x, bool is_prime)
{
    switch (c) {
    case Category::all: return x >= 2;
    case Category::odd: return x >= 3 && x % 2 == 1;
    default: return x >= 2 && classify(x, is_prime) == c;
    }
}

inline std::string_view to_string(Category c)
{
    switch (c) {
    case Category::all: return "all";
    case Category::prime: return "prime";
    case Category::even_composite: return "even_composite";
    case Category::odd_composite: return "odd_composite";
    case Category::odd: return "odd";
    }
    return "?";
}

inline std::optional<Category> parse_category(std::string_view s)
{
    for (Category c : kAllCategories)
        if (to_string(c) == s) return c;
    return std::nullopt;
}

} // namespace primephase

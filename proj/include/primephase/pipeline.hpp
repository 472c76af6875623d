/// @file pipeline.hpp
/// @brief Streams PhaseSamples for x = 2..n over the segmented sieve and
///        reduces them in parallel into per-range, per-category statistics.
///
/// Work is split into fixed sieve segments, so the reduction order (and
/// therefore every printed digit) does not depend on the thread count.
#pragma once

#include "primephase/error.hpp"
#include "primephase/phase.hpp"
#include "primephase/primes.hpp"
#include "primephase/stats.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace primephase {

/// Hardware concurrency, capped by PRIMEPHASE_THREADS when set.
inline unsigned default_threads()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PRIMEPHASE_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            // unparsable cap: ignore
        }
    }
    return n;
}

struct PipelineOptions
{
    EnvelopeParams envelope = EnvelopeParams::eta1();
    RModel model{};
    unsigned threads = default_threads();
    std::uint64_t segment_size = kDefaultSegmentSize;
};

namespace detail {

/// Run task(i) for i in [0, n) on up to `threads` workers; rethrows the first
/// exception.
template <typename Task>
void run_indexed(std::size_t n, unsigned threads, const Task& task)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline void check_sieve_limit(std::uint64_t n_max)
{
    if (n_max > kSieveCeiling)
        throw RangeError("x = " + std::to_string(n_max) + " exceeds the sieve ceiling " +
                         std::to_string(kSieveCeiling) + "; supply a pi table");
}

} // namespace detail

/// Fold every sample x = 2..n_max into a Partial. Each sieve segment is
/// folded into its own copy of `identity` (in parallel), then the segment
/// partials are combined left to right with merge(acc, part).
template <typename Partial, typename Fold, typename Merge>
Partial reduce_samples(std::uint64_t n_max, const PipelineOptions& opt, const Partial& identity, const Fold& fold,
                       const Merge& merge)
{
    if (n_max < 2) throw DomainError("reduce_samples: n_max must be >= 2");
    detail::check_sieve_limit(n_max);
    const SegmentedSieve sieve(n_max, opt.segment_size);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
    for (std::uint64_t lo = 2; lo <= n_max;) {
        const std::uint64_t hi = std::min(n_max, lo + opt.segment_size - 1);
        chunks.emplace_back(lo, hi);
        if (hi == n_max) break;
        lo = hi + 1;
    }

    Partial result = identity;
    std::uint64_t pi_before = 0;
    const std::size_t batch = std::max(1u, opt.threads);
    for (std::size_t first = 0; first < chunks.size(); first += batch) {
        const std::size_t count = std::min(batch, chunks.size() - first);
        std::vector<std::optional<SieveSegment>> segs(count);
        detail::run_indexed(count, opt.threads, [&](std::size_t j) {
            segs[j].emplace(sieve.segment(chunks[first + j].first, chunks[first + j].second));
        });

        std::vector<std::uint64_t> start_pi(count);
        for (std::size_t j = 0; j < count; ++j) {
            start_pi[j] = pi_before;
            pi_before += segs[j]->prime_count();
        }

        std::vector<Partial> parts(count, identity);
        detail::run_indexed(count, opt.threads, [&](std::size_t j) {
            const SieveSegment& seg = *segs[j];
            std::uint64_t pi = start_pi[j];
            for (std::size_t i = 0; i < seg.size(); ++i) {
                const std::uint64_t x = seg.lo() + i;
                const bool prime = seg[i];
                pi += prime;
                fold(parts[j], make_sample(static_cast<double>(x), static_cast<double>(pi), opt.envelope, opt.model,
                                           classify(x, prime)));
            }
        });
        for (auto& p : parts) result = merge(std::move(result), p);
    }
    return result;
}

/// Serial, ordered visit of the samples for x in [lo, hi].
template <typename Visit>
void for_each_sample(std::uint64_t lo, std::uint64_t hi, const PipelineOptions& opt, Visit&& visit)
{
    if (lo < 2 || hi < lo) throw DomainError("for_each_sample: requires 2 <= lo <= hi");
    detail::check_sieve_limit(hi);
    const SegmentedSieve sieve(hi, opt.segment_size);
    std::uint64_t pi = 0;
    for (std::uint64_t seg_lo = 2; seg_lo <= hi;) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + opt.segment_size - 1);
        const auto seg = sieve.segment(seg_lo, seg_hi);
        if (seg_hi < lo) {
            pi += seg.prime_count();
        } else {
            for (std::size_t i = 0; i < seg.size(); ++i) {
                const std::uint64_t x = seg_lo + i;
                const bool prime = seg[i];
                pi += prime;
                if (x >= lo)
                    visit(make_sample(static_cast<double>(x), static_cast<double>(pi), opt.envelope, opt.model,
                                      classify(x, prime)));
            }
        }
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
}

// ---------------------------------------------------------------------------
// Range statistics

inline constexpr std::size_t kCategoryCount = 5;
inline constexpr std::size_t kQuantityCount = 4;

/// Statistics of all samples in one x-band (or, after accumulation, in [2, x]).
struct BandStats
{
    std::array<std::array<MomentAccumulator, kQuantityCount>, kCategoryCount> moments{};
    Histogram cos_delta_hist;
    std::uint64_t violations = 0;           // |cos delta| > 1
    std::vector<double> first_violations;   // up to kMaxRecordedViolations, in x order

    static constexpr std::size_t kMaxRecordedViolations = 64;

    const MomentAccumulator& at(Category c, Quantity q) const
    {
        return moments[static_cast<std::size_t>(c)][static_cast<std::size_t>(q)];
    }

    void add(const PhaseSample& s, bool is_prime)
    {
        const auto x = static_cast<std::uint64_t>(s.x);
        for (Category c : kAllCategories) {
            if (!in_category(c, x, is_prime)) continue;
            auto& row = moments[static_cast<std::size_t>(c)];
            for (Quantity q : kAllQuantities) row[static_cast<std::size_t>(q)].push(value_of(s, q));
        }
        cos_delta_hist.add(s.cos_delta);
        if (std::abs(s.cos_delta) > 1.0) {
            ++violations;
            if (first_violations.size() < kMaxRecordedViolations) first_violations.push_back(s.x);
        }
    }

    void merge_from(const BandStats& o)
    {
        for (std::size_t c = 0; c < kCategoryCount; ++c)
            for (std::size_t q = 0; q < kQuantityCount; ++q)
                moments[c][q] = primephase::merge(moments[c][q], o.moments[c][q]);
        cos_delta_hist.merge(o.cos_delta_hist);
        violations += o.violations;
        for (double v : o.first_violations) {
            if (first_violations.size() >= kMaxRecordedViolations) break;
            first_violations.push_back(v);
        }
    }
};

/// Range endpoints 10^2, 10^3, ... not exceeding max_x, plus max_x itself.
inline std::vector<std::uint64_t> decade_checkpoints(std::uint64_t max_x)
{
    if (max_x < 2) throw DomainError("decade_checkpoints: max_x must be >= 2");
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 100; p <= max_x; p *= 10) {
        out.push_back(p);
        if (p > UINT64_MAX / 10) break;
    }
    if (out.empty() || out.back() != max_x) out.push_back(max_x);
    return out;
}

/// Cumulative statistics over [2, checkpoint] for every checkpoint.
struct RangeAnalysis
{
    std::vector<std::uint64_t> checkpoints;
    std::vector<BandStats> cumulative;
};

/// One pass over [2, checkpoints.back()]; checkpoints must be increasing.
inline RangeAnalysis analyze_ranges(std::vector<std::uint64_t> checkpoints, const PipelineOptions& opt)
{
    if (checkpoints.empty()) throw DomainError("analyze_ranges: no checkpoints");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
        std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end() || checkpoints.front() < 2)
        throw DomainError("analyze_ranges: checkpoints must be strictly increasing and >= 2");

    using Bands = std::vector<BandStats>;
    const Bands identity(checkpoints.size());
    const auto fold = [&](Bands& bands, const PhaseSample& s) {
        const auto x = static_cast<std::uint64_t>(s.x);
        const auto band = static_cast<std::size_t>(
            std::lower_bound(checkpoints.begin(), checkpoints.end(), x) - checkpoints.begin());
        bands[band].add(s, s.category == Category::prime);
    };
    const auto merge_bands = [](Bands acc, const Bands& part) {
        for (std::size_t b = 0; b < acc.size(); ++b) acc[b].merge_from(part[b]);
        return acc;
    };
    Bands bands = reduce_samples(checkpoints.back(), opt, identity, fold, merge_bands);

    RangeAnalysis out{checkpoints, {}};
    BandStats running;
    for (const auto& b : bands) {
        running.merge_from(b);
        out.cumulative.push_back(running);
    }
    return out;
}

struct TableRow
{
    std::uint64_t range_max;
    double mean;
    double sigma;
    double mean_abs;
    std::uint64_t count;
};

inline TableRow make_row(std::uint64_t range_max, const MomentAccumulator& acc)
{
    return {range_max, acc.mean, acc.sigma(), acc.mean_abs, acc.count};
}

/// Statistics of one quantity over x in [2, range_max] restricted to a category.
inline TableRow table_row(std::uint64_t range_max, Quantity q, const EnvelopeParams& env, Category c,
                          const RModel& model = {})
{
    PipelineOptions opt;
    opt.envelope = env;
    opt.model = model;
    const auto analysis = analyze_ranges({range_max}, opt);
    return make_row(range_max, analysis.cumulative.back().at(c, q));
}

/// cos(delta) histogram over x in [2, range_max].
inline Histogram range_histogram(std::uint64_t range_max, const PipelineOptions& opt)
{
    return analyze_ranges({range_max}, opt).cumulative.back().cos_delta_hist;
}

} // namespace primephase

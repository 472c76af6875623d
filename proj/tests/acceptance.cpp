// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include "primephase/primephase.hpp"

#include <fmt/core.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

using namespace primephase;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion
{
    int id;
    std::string title;
    bool ok = true;
    std::vector<std::string> notes;

    Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

    void check(bool cond, std::string what)
    {
        if (!cond) ok = false;
        notes.push_back(fmt::format("{} {}", cond ? "ok  " : "BAD ", what));
    }
};

int report(const Criterion& c)
{
    fmt::print("{} criterion {:>2}: {}\n", c.ok ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& n : c.notes) fmt::print("        {}\n", n);
    std::fflush(stdout);
    return c.ok ? 0 : 1;
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

constexpr std::array<std::uint64_t, 5> kRanges = {100, 1000, 10000, 100000, 1000000};

// ---------------------------------------------------------------------------
// Published reference values

struct Table1Row
{
    double mean, sigma;
};
constexpr Table1Row kTable1[] = {{0.001889, 0.062256}, {0.001405, 0.028509}}; // [2,1e2], [2,1e6]

struct Table2Row
{
    double mean, sigma, mean_abs, mean_bar;
};
constexpr Table2Row kTable2[] = {
    {0.014402, 0.315325, 0.254145, -0.010719}, {0.008304, 0.280109, 0.223332, -0.000662},
    {0.009965, 0.283603, 0.224534, 0.006999},  {0.014043, 0.281287, 0.222306, 0.013073},
    {0.014057, 0.278975, 0.227005, 0.013740},
};

constexpr double kTable3[] = {0.015587, 0.008606, 0.009728, 0.013529, 0.013608};

struct Table4Row
{
    double all, prime;
    std::uint64_t n_prime;
    double even, odd_composite;
    std::uint64_t n_odd_composite;
    double odd;
};
constexpr Table4Row kTable4[] = {
    {0.014402, 0.256581, 25, -0.073010, -0.056451, 25, 0.122513},
    {0.008304, 0.182444, 168, -0.027533, -0.025953, 332, 0.046160},
    {0.009965, 0.099122, 1229, -0.002571, -0.002474, 3771, 0.022703},
    {0.014043, 0.051776, 9592, 0.009936, 0.010169, 40408, 0.018171},
    {0.014057, 0.028670, 78498, 0.012749, 0.012886, 421502, 0.015366},
};

// Columns [2,1e3], [2,1e4], [2,1e5], [2,1e6]; rows are the 21 bins.
constexpr std::uint64_t kTable5[4][21] = {
    {1, 0, 0, 5, 11, 31, 47, 78, 116, 144, 136, 130, 106, 76, 57, 36, 11, 6, 5, 2, 1},
    {2, 3, 14, 67, 186, 370, 490, 657, 880, 1389, 1530, 1387, 1038, 760, 575, 390, 187, 52, 17, 4, 1},
    {3, 26, 120, 522, 1303, 2504, 4630, 7490, 11776, 13740, 15040, 13006, 10645, 6816, 5082, 3835, 1915, 871, 397,
     267, 11},
    {3, 331, 2230, 5024, 15247, 30391, 55051, 78559, 94341, 114888, 138262, 138171, 115027, 92749, 68886, 34856,
     10700, 3833, 1086, 373, 11},
};

struct Table6Row
{
    double lo, hi;
    std::vector<int> xs;
};
const std::vector<Table6Row> kTable6 = {
    {-1.0, -0.95, {2}},
    {-0.65, -0.55, {4, 10}},
    {-0.55, -0.45, {28, 36, 40, 58, 96}},
    {-0.45, -0.35, {16, 57, 66, 95, 100}},
    {-0.35, -0.25, {9, 27, 35, 39, 52, 70, 94, 99}},
    {-0.25, -0.15, {6, 12, 56, 60, 65, 98}},
    {-0.15, -0.05, {15, 22, 26, 30, 34, 38, 42, 51, 55, 64, 69, 78, 88, 93}},
    {-0.05, 0.05, {3, 18, 46, 50, 59, 68, 82, 87, 92, 97}},
    {0.05, 0.15, {8, 11, 25, 29, 33, 37, 41, 45, 54, 63, 72, 77, 86, 91}},
    {0.15, 0.25, {5, 14, 21, 49, 53, 62, 67, 71, 76, 81, 90}},
    {0.25, 0.35, {17, 24, 32, 44, 48, 75, 80, 85}},
    {0.35, 0.45, {20, 61, 79, 84, 89}},
    {0.45, 0.55, {7, 13, 31, 43, 47, 74, 83}},
    {0.55, 0.65, {23, 73}},
    {0.65, 0.75, {19}},
};

// ---------------------------------------------------------------------------

Criterion prime_counts()
{
    Criterion c{1, "exact prime counts and sieve throughput"};
    constexpr std::uint64_t want[] = {25, 168, 1229, 9592, 78498};
    for (std::size_t i = 0; i < kRanges.size(); ++i) {
        const auto got = pi_at(kRanges[i]);
        c.check(got == want[i], fmt::format("pi({}) = {} (want {})", kRanges[i], got, want[i]));
    }
    auto t0 = Clock::now();
    const auto p6 = pi_at(1'000'000);
    const double t6 = seconds_since(t0);
    c.check(p6 == 78498 && t6 < 1.0, fmt::format("sieve to 1e6 in {:.3f} s (limit 1 s)", t6));
    t0 = Clock::now();
    const auto p8 = pi_at(100'000'000);
    const double t8 = seconds_since(t0);
    c.check(p8 == 5761455, fmt::format("pi(1e8) = {} (want 5761455)", p8));
    c.check(t8 < 30.0, fmt::format("sieve to 1e8 in {:.3f} s (limit 30 s)", t8));
    return c;
}

Criterion table1(const RangeAnalysis& a)
{
    Criterion c{2, "square-root difference moments, tolerance 1e-5"};
    constexpr double tol = 1e-5;
    const std::size_t idx[] = {0, 4};
    for (int k = 0; k < 2; ++k) {
        const auto& m = a.cumulative[idx[k]].at(Category::all, Quantity::sqrt_diff);
        c.check(near(m.mean, kTable1[k].mean, tol),
                fmt::format("[2,{}] mean {:.6f} (want {:.6f})", kRanges[idx[k]], m.mean, kTable1[k].mean));
        c.check(near(m.sigma(), kTable1[k].sigma, tol),
                fmt::format("[2,{}] sigma {:.6f} (want {:.6f})", kRanges[idx[k]], m.sigma(), kTable1[k].sigma));
    }
    return c;
}

Criterion table2(const RangeAnalysis& a, double runtime)
{
    Criterion c{3, "cos delta moments under eta1, tolerance 5e-3"};
    constexpr double tol = 5e-3;
    for (std::size_t i = 0; i < kRanges.size(); ++i) {
        const auto& b = a.cumulative[i];
        const auto& cd = b.at(Category::all, Quantity::cos_delta);
        const auto& cb = b.at(Category::all, Quantity::cos_delta_bar);
        const auto& w = kTable2[i];
        const bool ok = near(cd.mean, w.mean, tol) && near(cd.sigma(), w.sigma, tol) &&
                        near(cd.mean_abs, w.mean_abs, tol) && near(cb.mean, w.mean_bar, tol);
        c.check(ok, fmt::format("[2,{}] {:.6f} {:.6f} {:.6f} {:.6f} (want {:.6f} {:.6f} {:.6f} {:.6f})", kRanges[i],
                                cd.mean, cd.sigma(), cd.mean_abs, cb.mean, w.mean, w.sigma, w.mean_abs, w.mean_bar));
    }
    c.check(runtime < 60.0, fmt::format("pass over [2,1e6] in {:.3f} s (limit 60 s)", runtime));
    return c;
}

Criterion table3(const RangeAnalysis& a)
{
    Criterion c{4, "cos delta mean under eta2, tolerance 5e-3"};
    for (std::size_t i = 0; i < kRanges.size(); ++i) {
        const double m = a.cumulative[i].at(Category::all, Quantity::cos_delta).mean;
        c.check(near(m, kTable3[i], 5e-3), fmt::format("[2,{}] {:.6f} (want {:.6f})", kRanges[i], m, kTable3[i]));
    }
    return c;
}

Criterion table4(const RangeAnalysis& a)
{
    Criterion c{5, "cos delta mean by category, tolerance 5e-3, counts exact"};
    constexpr double tol = 5e-3;
    for (std::size_t i = 0; i < kRanges.size(); ++i) {
        const auto& b = a.cumulative[i];
        const auto& w = kTable4[i];
        const auto mean = [&](Category cat) { return b.at(cat, Quantity::cos_delta).mean; };
        const auto count = [&](Category cat) { return b.at(cat, Quantity::cos_delta).count; };
        const bool ok = near(mean(Category::all), w.all, tol) && near(mean(Category::prime), w.prime, tol) &&
                        near(mean(Category::even_composite), w.even, tol) &&
                        near(mean(Category::odd_composite), w.odd_composite, tol) &&
                        near(mean(Category::odd), w.odd, tol);
        c.check(ok, fmt::format("[2,{}] {:.6f} {:.6f} {:.6f} {:.6f} {:.6f}", kRanges[i], mean(Category::all),
                                mean(Category::prime), mean(Category::even_composite),
                                mean(Category::odd_composite), mean(Category::odd)));
        c.check(count(Category::prime) == w.n_prime && count(Category::odd_composite) == w.n_odd_composite,
                fmt::format("[2,{}] counts prime {} odd composite {} (want {} {})", kRanges[i],
                            count(Category::prime), count(Category::odd_composite), w.n_prime, w.n_odd_composite));
    }
    return c;
}

Criterion table5(const RangeAnalysis& a)
{
    Criterion c{6, "cos delta histogram, +-2 counts per bin"};
    for (std::size_t col = 0; col < 4; ++col) {
        const auto& h = a.cumulative[col + 1].cos_delta_hist;
        int bad = 0;
        for (std::size_t b = 0; b < Histogram::kBins; ++b) {
            const auto got = static_cast<long long>(h.count(b));
            const auto want = static_cast<long long>(kTable5[col][b]);
            if (std::llabs(got - want) > 2) {
                ++bad;
                c.check(false, fmt::format("[2,{}] bin ({:.2f},{:.2f}) {} (want {})", kRanges[col + 1],
                                           Histogram::edge(b), Histogram::edge(b + 1), got, want));
            }
        }
        if (bad == 0) c.check(true, fmt::format("[2,{}] all 21 bins", kRanges[col + 1]));
    }
    const auto b47 = a.cumulative[1].cos_delta_hist.count(6);
    c.check(b47 >= 46 && b47 <= 48, fmt::format("[2,1000] bin (-0.45,-0.35) = {} (want 47 +-1)", b47));
    return c;
}

Criterion table6()
{
    Criterion c{7, "placement of 2..100 in cos delta intervals, at least 97 of 99"};
    const auto env = EnvelopeParams::eta1();
    int placed = 0, listed = 0;
    std::vector<std::uint64_t> pi(101, 0);
    pi_stream(100, [&](std::uint64_t x, std::uint64_t p, bool) { pi[x] = p; });
    for (const auto& row : kTable6) {
        for (int x : row.xs) {
            ++listed;
            const double cd = make_sample(x, static_cast<double>(pi[x]), env, RModel{}).cos_delta;
            if (cd >= row.lo && cd <= row.hi)
                ++placed;
            else
                c.notes.push_back(fmt::format("     x = {} cos delta {:.6f} outside ({}, {})", x, cd, row.lo, row.hi));
        }
    }
    c.check(listed == 99, fmt::format("{} integers listed", listed));
    c.check(placed >= 97, fmt::format("{} of {} in their interval", placed, listed));
    return c;
}

Criterion point_values()
{
    Criterion c{8, "point values"};
    const auto s2 = make_sample(2.0, 1.0, EnvelopeParams::eta1(), RModel{});
    c.check(near(s2.sqrt_pi_minus_sqrt_r(), -0.244906, 1e-5),
            fmt::format("sqrt pi(2) - sqrt R(2) = {:.7f} (want -0.244906)", s2.sqrt_pi_minus_sqrt_r()));

    double best = -1.0;
    std::uint64_t arg = 0;
    pi_stream(10000, [&](std::uint64_t x, std::uint64_t p, bool) {
        const double v = std::sqrt(li(static_cast<double>(x))) - std::sqrt(static_cast<double>(p));
        if (v > best) {
            best = v;
            arg = x;
        }
    });
    c.check(near(best, 0.525426, 1e-5) && arg == 28,
            fmt::format("max sqrt li - sqrt pi on [2,1e4] = {:.7f} at x = {} (want 0.525426 at 28)", best, arg));
    const double mu = soldner();
    c.check(near(mu, 1.4513692348, 1e-8), fmt::format("li root {:.12f} (want 1.4513692348)", mu));
    return c;
}

Criterion zeta_checks()
{
    Criterion c{9, "zeta values and functional equation"};
    c.check(near(zeta(-2.0), 0.0, 1e-10), fmt::format("zeta(-2) = {:.3e}", zeta(-2.0)));
    c.check(near(zeta(-4.0), 0.0, 1e-10), fmt::format("zeta(-4) = {:.3e}", zeta(-4.0)));
    c.check(near(zeta(2.0), 1.6449340668, 1e-10), fmt::format("zeta(2) = {:.12f}", zeta(2.0)));
    for (double s : {2.0, 3.0, 4.0, 6.0}) {
        const double r = zeta_functional_check(s);
        c.check(r < 1e-8, fmt::format("functional equation residual at s = {} is {:.3e}", s, r));
    }
    return c;
}

Criterion crossing()
{
    Criterion c{10, "envelope-implied first crossing"};
    const auto t0 = Clock::now();
    const auto r2 = cli::crossing_report(EnvelopeKind::eta2);
    const auto r1 = cli::crossing_report(EnvelopeKind::eta1);
    const double dt = seconds_since(t0);
    c.check(r2.log_x >= 720.0 && r2.log_x <= 736.0,
            fmt::format("eta2: ln x = {:.6f}, x = {} (want ln x in [720, 736])", r2.log_x, r2.x_text));
    c.check(r1.log_x >= 63.0 && r1.log_x <= 67.0,
            fmt::format("eta1: ln x = {:.6f} (want [63, 67])", r1.log_x));
    c.check(!r1.note.empty(), "eta1 note: " + r1.note);
    c.check(dt < 0.1, fmt::format("both roots in {:.2e} s (limit 0.1 s)", dt));
    return c;
}

Criterion properties(const RangeAnalysis& a1, const RangeAnalysis& a2)
{
    Criterion c{11, "property suites"};
    std::mt19937_64 rng(20240611);

    // Envelope containment.
    const auto& v1 = a1.cumulative.back();
    const auto& v2 = a2.cumulative.back();
    c.check(v1.violations == 0, fmt::format("eta1: {} samples in [2,1e6] with |cos delta| > 1", v1.violations));
    std::string where;
    for (double x : v2.first_violations) {
        const auto s = make_sample(x, static_cast<double>(pi_at(static_cast<std::uint64_t>(x))),
                                   EnvelopeParams::eta2(), RModel{});
        where += fmt::format(" x = {} ({:.5f})", x, s.cos_delta);
    }
    c.check(v2.violations == 0, fmt::format("eta2: {} samples in [2,1e6] with |cos delta| > 1{}", v2.violations, where));

    // Gram versus Moebius.
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = std::exp(std::log(2.0) + (std::log(1e12) - std::log(2.0)) * i / 49.0);
        worst = std::max(worst, std::abs(riemann_r(x) - riemann_r_mobius(x)) / riemann_r_mobius(x));
    }
    c.check(worst < 1e-9, fmt::format("Gram vs Moebius R on 50 points in [2,1e12]: max rel {:.2e} (limit 1e-9)", worst));

    // li series versus principal-value quadrature.
    worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = std::exp(std::log(2.0) + (std::log(1e6) - std::log(2.0)) * i / 19.0);
        worst = std::max(worst, std::abs(li(x) - li_pv_oracle(x)) / std::abs(li_pv_oracle(x)));
    }
    c.check(worst < 1e-8, fmt::format("li series vs quadrature on 20 points: max rel {:.2e} (limit 1e-8)", worst));

    // Derivatives versus central differences at composite x.
    std::uniform_real_distribution<double> logx(std::log(1e2), std::log(1e6));
    double worst_r = 0.0, worst_rt = 0.0, worst_c = 0.0;
    const auto tab = RModel::tabulated();
    for (int i = 0; i < 100; ++i) {
        auto n = static_cast<std::uint64_t>(std::exp(logx(rng)));
        while (sieve_range(n, n).is_prime(n)) ++n;
        const double x = static_cast<double>(n);
        const double pi = static_cast<double>(pi_at(n));
        const double h = 0.01;
        const auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
        worst_r = std::max(worst_r, rel(riemann_r_prime(x), (riemann_r(x + h) - riemann_r(x - h)) / (2 * h)));
        worst_rt = std::max(worst_rt, rel(tab.derivative(x), (tab.value(x + h) - tab.value(x - h)) / (2 * h)));
        for (auto env : {EnvelopeParams::eta1(), EnvelopeParams::eta2()}) {
            const auto cd = [&](double t) { return cos_delta(pi, tab.value(t), eta(env, t)); };
            worst_c = std::max(worst_c, rel(cos_delta_derivative(x, pi, env, tab), (cd(x + h) - cd(x - h)) / (2 * h)));
        }
    }
    c.check(worst_r < 1e-6 && worst_rt < 1e-6,
            fmt::format("dR/dx vs central difference on 100 points: max rel {:.2e} (Gram), {:.2e} (14-term)", worst_r,
                        worst_rt));
    c.check(worst_c < 1e-6, fmt::format("d cos delta/dx vs central difference on 100 points: max rel {:.2e}", worst_c));

    // Histogram conservation.
    bool conserved = true;
    std::uniform_real_distribution<double> u(-1.3, 1.3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> vals(1 + rng() % 2000);
        for (auto& x : vals) x = u(rng);
        const auto h = histogram(vals);
        std::uint64_t inside = 0;
        for (auto n : h.counts()) inside += n;
        conserved = conserved && h.total() == vals.size() && inside + h.underflow() + h.overflow() == vals.size();
    }
    for (const auto& band : a1.cumulative) {
        std::uint64_t inside = 0;
        for (auto n : band.cos_delta_hist.counts()) inside += n;
        conserved = conserved && inside + band.cos_delta_hist.underflow() + band.cos_delta_hist.overflow() ==
                                     band.at(Category::all, Quantity::cos_delta).count;
    }
    c.check(conserved, "histogram counts sum to the sample count (50 random sets, 5 ranges)");

    // Merge versus serial on random partitions.
    double worst_m = 0.0;
    std::normal_distribution<double> g(0.014, 0.28);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> vals(2 + rng() % 5000);
        for (auto& x : vals) x = g(rng);
        MomentAccumulator serial, merged, part;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            serial.push(vals[i]);
            part.push(vals[i]);
            if (rng() % 97 == 0) {
                merged = merge(merged, part);
                part = {};
            }
        }
        merged = merge(merged, part);
        worst_m = std::max({worst_m, std::abs(merged.mean - serial.mean), std::abs(merged.sigma() - serial.sigma()),
                            std::abs(merged.mean_abs - serial.mean_abs)});
    }
    PipelineOptions small;
    small.segment_size = 777;
    small.threads = 3;
    const auto split = analyze_ranges({20000}, small);
    small.segment_size = kDefaultSegmentSize;
    small.threads = 1;
    const auto whole = analyze_ranges({20000}, small);
    for (Category cat : kAllCategories)
        for (Quantity q : kAllQuantities) {
            const auto& x = split.cumulative[0].at(cat, q);
            const auto& y = whole.cumulative[0].at(cat, q);
            worst_m = std::max({worst_m, std::abs(x.mean - y.mean), std::abs(x.sigma() - y.sigma())});
        }
    c.check(worst_m < 1e-12, fmt::format("merge vs serial: max abs difference {:.2e} (limit 1e-12)", worst_m));
    return c;
}

} // namespace

int main()
{
    int failed = 0;
    failed += report(prime_counts());

    PipelineOptions opt1;
    opt1.envelope = EnvelopeParams::eta1();
    auto t0 = Clock::now();
    const auto a1 = analyze_ranges({kRanges.begin(), kRanges.end()}, opt1);
    const double t_eta1 = seconds_since(t0);

    PipelineOptions opt2;
    opt2.envelope = EnvelopeParams::eta2();
    const auto a2 = analyze_ranges({kRanges.begin(), kRanges.end()}, opt2);

    failed += report(table1(a1));
    failed += report(table2(a1, t_eta1));
    failed += report(table3(a2));
    failed += report(table4(a1));
    failed += report(table5(a1));
    failed += report(table6());
    failed += report(point_values());
    failed += report(zeta_checks());
    failed += report(crossing());
    failed += report(properties(a1, a2));

    fmt::print("{} of 11 criteria passed\n", 11 - failed);
    return failed;
}

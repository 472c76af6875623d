/// @file phase.hpp
/// @brief Envelope functions, the phase cos(delta) of sqrt(pi) - sqrt(R),
///        bounds on li - pi and the envelope-implied first crossing.
///
/// With an envelope eta(x) > 0 the prime count is written either as
///   sqrt(pi) = sqrt(R) + eta cos(delta)                      (cos_delta)
/// or as |sqrt(R) + eta e^{i delta}|^2 = pi, i.e.
///   pi = R + 2 eta cos(delta) sqrt(R) + eta^2                 (cos_delta_bar).
#pragma once

#include "primephase/error.hpp"
#include "primephase/primes.hpp"
#include "primephase/roots.hpp"
#include "primephase/specfun.hpp"

#include <cmath>
#include <optional>
#include <string_view>

namespace primephase {

// ---------------------------------------------------------------------------
// R model used by the analysis

/// Number of Moebius terms in the tabulated R model. The reference prime
/// tables (mean of sqrt(pi)-sqrt(R) over 2..100 = 0.001889, sqrt(pi(2)) -
/// sqrt(R(2)) = -0.244906, ...) were produced with this partial sum.
inline constexpr int kTabulatedMobiusTerms = 14;

enum class RForm { tabulated, exact };

/// Which function stands in for R(x) in phase computations.
struct RModel
{
    RForm form = RForm::tabulated;
    int terms = kTabulatedMobiusTerms;

    static constexpr RModel tabulated(int terms = kTabulatedMobiusTerms) noexcept
    {
        return {RForm::tabulated, terms};
    }
    static constexpr RModel exact() noexcept { return {RForm::exact, 0}; }

    double value(double x) const
    {
        return form == RForm::exact ? riemann_r(x) : riemann_r_partial(x, terms);
    }

    double derivative(double x) const
    {
        return form == RForm::exact ? riemann_r_prime(x) : riemann_r_partial_prime(x, terms);
    }
};

inline std::string_view to_string(RForm f) { return f == RForm::exact ? "exact" : "tabulated"; }

inline std::optional<RForm> parse_r_form(std::string_view s)
{
    if (s == "exact") return RForm::exact;
    if (s == "tabulated") return RForm::tabulated;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Envelopes

enum class EnvelopeKind { eta1, eta2 };

/// eta1(x) = a / ln ln(x + b);  eta2(x) = a / [ln(x + b)]^p.
struct EnvelopeParams
{
    EnvelopeKind kind;
    double a;
    double b;
    double p;

    static constexpr EnvelopeParams eta1() noexcept { return {EnvelopeKind::eta1, 0.2595, 15.9, 0.0}; }
    static constexpr EnvelopeParams eta2() noexcept { return {EnvelopeKind::eta2, 0.315647, 4.07206, 0.430202}; }
    static constexpr EnvelopeParams of(EnvelopeKind k) noexcept { return k == EnvelopeKind::eta1 ? eta1() : eta2(); }
};

inline std::string_view to_string(EnvelopeKind k) { return k == EnvelopeKind::eta1 ? "eta1" : "eta2"; }

inline std::optional<EnvelopeKind> parse_envelope(std::string_view s)
{
    if (s == "eta1") return EnvelopeKind::eta1;
    if (s == "eta2") return EnvelopeKind::eta2;
    return std::nullopt;
}

namespace detail {

// ln(x + b) given only ln x; valid where x itself would overflow.
inline double log_shifted(double log_x, double b) { return log_x + std::log1p(b * std::exp(-log_x)); }

inline double eta_from_log_shifted(const EnvelopeParams& e, double log_xb)
{
    return e.kind == EnvelopeKind::eta1 ? e.a / std::log(log_xb) : e.a / std::pow(log_xb, e.p);
}

} // namespace detail

inline double eta(const EnvelopeParams& e, double x)
{
    if (!(x >= 2.0)) throw DomainError("eta: x must be >= 2");
    return detail::eta_from_log_shifted(e, std::log(x + e.b));
}

/// eta(e^log_x), evaluated without forming x.
inline double eta_at_log(const EnvelopeParams& e, double log_x)
{
    return detail::eta_from_log_shifted(e, detail::log_shifted(log_x, e.b));
}

/// d eta / dx.
inline double eta_prime(const EnvelopeParams& e, double x)
{
    if (!(x >= 2.0)) throw DomainError("eta_prime: x must be >= 2");
    const double xb = x + e.b;
    const double l = std::log(xb);
    if (e.kind == EnvelopeKind::eta1) {
        const double ll = std::log(l);
        return -e.a / (ll * ll * xb * l);
    }
    return -e.a * e.p * std::pow(l, -e.p - 1.0) / xb;
}

// ---------------------------------------------------------------------------
// Phase

inline double cos_delta(double pi_x, double r_x, double eta_val)
{
    if (!(eta_val > 0.0)) throw DomainError("cos_delta: eta must be > 0");
    if (!(pi_x >= 1.0) || !(r_x > 0.0)) throw DomainError("cos_delta: requires pi >= 1 and R > 0");
    return (std::sqrt(pi_x) - std::sqrt(r_x)) / eta_val;
}

inline double cos_delta_bar(double pi_x, double r_x, double eta_val)
{
    if (!(eta_val > 0.0)) throw DomainError("cos_delta_bar: eta must be > 0");
    if (!(pi_x >= 1.0) || !(r_x > 0.0)) throw DomainError("cos_delta_bar: requires pi >= 1 and R > 0");
    return (pi_x - r_x - eta_val * eta_val) / (2.0 * std::sqrt(r_x) * eta_val);
}

/// Every per-x quantity of the analysis. x and pi_x are integers held in
/// doubles (exact below 2^53) so rows from ingested tables fit the same type.
struct PhaseSample
{
    double x;
    double pi_x;
    double li_x;
    double r_x;
    double eta;
    double cos_delta;
    double cos_delta_bar;
    std::optional<Category> category; // absent when primality of x is unknown

    double sqrt_pi_minus_sqrt_r() const { return std::sqrt(pi_x) - std::sqrt(r_x); }
    double sqrt_li_minus_sqrt_pi() const { return std::sqrt(li_x) - std::sqrt(pi_x); }
    double sqrt_li_minus_sqrt_r() const { return std::sqrt(li_x) - std::sqrt(r_x); }
    double pi_minus_r() const { return pi_x - r_x; }
    double li_minus_pi() const { return li_x - pi_x; }
    double li_minus_r() const { return li_x - r_x; }
};

inline PhaseSample make_sample(double x, double pi_x, const EnvelopeParams& env, const RModel& model,
                               std::optional<Category> category = std::nullopt)
{
    PhaseSample s;
    s.x = x;
    s.pi_x = pi_x;
    s.li_x = li(x);
    s.r_x = model.value(x);
    s.eta = eta(env, x);
    s.cos_delta = cos_delta(pi_x, s.r_x, s.eta);
    s.cos_delta_bar = cos_delta_bar(pi_x, s.r_x, s.eta);
    s.category = category;
    return s;
}

// ---------------------------------------------------------------------------
// Bounds on li - pi

struct Interval
{
    double lo;
    double hi;

    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// [li - (sqrt R + eta)^2, li - (sqrt R - eta)^2] from precomputed values.
inline Interval exact_bounds(double li_x, double r_x, double eta_val)
{
    const double root = std::sqrt(r_x);
    return {li_x - (root + eta_val) * (root + eta_val), li_x - (root - eta_val) * (root - eta_val)};
}

inline Interval li_pi_bounds_exact(double x, const EnvelopeParams& env, const RModel& model = {})
{
    if (!(x >= 2.0)) throw DomainError("li_pi_bounds_exact: x must be >= 2");
    return exact_bounds(li(x), model.value(x), eta(env, x));
}

/// Below this x the large-x form of the bounds is not offered.
inline constexpr double kAsymptoticThreshold = 1e8;

/// sqrt(x)/ln x -/+ 2 eta sqrt(x / ln x).
inline Interval li_pi_bounds_asymptotic(double x, const EnvelopeParams& env)
{
    if (!(x >= kAsymptoticThreshold)) throw DomainError("li_pi_bounds_asymptotic: x below validity threshold 1e8");
    const double l = std::log(x);
    const double centre = std::sqrt(x) / l;
    const double half = 2.0 * eta(env, x) * std::sqrt(x / l);
    return {centre - half, centre + half};
}

// ---------------------------------------------------------------------------
// Derivative between primes

/// d cos(delta) / dx with pi(x) held fixed, in the closed form
///   eta1: (1/a) { (sqrt pi - sqrt R) / ((x+b) ln(x+b)) - ln ln(x+b) R' / (2 sqrt R) }
///   eta2: ([ln(x+b)]^p / a) { p (sqrt pi - sqrt R) / ((x+b) ln(x+b)) - R' / (2 sqrt R) }
inline double cos_delta_derivative(double x, double pi_x, const EnvelopeParams& env, const RModel& model = {})
{
    if (!(x > 2.0)) throw DomainError("cos_delta_derivative: x must be > 2");
    const double r = model.value(x);
    const double dr = model.derivative(x);
    const double xb = x + env.b;
    const double l = std::log(xb);
    const double diff = std::sqrt(pi_x) - std::sqrt(r);
    const double slope = dr / (2.0 * std::sqrt(r));
    if (env.kind == EnvelopeKind::eta1)
        return (diff / (xb * l) - std::log(l) * slope) / env.a;
    return std::pow(l, env.p) / env.a * (env.p * diff / (xb * l) - slope);
}

// ---------------------------------------------------------------------------
// First crossing

inline constexpr double kCrossingLogLo = 4.0;
inline constexpr double kCrossingLogHi = 2000.0;

/// Solve eta(L) = 1 / (2 sqrt L) for L = ln x in [lo, hi]. eta_of_log maps
/// ln x to the envelope value.
template <typename EtaOfLog>
double first_crossing_log(const EtaOfLog& eta_of_log, double lo = kCrossingLogLo, double hi = kCrossingLogHi)
{
    const auto f = [&](double log_x) { return eta_of_log(log_x) - 0.5 / std::sqrt(log_x); };
    return bisect(f, lo, hi, 1e-12).root;
}

/// ln x at which the envelope stops excluding a sign change of li - pi.
inline double first_crossing_estimate(const EnvelopeParams& env)
{
    return first_crossing_log([&](double log_x) { return eta_at_log(env, log_x); });
}

} // namespace primephase

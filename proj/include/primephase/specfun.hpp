/// @file specfun.hpp
/// @brief Logarithmic integral, Hasse zeta, Moebius function and the
///        Riemann prime-counting function R(x) in several independent forms.
///
/// Three evaluations of R are provided:
///  - riemann_r          Gram series 1 + sum_k (ln x)^k / (k k! zeta(k+1)),
///                       zeta by the Hasse double series.
///  - riemann_r_mobius   sum_n mu(n)/n li(x^(1/n)), summed directly for small
///                       n and closed with the exact tail over n > N.
///  - riemann_r_partial  the plain partial sum over n <= terms.
/// The first two are independent routes to the same value; the third is a
/// different (truncated) function used by the tabulated analysis model.
#pragma once

#include "primephase/error.hpp"
#include "primephase/quadrature.hpp"
#include "primephase/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace primephase {

/// Truncation control for every series in this header.
struct SeriesConfig
{
    double rel_tol = 1e-15;
    int max_terms = 10000;

    void validate() const
    {
        if (!(rel_tol > 0.0 && rel_tol < 1e-6)) throw ConfigError("SeriesConfig: rel_tol must lie in (0, 1e-6)");
        if (max_terms < 100) throw ConfigError("SeriesConfig: max_terms must be >= 100");
    }

    friend bool operator==(const SeriesConfig&, const SeriesConfig&) = default;
};

namespace constants {
inline constexpr double euler_gamma = 0.57721566490153286061;
} // namespace constants

// ---------------------------------------------------------------------------
// Moebius

inline int mobius(std::uint64_t n)
{
    if (n == 0) throw DomainError("mobius: n must be >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// mu(0..n) by a linear sieve; entry 0 is unused (0).
inline std::vector<int> mobius_table(std::size_t n)
{
    std::vector<int> mu(n + 1, 0);
    if (n == 0) return mu;
    mu[1] = 1;
    std::vector<std::size_t> primes;
    std::vector<bool> composite(n + 1, false);
    for (std::size_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::size_t p : primes) {
            if (i * p > n) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Logarithmic integral

namespace detail {

// li(e^log_x) for log_x > 0 via gamma + ln log_x + sum_k log_x^k / (k k!).
inline double li_from_log(double log_x, const SeriesConfig& cfg)
{
    double power = 1.0; // log_x^k / k!
    double sum = 0.0;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        power *= log_x / k;
        const double add = power / k;
        sum += add;
        if (add < cfg.rel_tol * sum) return constants::euler_gamma + std::log(log_x) + sum;
    }
    throw ToleranceError("li: series did not converge within max_terms");
}

} // namespace detail

/// Logarithmic integral (principal value) for x > 1.
inline double li(double x, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(x > 1.0)) throw DomainError("li: x must be > 1");
    if (!std::isfinite(x)) throw RangeError("li: x must be finite");
    return detail::li_from_log(std::log(x), cfg);
}

/// Principal-value integral of 1/ln t over (0, x) by quadrature; the
/// independent check on li(). The symmetric excision around t = 1 is done
/// exactly by pairing t = 1 - u with t = 1 + u, whose summed integrand is
/// regular at u = 0.
inline double li_pv_oracle(double x, double rel_tol = 1e-13)
{
    if (!(x > 1.0)) throw DomainError("li_pv_oracle: x must be > 1");
    if (!std::isfinite(x)) throw RangeError("li_pv_oracle: x must be finite");

    const auto paired = [](double u) {
        if (u < 1e-3) {
            const double u2 = u * u;
            return 1.0 + u2 / 12.0 + 3.0 * u2 * u2 / 80.0;
        }
        return 1.0 / std::log1p(u) + 1.0 / std::log1p(-u);
    };
    const double abs_tol = 1e-15;

    if (x >= 2.0) {
        const double core = quad::integrate(paired, 0.0, 1.0, abs_tol, rel_tol).value;
        if (x == 2.0) return core;
        // t = e^s makes the outer piece smooth on a log scale.
        const auto outer = [](double s) { return std::exp(s) / s; };
        return core + quad::integrate(outer, std::numbers::ln2, std::log(x), abs_tol, rel_tol).value;
    }
    const double d = x - 1.0;
    const double core = quad::integrate(paired, 0.0, d, abs_tol, rel_tol).value;
    const auto inner = [](double t) { return 1.0 / std::log(t); };
    return core + quad::integrate(inner, 0.0, 1.0 - d, abs_tol, rel_tol).value;
}

// ---------------------------------------------------------------------------
// Zeta

/// Riemann zeta for real s != 1 by Hasse's globally convergent series.
inline double zeta(double s, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (s == 1.0) throw PoleError("zeta: pole at s = 1");
    if (!std::isfinite(s)) throw DomainError("zeta: s must be finite");

    // Binomials overflow double beyond n ~ 1020.
    const int n_max = std::min(cfg.max_terms, 1000);
    double sum = 0.0;
    int quiet = 0;
    for (int n = 0; n <= n_max; ++n) {
        double binom = 1.0;
        double inner = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double t = binom * std::pow(static_cast<double>(k + 1), -s);
            inner += (k % 2 == 0) ? t : -t;
            binom = binom * (n - k) / (k + 1);
        }
        const double term = std::ldexp(inner, -(n + 1));
        sum += term;
        if (std::abs(term) <= cfg.rel_tol * std::max(std::abs(sum), 1.0)) {
            if (++quiet == 2) return sum / (1.0 - std::exp2(1.0 - s));
        } else {
            quiet = 0;
        }
    }
    throw ToleranceError("zeta: Hasse series did not converge");
}

/// Relative residual of the functional equation
/// zeta(1-s) = 2 (2 pi)^-s cos(s pi / 2) Gamma(s) zeta(s), for s > 1.
inline double zeta_functional_check(double s, const SeriesConfig& cfg = {})
{
    if (!(s > 1.0)) throw DomainError("zeta_functional_check: s must be > 1");
    const double lhs = zeta(1.0 - s, cfg);
    const double rhs = 2.0 * std::pow(2.0 * std::numbers::pi, -s) * std::cos(s * std::numbers::pi / 2.0) *
                       std::tgamma(s) * zeta(s, cfg);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

namespace detail {

// zeta(s) for s >= 2 by Euler-Maclaurin on the Dirichlet series. Shares no
// code with the Hasse path.
inline double zeta_dirichlet(double s)
{
    constexpr int m = 16;
    static constexpr double bernoulli[] = {1.0 / 6,  -1.0 / 30,       1.0 / 42, -1.0 / 30,
                                           5.0 / 66, -691.0 / 2730.0, 7.0 / 6};
    double sum = 0.0;
    for (int n = m - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    const double mm = m;
    sum += std::pow(mm, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(mm, -s);
    double rising = s;   // s (s+1) ... (s+2j-2)
    double fact = 2.0;   // (2j)!
    double mpow = std::pow(mm, -s - 1.0);
    for (int j = 1; j <= 7; ++j) {
        sum += bernoulli[j - 1] / fact * rising * mpow;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        mpow /= mm * mm;
    }
    return sum;
}

// 1/zeta(k+1) for k = 0..size-1 (entry 0 unused), Hasse path, default config.
inline const std::vector<double>& gram_inverse_zeta()
{
    static const std::vector<double> table = [] {
        std::vector<double> t(2048, 0.0);
        for (std::size_t k = 1; k < t.size(); ++k) t[k] = 1.0 / zeta(static_cast<double>(k + 1));
        return t;
    }();
    return table;
}

inline double inverse_zeta_at(int k, const SeriesConfig& cfg)
{
    const auto& t = gram_inverse_zeta();
    if (cfg == SeriesConfig{} && static_cast<std::size_t>(k) < t.size()) return t[k];
    return 1.0 / zeta(static_cast<double>(k + 1), cfg);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Riemann R

/// R(x) via the Gram series.
inline double riemann_r(double x, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(x >= 2.0)) throw DomainError("riemann_r: x must be >= 2");
    if (!std::isfinite(x)) throw RangeError("riemann_r: x must be finite");
    const double log_x = std::log(x);
    double power = 1.0; // log_x^k / k!
    double sum = 1.0;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        power *= log_x / k;
        const double add = power / k * detail::inverse_zeta_at(k, cfg);
        sum += add;
        if (k > log_x && add < cfg.rel_tol * sum) return sum;
    }
    throw ToleranceError("riemann_r: Gram series did not converge");
}

/// dR/dx from the term-wise derivative of the Gram series,
/// (1/x) sum_k (ln x)^(k-1) / (k! zeta(k+1)).
inline double riemann_r_prime(double x, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(x > 2.0)) throw DomainError("riemann_r_prime: x must be > 2");
    if (!std::isfinite(x)) throw RangeError("riemann_r_prime: x must be finite");
    const double log_x = std::log(x);
    double power = 1.0; // log_x^(k-1) / k!
    double sum = 0.0;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        power /= k;
        const double add = power * detail::inverse_zeta_at(k, cfg);
        sum += add;
        if (k > log_x && add < cfg.rel_tol * sum) return sum / x;
        power *= log_x;
    }
    throw ToleranceError("riemann_r_prime: series did not converge");
}

/// Partial Moebius sum sum_{n <= terms} mu(n)/n li(x^(1/n)).
inline double riemann_r_partial(double x, int terms, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(x >= 2.0)) throw DomainError("riemann_r_partial: x must be >= 2");
    if (terms < 1) throw ConfigError("riemann_r_partial: terms must be >= 1");
    const double log_x = std::log(x);
    double sum = 0.0;
    for (int n = 1; n <= terms; ++n) {
        const int mu = mobius(static_cast<std::uint64_t>(n));
        if (mu != 0) sum += mu * detail::li_from_log(log_x / n, cfg) / n;
    }
    return sum;
}

/// Exact derivative of riemann_r_partial:
/// sum_{n <= terms} mu(n) / (n x^((n-1)/n) ln x).
inline double riemann_r_partial_prime(double x, int terms)
{
    if (!(x > 2.0)) throw DomainError("riemann_r_partial_prime: x must be > 2");
    if (terms < 1) throw ConfigError("riemann_r_partial_prime: terms must be >= 1");
    const double log_x = std::log(x);
    double sum = 0.0;
    for (int n = 1; n <= terms; ++n) {
        const int mu = mobius(static_cast<std::uint64_t>(n));
        if (mu != 0) sum += mu * std::exp(log_x / n) / n;
    }
    return sum / (x * log_x);
}

/// R(x) in Moebius form. Terms n <= N are summed directly; the tail n > N,
/// where ln(x)/n is small, is expanded as li(e^y) = gamma + ln y + sum y^k/(k k!)
/// and closed with sum mu(n)/n = 0, sum mu(n) ln(n)/n = -1 and
/// sum mu(n)/n^(k+1) = 1/zeta(k+1).
inline double riemann_r_mobius(double x, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(x >= 2.0)) throw DomainError("riemann_r_mobius: x must be >= 2");
    if (!std::isfinite(x)) throw RangeError("riemann_r_mobius: x must be finite");
    const double log_x = std::log(x);
    const int n_direct = std::max(64, static_cast<int>(std::ceil(8.0 * log_x)));
    const auto mu = mobius_table(static_cast<std::size_t>(n_direct));

    double direct = 0.0;
    double head_inv = 0.0; // sum_{n<=N} mu(n)/n
    double head_log = 0.0; // sum_{n<=N} mu(n) ln(n) / n
    for (int n = 1; n <= n_direct; ++n) {
        if (mu[n] == 0) continue;
        direct += mu[n] * detail::li_from_log(log_x / n, cfg) / n;
        head_inv += static_cast<double>(mu[n]) / n;
        head_log += mu[n] * std::log(static_cast<double>(n)) / n;
    }

    double tail = (constants::euler_gamma + std::log(log_x)) * (-head_inv) - (-1.0 - head_log);
    double power = 1.0; // log_x^k / k!
    const double ratio = log_x / n_direct;
    double bound_power = 1.0;
    for (int k = 1; k <= 60; ++k) {
        power *= log_x / k;
        bound_power *= ratio / k;
        double head = 0.0;
        for (int n = n_direct; n >= 1; --n)
            if (mu[n] != 0) head += mu[n] * std::pow(static_cast<double>(n), -(k + 1.0));
        const double c_k = 1.0 / detail::zeta_dirichlet(k + 1.0) - head;
        tail += power / k * c_k;
        // |c_k| <= N^-k / k, so the remaining terms are below this bound.
        if (k >= 2 && bound_power / k < cfg.rel_tol * std::abs(direct)) break;
    }
    return direct + tail;
}

// ---------------------------------------------------------------------------
// Ramanujan-Soldner constant

/// The positive root of li, by bisection on (1, 2).
inline double soldner()
{
    static const double root = bisect([](double x) { return li(x); }, 1.25, 2.0, 1e-15).root;
    return root;
}

struct Constants
{
    double euler_gamma;
    double soldner_mu;
};

inline const Constants& library_constants()
{
    static const Constants c{constants::euler_gamma, soldner()};
    return c;
}

} // namespace primephase

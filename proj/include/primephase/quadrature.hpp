/// @file quadrature.hpp
/// @brief Globally adaptive Gauss-Kronrod (7/15) integration.
#pragma once

#include "primephase/error.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace primephase::quad {

struct Result
{
    double value;
    double error;
    std::size_t intervals;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece
{
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

template <typename F>
Piece kronrod15(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kKronrodWeights[7];
    double g = fc * kGaussWeights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = h * kKronrodNodes[i];
        const double s = f(c - dx) + f(c + dx);
        k += kKronrodWeights[i] * s;
        if (i % 2 == 1) g += kGaussWeights[i / 2] * s;
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

} // namespace detail

/// Integrate f over [a, b] until the summed error estimate is below
/// max(abs_tol, rel_tol * |value|). Throws ToleranceError if max_intervals
/// is exhausted first.
template <typename F>
Result integrate(const F& f, double a, double b, double abs_tol = 1e-14, double rel_tol = 1e-13,
                 std::size_t max_intervals = 20000)
{
    std::priority_queue<detail::Piece> heap;
    auto first = detail::kronrod15(f, a, b);
    double value = first.value;
    double error = first.error;
    heap.push(first);

    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (heap.size() >= max_intervals)
            throw ToleranceError("quadrature did not converge within the interval budget");
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            throw ToleranceError("quadrature interval collapsed before reaching tolerance");
        }
        const auto left = detail::kronrod15(f, worst.a, mid);
        const auto right = detail::kronrod15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of incremental updates.
    double total = 0.0;
    double total_err = 0.0;
    const std::size_t n = heap.size();
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err, n};
}

} // namespace primephase::quad

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Uniform-grid quadrature over one period [0, 2*pi).
//
// Every integral in this library is a mean over the unit circle of a smooth
// trigonometric expression, or of the positive part of one. The positive-part
// variant locates sign changes inside each panel and integrates only the
// positive sub-intervals, so the kink at the water line does not degrade the
// composite rule to first order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace tvisi::quadrature {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr std::size_t kDefaultPanels = 8192;

struct Estimate {
    double value = 0.0;
    double error = 0.0; ///< |Q(N) - Q(N/2)|
};

/// Mean value (1/2pi) * integral of fn over [0, 2pi) by composite Simpson on `panels` panels.
template <class F>
double periodic_mean(F&& fn, std::size_t panels = kDefaultPanels)
{
    if (panels == 0) throw std::invalid_argument("periodic_mean: panels must be positive");
    const double h = kTwoPi / static_cast<double>(panels);
    // Periodicity folds the two end nodes into one, so node weights are uniform.
    double nodes = 0.0;
    double mids = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double w = h * static_cast<double>(i);
        nodes += fn(w);
        mids += fn(w + 0.5 * h);
    }
    return (2.0 * nodes + 4.0 * mids) / (6.0 * static_cast<double>(panels));
}

template <class F>
Estimate periodic_mean_estimate(F&& fn, std::size_t panels = kDefaultPanels)
{
    const double full = periodic_mean(fn, panels);
    const double half = periodic_mean(fn, panels / 2 > 0 ? panels / 2 : 1);
    return {full, std::abs(full - half)};
}

namespace detail {

template <class F>
double bisect_sign_change(F& fn, double a, double fa, double b)
{
    // fn(a) and fn(b) have opposite signs (or one is zero).
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = fn(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double simpson_positive(F& fn, double a, double b)
{
    const double fa = fn(a);
    const double fm = fn(0.5 * (a + b));
    const double fb = fn(b);
    return (b - a) / 6.0 * (std::max(fa, 0.0) + 4.0 * std::max(fm, 0.0) + std::max(fb, 0.0));
}

} // namespace detail

/// Mean of max(fn, 0) over one period. `fn` must be smooth; panels whose three
/// Simpson nodes disagree in sign are split at the bracketed roots.
template <class F>
double periodic_mean_positive_part(F&& fn, std::size_t panels = kDefaultPanels)
{
    if (panels == 0) throw std::invalid_argument("periodic_mean_positive_part: panels must be positive");
    const double h = kTwoPi / static_cast<double>(panels);
    double total = 0.0;
    double a = 0.0;
    double fa = fn(a);
    for (std::size_t i = 0; i < panels; ++i) {
        const double b = h * static_cast<double>(i + 1);
        const double mid = 0.5 * (a + b);
        const double fm = fn(mid);
        const double fb = fn(b);
        const bool pa = fa > 0.0, pm = fm > 0.0, pb = fb > 0.0;
        if (pa && pm && pb) {
            total += h / 6.0 * (fa + 4.0 * fm + fb);
        } else if (pa || pm || pb) {
            // Split at the sign changes between consecutive nodes.
            double cuts[4] = {a, a, b, b};
            int nc = 1;
            if (pa != pm) cuts[nc++] = detail::bisect_sign_change(fn, a, fa, mid);
            if (pm != pb) cuts[nc++] = detail::bisect_sign_change(fn, mid, fm, b);
            cuts[nc++] = b;
            for (int s = 0; s + 1 < nc; ++s) {
                const double lo = cuts[s], hi = cuts[s + 1];
                if (hi > lo && fn(0.5 * (lo + hi)) > 0.0) total += detail::simpson_positive(fn, lo, hi);
            }
        }
        a = b;
        fa = fb;
    }
    return total / kTwoPi;
}

} // namespace tvisi::quadrature

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/waterfill.hpp"

#include "tvisi/errors.hpp"
#include "tvisi/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>
#include <string>

namespace tvisi {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kHalfInvLn2 = 1.0 / (2.0 * std::numbers::ln2);

void require_positive_power(double P, const char* where)
{
    if (!(P > 0.0) || !std::isfinite(P)) throw std::invalid_argument(std::string(where) + ": P must be finite and > 0");
}

double inv_sq(double x) { return 1.0 / (x * x); }

/// log2(1 + ((k+1)/2) ||r||^2 I)
double penalty_term(const SpectrumProfile& profile, const ChannelSpec& spec, double I)
{
    return std::log2(1.0 + 0.5 * static_cast<double>(spec.taps()) * profile.norm_r_sq * I);
}

double lb_at(const SpectrumProfile& profile, const ChannelSpec& spec, const WaterfillSolution& s, double delta)
{
    return log_integral(profile, spec, s.theta) - penalty_term(profile, spec, s.I) - delta;
}

} // namespace

WaterfillSolution make_solution(const SpectrumProfile& profile, double theta, double I, WaterLevel which)
{
    WaterfillSolution s;
    s.theta = theta;
    s.I = I;
    s.d_min = std::max(theta - inv_sq(profile.alpha), 0.0);
    s.d_max = std::max(theta - inv_sq(profile.beta), 0.0);
    s.which = which;
    return s;
}

double g_integral(const SpectrumProfile& profile, const ChannelSpec& spec, double theta)
{
    if (theta <= inv_sq(profile.beta)) return 0.0;
    if (theta >= inv_sq(profile.alpha)) return theta - profile.J;
    return quadrature::periodic_mean_positive_part(
        [&](double w) { return theta - 1.0 / eval_f_sq(spec, w); }, profile.panels);
}

double log_integral(const SpectrumProfile& profile, const ChannelSpec& spec, double theta)
{
    if (theta <= inv_sq(profile.beta)) return 0.0;
    return 0.5 * quadrature::periodic_mean_positive_part(
        [&](double w) { return std::log2(theta * eval_f_sq(spec, w)); }, profile.panels);
}

WaterfillSolution solve_theta1(const SpectrumProfile& profile, const ChannelSpec& spec, double P)
{
    require_positive_power(P, "solve_theta1");
    if (P >= inv_sq(profile.alpha) - profile.J) return make_solution(profile, P + profile.J, P, WaterLevel::Theta1);

    const double tol = 1e-10 * std::max(1.0, P);
    double lo = inv_sq(profile.beta);
    double hi = inv_sq(profile.alpha);
    for (int it = 0; it < kMaxBisections && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g_integral(profile, spec, mid) < P ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    if (std::abs(g_integral(profile, spec, theta) - P) > tol)
        throw NoConvergence("solve_theta1: bisection did not reach tolerance");
    return make_solution(profile, theta, P, WaterLevel::Theta1);
}

std::optional<WaterfillSolution> solve_theta2(const SpectrumProfile& profile, const ChannelSpec& spec)
{
    if (!(profile.norm_r_sq > 0.0)) return std::nullopt;
    const double A = 2.0 / (static_cast<double>(spec.taps()) * profile.norm_r_sq);
    if (A >= inv_sq(profile.alpha) + profile.J) {
        const double theta = A - profile.J;
        return make_solution(profile, theta, 2.0 * theta - A, WaterLevel::Theta2);
    }
    const double floor = inv_sq(profile.beta);
    if (0.5 * A <= floor) return std::nullopt;

    // h is strictly decreasing because g' <= 1 < 2, so the root is unique.
    const auto h = [&](double theta) { return g_integral(profile, spec, theta) - 2.0 * theta + A; };
    double lo = floor;
    double hi = floor + 1.0;
    while (h(hi) > 0.0) hi = lo + 2.0 * (hi - lo);
    for (int it = 0; it < kMaxBisections && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    return make_solution(profile, theta, std::max(2.0 * theta - A, 0.0), WaterLevel::Theta2);
}

double capacity_C0(const SpectrumProfile& profile, const ChannelSpec& spec, double P)
{
    return log_integral(profile, spec, solve_theta1(profile, spec, P).theta);
}

double delta_i(const SpectrumProfile& profile, const WaterfillSolution& solution)
{
    const double q = spread_factor(profile);
    if (q == 0.0) return 0.0;
    const double arg = 1.0 - q * solution.d_max / (1.0 + profile.alpha * profile.alpha * solution.d_min);
    if (!(arg > 0.0)) throw BoundInapplicable("delta_i: log argument is not positive; radii too large");
    return -0.5 * std::log2(arg)
        + kHalfInvLn2 * (1.0 - std::max(1.0 - q * solution.I, 0.0) / (1.0 + q * solution.d_max));
}

BoundReport bound_report(const SpectrumProfile& profile, const ChannelSpec& spec, double P)
{
    BoundReport b;
    b.P = P;
    b.level1 = solve_theta1(profile, spec, P);
    b.C0 = log_integral(profile, spec, b.level1.theta);
    b.delta1 = delta_i(profile, b.level1);
    b.C_LB1 = b.C0 - penalty_term(profile, spec, b.level1.I) - b.delta1;
    b.gap_cor1 = penalty_term(profile, spec, P) + b.delta1;

    if (profile.norm_r_sq > 0.0) {
        const double A = 2.0 / (static_cast<double>(spec.taps()) * profile.norm_r_sq);
        b.P_sat = A - 2.0 * profile.J;
        const double q = spread_factor(profile);
        const double loss = 1.0 - q * inv_sq(profile.alpha);
        if (A >= inv_sq(profile.alpha) + profile.J && loss > 0.0)
            b.gap_cor2 = 1.0 + kHalfInvLn2 - 0.5 * std::log2(loss);
    }

    b.level2 = solve_theta2(profile, spec);
    if (b.level2) {
        try {
            b.delta2 = delta_i(profile, *b.level2);
        } catch (const BoundInapplicable&) {
            b.delta2.reset();
        }
        if (b.delta2) {
            b.C_LB2_curve = lb_at(profile, spec, *b.level2, *b.delta2);
            if (b.level1.I >= b.level2->I) b.C_LB2 = b.C_LB2_curve;
        }
    }
    return b;
}

BoundReport bound_report(const ChannelSpec& spec, double P, std::size_t grid_size)
{
    return bound_report(compute_profile(spec, grid_size), spec, P);
}

PillowTerms pillow_terms(const SpectrumProfile& profile, const ChannelSpec& spec, double P, double r_s)
{
    if (!(r_s >= 0.0)) throw std::invalid_argument("pillow_terms: r_s must be >= 0");
    const WaterfillSolution s = solve_theta1(profile, spec, P);
    const double q = r_s * (r_s + 2.0 * profile.beta);
    PillowTerms t;
    t.log_term = std::log2(1.0 + 0.5 * static_cast<double>(spec.taps()) * r_s * r_s * P);
    const double arg = 1.0 - q * s.d_max / (1.0 + profile.alpha * profile.alpha * s.d_min);
    if (!(arg > 0.0)) throw BoundInapplicable("pillow_terms: log argument is not positive");
    t.logdet_term = -0.5 * std::log2(arg);
    t.saturation_term = kHalfInvLn2 * (1.0 - std::max(1.0 - q * P, 0.0) / (1.0 + q * s.d_max));
    t.total = t.log_term + t.logdet_term + t.saturation_term;
    return t;
}

double pillow_bound(const SpectrumProfile& profile, const ChannelSpec& spec, double P, double r_s)
{
    return pillow_terms(profile, spec, P, r_s).total;
}

WaterfillPowers waterfill_powers(const Vector& eigenvalues_ascending, double total_power, double floor)
{
    const auto n = eigenvalues_ascending.size();
    if (n == 0) throw std::invalid_argument("waterfill_powers: no eigenvalues");
    if (!(floor > 0.0)) throw std::invalid_argument("waterfill_powers: floor must be > 0");
    if (!(total_power > static_cast<double>(n) * floor))
        throw std::invalid_argument("waterfill_powers: budget does not exceed the floor allocation");

    Vector noise(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = eigenvalues_ascending(i);
        noise(i) = lambda > 0.0 ? 1.0 / lambda : std::numeric_limits<double>::infinity();
    }
    // The strongest j modes (the tail) are above the floor; the rest sit on it.
    double active_noise = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 1; j <= n; ++j) {
        const Eigen::Index weakest_active = n - j;
        active_noise += noise(weakest_active);
        theta = (total_power - static_cast<double>(n - j) * floor + active_noise) / static_cast<double>(j);
        const bool next_stays_inactive = j == n || theta - noise(weakest_active - 1) < floor;
        if (next_stays_inactive) break;
    }
    WaterfillPowers out;
    out.theta = theta;
    out.d = (theta - noise.array()).max(floor).matrix();
    return out;
}

FiniteNBound finite_n_bound(const ChannelSpec& spec, std::size_t n, double P, double epsilon_floor,
                            std::size_t grid_size)
{
    require_positive_power(P, "finite_n_bound");
    if (n < spec.taps()) throw std::invalid_argument("finite_n_bound: n must be >= k+1");
    const SpectrumProfile profile = compute_profile(spec, grid_size);

    FiniteNBound b;
    b.n = n;
    b.eigenvalues = gram_eigenvalues(spec, n);
    const WaterfillPowers wp = waterfill_powers(b.eigenvalues, static_cast<double>(n) * P, epsilon_floor);
    b.d = wp.d;
    b.theta = wp.theta;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < b.d.size(); ++i) acc += std::log2(1.0 + b.eigenvalues(i) * b.d(i));
    b.first_term = acc / (2.0 * static_cast<double>(n));

    const CovarianceSummary cov{n, spec.k(), b.d.sum(), b.d.minCoeff(), b.d.maxCoeff()};
    const ThresholdReport thr = thresholds(profile, cov, P);
    b.penalty = std::log2(1.0 + thr.eta_n);
    b.delta_n = thr.delta_n;
    b.value = b.first_term - b.penalty - b.delta_n;
    return b;
}

double dbw_to_watts(double dbw) noexcept { return std::pow(10.0, dbw / 10.0); }
double watts_to_dbw(double watts) noexcept { return 10.0 * std::log10(watts); }

} // namespace tvisi

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Water levels, water-filling capacity and the lower bounds on capacity
// under bounded tap uncertainty.

#include "tvisi/linalg.hpp"
#include "tvisi/spectrum.hpp"

#include <cstddef>
#include <optional>

namespace tvisi {

enum class WaterLevel { Theta1, Theta2 };

struct WaterfillSolution {
    double theta = 0.0;
    double I = 0.0;     ///< mean of (theta - |f|^-2)^+
    double d_min = 0.0; ///< (theta - 1/alpha^2)^+
    double d_max = 0.0; ///< (theta - 1/beta^2)^+
    WaterLevel which = WaterLevel::Theta1;
};

/// Fills d_min and d_max from theta.
WaterfillSolution make_solution(const SpectrumProfile& profile, double theta, double I, WaterLevel which);

/// Mean of (theta - |f(w)|^-2)^+. Exact at the two ends: 0 for theta <= 1/beta^2
/// and theta - J for theta >= 1/alpha^2.
double g_integral(const SpectrumProfile& profile, const ChannelSpec& spec, double theta);

/// (1/4pi) * integral of log2 max(theta |f|^2, 1).
double log_integral(const SpectrumProfile& profile, const ChannelSpec& spec, double theta);

WaterfillSolution solve_theta1(const SpectrumProfile& profile, const ChannelSpec& spec, double P);

/// Root of g(theta) = 2 theta - A with A = (2/(k+1)) / ||r||^2.
/// Absent when ||r|| = 0 or when the root would not exceed 1/beta^2.
std::optional<WaterfillSolution> solve_theta2(const SpectrumProfile& profile, const ChannelSpec& spec);

/// Water-filling capacity of the nominal channel in bits per channel use.
double capacity_C0(const SpectrumProfile& profile, const ChannelSpec& spec, double P);

/// Throws BoundInapplicable when the log argument is not positive.
double delta_i(const SpectrumProfile& profile, const WaterfillSolution& solution);

struct BoundReport {
    double P = 0.0;
    double C0 = 0.0;
    double C_LB1 = 0.0;
    double delta1 = 0.0;
    double gap_cor1 = 0.0;
    WaterfillSolution level1;

    std::optional<WaterfillSolution> level2;
    std::optional<double> delta2;     ///< absent with level2 or when its log argument is not positive
    std::optional<double> C_LB2_curve; ///< the level-2 expression regardless of validity
    std::optional<double> C_LB2;      ///< C_LB2_curve when I1 >= I2
    std::optional<double> P_sat;      ///< absent when every radius is zero; may be negative
    std::optional<double> gap_cor2;   ///< absent when the small-radius hypothesis fails
};

BoundReport bound_report(const SpectrumProfile& profile, const ChannelSpec& spec, double P);
BoundReport bound_report(const ChannelSpec& spec, double P, std::size_t grid_size = quadrature::kDefaultPanels);

/// Three-term capacity-loss bound written through r_s alone; r_s overrides the channel's radius sum.
struct PillowTerms {
    double log_term = 0.0;
    double logdet_term = 0.0;
    double saturation_term = 0.0;
    double total = 0.0;
};

PillowTerms pillow_terms(const SpectrumProfile& profile, const ChannelSpec& spec, double P, double r_s);
double pillow_bound(const SpectrumProfile& profile, const ChannelSpec& spec, double P, double r_s);

inline constexpr double kDefaultEpsilonFloor = 1e-12;

struct FiniteNBound {
    std::size_t n = 0;
    Vector eigenvalues; ///< ascending Gram eigenvalues
    Vector d;           ///< powers paired with `eigenvalues`
    double theta = 0.0;
    double first_term = 0.0; ///< (1/2n) sum log2(1 + lambda_i d_i)
    double penalty = 0.0;    ///< log2(1 + (k+1) ||r||^2 sum(d) / (m+n))
    double delta_n = 0.0;
    double value = 0.0;
};

/// Exact water-fill d_i = max(theta - 1/lambda_i, floor) with sum(d) = nP.
struct WaterfillPowers {
    Vector d;
    double theta = 0.0;
};
WaterfillPowers waterfill_powers(const Vector& eigenvalues_ascending, double total_power, double floor);

/// Throws BoundInapplicable when phi1_n >= 1 and std::invalid_argument when n < k+1.
FiniteNBound finite_n_bound(const ChannelSpec& spec, std::size_t n, double P,
                            double epsilon_floor = kDefaultEpsilonFloor,
                            std::size_t grid_size = quadrature::kDefaultPanels);

double dbw_to_watts(double dbw) noexcept;
double watts_to_dbw(double watts) noexcept;

} // namespace tvisi

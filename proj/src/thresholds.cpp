// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/thresholds.hpp"

#include "tvisi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tvisi {

double spread_factor(const SpectrumProfile& profile) noexcept
{
    return profile.r_s * (profile.r_s + 2.0 * profile.beta);
}

EtaThresholds eta_thresholds(const SpectrumProfile& profile, const CovarianceSummary& cov)
{
    const auto n = static_cast<double>(cov.n);
    const auto m = static_cast<double>(cov.m());
    const auto taps = static_cast<double>(cov.k + 1);
    return {taps * profile.norm_r_sq * cov.trace / (m + n), spread_factor(profile) * cov.trace / m};
}

TraceConstants trace_constants(const SpectrumProfile& profile, const CovarianceSummary& cov, double P)
{
    const auto n = static_cast<double>(cov.n);
    const auto m = static_cast<double>(cov.m());
    const auto taps = static_cast<double>(cov.k + 1);
    const double rs4 = std::pow(profile.r_s, 4);
    const double br = profile.beta + profile.r_s;
    return {2.0 * m + 2.0 * n + 8.0 * taps * n * P * profile.norm_r_sq + 2.0 * n * P * rs4 * cov.lambda_max,
            2.0 * m + 4.0 * br * br * n * P + 2.0 * n * P * std::pow(br, 4) * cov.lambda_max};
}

ThresholdReport thresholds(const SpectrumProfile& profile, const CovarianceSummary& cov, double P)
{
    const double q = spread_factor(profile);
    const auto m = static_cast<double>(cov.m());

    ThresholdReport t;
    const EtaThresholds eta = eta_thresholds(profile, cov);
    t.eta_n = eta.eta_n;
    t.eta_prime_n = eta.eta_prime_n;
    t.phi1_n = q * cov.lambda_max / (1.0 + profile.alpha * profile.alpha * cov.lambda_min);
    t.phi2_n = q * cov.trace / m;
    t.phi3_n = 1.0 / (1.0 + q * cov.lambda_max);
    if (t.phi1_n >= 1.0) throw BoundInapplicable("thresholds: phi1_n >= 1, the radii are too large for delta_n");
    t.delta_n = -0.5 * std::log2(1.0 - t.phi1_n)
        + (1.0 - std::max(1.0 - t.phi2_n, 0.0) * t.phi3_n) / (2.0 * std::numbers::ln2);

    const TraceConstants tc = trace_constants(profile, cov, P);
    t.C_n = tc.C_n;
    t.C_prime_n = tc.C_prime_n;
    return t;
}

} // namespace tvisi

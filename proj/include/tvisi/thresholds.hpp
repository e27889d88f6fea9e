// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Finite-n thresholds of the typicality error analysis. They depend on the
// input covariance only through its trace and extreme eigenvalues.

#include "tvisi/spectrum.hpp"

#include <cstddef>

namespace tvisi {

struct CovarianceSummary {
    std::size_t n = 0;
    std::size_t k = 0;
    double trace = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;

    std::size_t m() const noexcept { return n + k; }
};

struct ThresholdReport {
    double eta_n = 0.0;
    double eta_prime_n = 0.0;
    double C_n = 0.0;
    double C_prime_n = 0.0;
    double phi1_n = 0.0;
    double phi2_n = 0.0;
    double phi3_n = 1.0;
    double delta_n = 0.0;
};

/// r_s (r_s + 2 beta): the spread factor shared by every perturbation bound.
double spread_factor(const SpectrumProfile& profile) noexcept;

/// eta_n and eta'_n only; never throws, so it also serves channels where phi1_n >= 1.
struct EtaThresholds {
    double eta_n = 0.0;
    double eta_prime_n = 0.0;
};
EtaThresholds eta_thresholds(const SpectrumProfile& profile, const CovarianceSummary& cov);

/// C_n and C'_n; never throw.
struct TraceConstants {
    double C_n = 0.0;
    double C_prime_n = 0.0;
};
TraceConstants trace_constants(const SpectrumProfile& profile, const CovarianceSummary& cov, double P);

/// All eight quantities. Throws BoundInapplicable when phi1_n >= 1.
ThresholdReport thresholds(const SpectrumProfile& profile, const CovarianceSummary& cov, double P);

} // namespace tvisi

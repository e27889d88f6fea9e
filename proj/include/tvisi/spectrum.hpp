// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Channel description for the time-varying ISI channel
//
//     y_t = sum_{i=0}^{k} h_{t,i} x_{t-i} + z_t,   h_{t,i} in [c_i - r_i, c_i + r_i],
//
// the power spectrum |f(w)|^2 of the tap centres, the banded m x n channel
// matrices (m = n + k) and the Toeplitz Gram matrix H_c^T H_c.

#include "tvisi/linalg.hpp"
#include "tvisi/quadrature.hpp"

#include "json.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tvisi {

class ChannelSpec {
public:
    /// Throws std::invalid_argument unless len(c) == len(r) >= 1, every r_i >= 0,
    /// all values are finite and at least one c_i != 0.
    ChannelSpec(std::vector<double> centres, std::vector<double> radii);

    /// Memory depth.
    std::size_t k() const noexcept { return centres_.size() - 1; }
    std::size_t taps() const noexcept { return centres_.size(); }

    std::span<const double> c() const noexcept { return centres_; }
    std::span<const double> r() const noexcept { return radii_; }
    double c(std::size_t i) const { return centres_.at(i); }
    double r(std::size_t i) const { return radii_.at(i); }

    double radius_sum() const noexcept; ///< r_s
    double norm_c_sq() const noexcept;
    double norm_r_sq() const noexcept;
    bool has_zero_radii() const noexcept;

    /// Copy with every centre multiplied by s (radii unchanged).
    ChannelSpec scaled_centres(double s) const;
    /// Copy with new radii.
    ChannelSpec with_radii(std::vector<double> radii) const;

    /// {"k": k, "c": [...], "r": [...]}
    nlohmann::json to_json() const;
    static ChannelSpec from_json(const nlohmann::json& j);
    static ChannelSpec load(const std::string& path);
    void save(const std::string& path) const;

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;

private:
    std::vector<double> centres_;
    std::vector<double> radii_;
};

struct SpectrumProfile {
    double alpha = 0.0;     ///< min |f|
    double beta = 0.0;      ///< max |f|
    double J = 0.0;         ///< mean of |f|^{-2}
    double J_error = 0.0;   ///< grid-halving estimate of the quadrature error in J
    double r_s = 0.0;
    double norm_c_sq = 0.0;
    double norm_r_sq = 0.0;
    std::size_t panels = quadrature::kDefaultPanels;
};

/// |f(w)|^2 with f(w) = sum_l c_l e^{i l w}.
double eval_f_sq(const ChannelSpec& spec, double omega);

struct SpectrumExtrema {
    double alpha = 0.0;
    double beta = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
};

/// Dense grid scan followed by golden-section refinement of every local extremum.
/// Never throws; alpha may be zero.
SpectrumExtrema compute_extrema(const ChannelSpec& spec, std::size_t grid_size = quadrature::kDefaultPanels);

/// Full profile. grid_size >= 256; throws SpectrumSingular if alpha <= 1e-12 * beta.
SpectrumProfile compute_profile(const ChannelSpec& spec, std::size_t grid_size = quadrature::kDefaultPanels);

/// Extrema and radius norms only; J is left at 0. Never throws, so it serves
/// channels with a spectral null where only beta and r_s matter.
SpectrumProfile compute_norm_profile(const ChannelSpec& spec, std::size_t grid_size = quadrature::kDefaultPanels);

/// m x n banded channel matrix with m = n + k; entry (i, j) is nonzero only for 0 <= i - j <= k.
class BandedChannelMatrix {
public:
    BandedChannelMatrix(std::size_t n, std::size_t k);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t m() const noexcept { return n_ + k_; }

    /// Tap l of output row t (0-based), i.e. entry (t, t - l).
    void set_tap(std::size_t row, std::size_t lag, double value);
    double tap(std::size_t row, std::size_t lag) const;
    /// True when output row t sees input column t - lag.
    bool in_band(std::size_t row, std::size_t lag) const noexcept { return lag <= k_ && row >= lag && row - lag < n_; }

    const Matrix& dense() const noexcept { return entries_; }

private:
    std::size_t n_;
    std::size_t k_;
    Matrix entries_;
};

BandedChannelMatrix build_Hc(const ChannelSpec& spec, std::size_t n);

/// Symmetric Toeplitz H_c^T H_c from its autocorrelation formula.
Matrix gram_matrix(const ChannelSpec& spec, std::size_t n);

struct GramSpectrum {
    Vector eigenvalues;  ///< ascending
    Matrix eigenvectors; ///< columns match `eigenvalues`
};

GramSpectrum gram_spectrum(const ChannelSpec& spec, std::size_t n);
Vector gram_eigenvalues(const ChannelSpec& spec, std::size_t n);

} // namespace tvisi

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Random channel realizations, Gaussian codebooks and the forward model y = Hx + z.
// Every draw is a pure function of (seed, stream, index); see rng.hpp.

#include "tvisi/linalg.hpp"
#include "tvisi/rng.hpp"
#include "tvisi/spectrum.hpp"
#include "tvisi/thresholds.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tvisi {

enum class LawKind { IIDUniform, Constant, BlockHold };

struct ChannelLaw {
    LawKind kind = LawKind::IIDUniform;
    std::vector<double> offsets; ///< Constant: one value in [-1, 1] per tap
    std::size_t block_len = 1;   ///< BlockHold: rows per redraw
    std::uint64_t seed = 0;

    static ChannelLaw iid_uniform(std::uint64_t seed);
    static ChannelLaw constant(std::vector<double> offsets, std::uint64_t seed = 0);
    /// Extension beyond the two extremes: taps are redrawn every block_len rows.
    static ChannelLaw block_hold(std::size_t block_len, std::uint64_t seed);

    /// Throws std::invalid_argument when the law does not fit a channel with `taps` taps.
    void validate(std::size_t taps) const;
};

LawKind parse_law_kind(const std::string& name);
std::string to_string(LawKind kind);

BandedChannelMatrix sample_H(const ChannelSpec& spec, std::size_t n, const ChannelLaw& law, std::uint64_t trial);

/// True when H is banded and every tap lies in [c_l - r_l, c_l + r_l] (plus `slack`).
bool in_channel_range(const ChannelSpec& spec, const BandedChannelMatrix& H, double slack = 0.0);

enum class CovariancePolicy { WhiteISO, WaterfillGram };

/// Sigma = U diag(d) U^T with U orthogonal (columns are directions).
struct CovarianceSpec {
    std::size_t n = 0;
    Matrix basis;
    Vector d;

    double trace() const { return d.sum(); }
    double lambda_min() const { return d.minCoeff(); }
    double lambda_max() const { return d.maxCoeff(); }
    Matrix dense() const;
    /// U diag(sqrt(d)), so that x = factor * g has covariance Sigma.
    Matrix factor() const;
    CovarianceSummary summary(std::size_t k) const;
};

CovarianceSpec build_sigma(const ChannelSpec& spec, std::size_t n, double P, CovariancePolicy policy);

/// Row i is codeword i. Row-major so each codeword is contiguous.
using CodewordMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr unsigned kMaxCodebookBits = 24;

struct Codebook {
    std::size_t n = 0;
    double rate = 0.0;
    unsigned bits = 0;
    std::uint64_t seed = 0;
    CodewordMatrix codewords;

    std::size_t size() const noexcept { return static_cast<std::size_t>(codewords.rows()); }
};

/// ceil(n R), robust to rounding in n R. Throws std::invalid_argument when R < 0.
unsigned codebook_bits(std::size_t n, double rate);

/// 2^ceil(nR) codewords drawn N(0, Sigma). Throws CodebookTooLarge above 2^24.
Codebook gen_codebook(const CovarianceSpec& cov, double rate, std::uint64_t seed);

/// y = H x + noise_scale * z with z ~ N(0, I_m) from the noise stream of `trial`.
/// noise_scale = 0 is a debug mode that yields H x exactly.
Vector transmit(const BandedChannelMatrix& H, const Vector& x, std::uint64_t trial, std::uint64_t seed,
                double noise_scale = 1.0);

/// Standard normal vector of length `len` from the given stream.
Vector standard_normal(std::uint64_t seed, Stream stream, std::uint64_t index, std::size_t len);

} // namespace tvisi

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Joint-typicality decoding against the nominal channel H_c.

#include "tvisi/channel_sim.hpp"
#include "tvisi/linalg.hpp"
#include "tvisi/thresholds.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace tvisi {

struct TypicalParams {
    double epsilon = 0.1;
    double eta = 0.05;
    double eta_prime = 0.05;

    /// epsilon = 0.1, eta = 1.5 eta_n + 0.05, eta' = 1.5 eta'_n + 0.05.
    static TypicalParams defaults(const EtaThresholds& eta);
    void validate() const;

    friend bool operator==(const TypicalParams&, const TypicalParams&) = default;
};

/// Typical set of N(0, Sigma) with the Cholesky factor computed once.
class TypicalSet {
public:
    /// Throws NotPositiveDefinite.
    explicit TypicalSet(const Matrix& sigma);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(llt_.rows()); }
    /// (1/n) a^T Sigma^{-1} a through one triangular solve. Throws DimensionMismatch.
    double statistic(const Vector& a) const;
    /// |statistic - 1| < eta
    bool contains(const Vector& a, double eta) const { return std::abs(statistic(a) - 1.0) < eta; }

private:
    Eigen::LLT<Matrix> llt_;
};

double typicality_statistic(const Vector& a, const Matrix& sigma);
bool is_typical(const Vector& a, const Matrix& sigma, double eta);

struct JointCovariance {
    std::size_t n = 0;
    std::size_t m = 0;
    Matrix xi;      ///< [[S, S Hc^T], [Hc S, I + Hc S Hc^T]]
    Matrix xi_inv;  ///< closed form [[S^-1 + Hc^T Hc, -Hc^T], [-Hc, I]]
    Matrix omega_c; ///< I + Hc S Hc^T
    double log_det_xi = 0.0;
    double log_det_sigma = 0.0;
    double inverse_residual = 0.0; ///< max |xi * xi_inv - I|

    /// |det(xi)/det(sigma) - 1|, evaluated in the log domain.
    double det_relative_gap() const;
};

/// Throws NotPositiveDefinite when Sigma or Xi fails Cholesky, DimensionMismatch on shape errors.
JointCovariance build_joint(const CovarianceSpec& cov, const BandedChannelMatrix& Hc);

enum class DecodeStatus { Unique, None, Ambiguous };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::None;
    std::size_t index = 0; ///< valid when Unique
    std::size_t count = 0; ///< number of indices satisfying both memberships
};

/// Exhaustive decoder over a fixed codebook. Codeword quadratic forms and the
/// nominal channel outputs H_c x_i are computed once at construction.
class TypicalityDecoder {
public:
    TypicalityDecoder(const Codebook& book, const CovarianceSpec& cov, const BandedChannelMatrix& Hc,
                      TypicalParams params);

    std::size_t size() const noexcept { return codeword_stat_.size(); }
    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }
    const TypicalParams& params() const noexcept { return params_; }

    /// (1/n) x_i^T Sigma^{-1} x_i
    double codeword_statistic(std::size_t i) const { return codeword_stat_.at(i); }
    bool codeword_typical(std::size_t i) const { return codeword_ok_.at(i) != 0; }
    /// (1/(m+n)) w_i^T Xi^{-1} w_i with w_i = (x_i, y)
    double joint_statistic(std::size_t i, const Vector& y) const;
    bool matches(std::size_t i, const Vector& y) const;

    DecodeResult decode(const Vector& y) const;

    struct Scan {
        std::size_t matches = 0;
        bool sent_matches = false;
    };
    /// Counts every matching index and whether `sent` is among them.
    Scan scan(const Vector& y, std::size_t sent) const;

private:
    bool joint_ok(std::size_t i, const Vector& y) const;

    std::size_t n_;
    std::size_t m_;
    TypicalParams params_;
    std::vector<double> codeword_stat_;
    std::vector<char> codeword_ok_;
    std::vector<double> quad_x_; ///< x_i^T Sigma^{-1} x_i
    CodewordMatrix hc_x_;        ///< row i is (H_c x_i)^T
};

} // namespace tvisi

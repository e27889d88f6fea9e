// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

// Numerical certification of the matrix inequalities behind the achievability
// argument, and the finite-n evaluation of the converse ceiling.
//
// An inequality lhs <= rhs holds when lhs <= rhs * (1 + 1e-9) + 1e-12.
// Determinant inequalities are compared in the log domain.

#include "tvisi/channel_sim.hpp"
#include "tvisi/linalg.hpp"
#include "tvisi/spectrum.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tvisi {

inline constexpr double kRelativeSlack = 1e-9;
inline constexpr double kAbsoluteSlack = 1e-12;

struct Check {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    /// lhs / rhs for linear checks; det(lhs)/det(rhs) for log-domain checks.
    double ratio = 0.0;
};

Check check_leq(double lhs, double rhs);
/// Both sides are natural logarithms of positive quantities.
Check check_leq_log(double log_lhs, double log_rhs);

struct NormBundle {
    double op_norm = 0.0;
    double fro_norm = 0.0;
    double row_sum_norm = 0.0;
};

double row_sum_norm(const Matrix& m);
NormBundle norms(const Matrix& m);

struct Lemma1Result {
    Check left;  ///< |M1 M2|_F <= |M1| |M2|_F
    Check right; ///< |M1 M2|_F <= |M2| |M1|_F
    bool holds = true;
    double worst_slack = 0.0; ///< min(rhs - lhs)
};

Lemma1Result check_lemma1(const Matrix& m1, const Matrix& m2);

/// Aggregated outcome of one family of checks. Merging is associative.
struct SuiteReport {
    std::string name;
    std::size_t instances = 0;
    std::size_t passed = 0;
    double worst_ratio = 0.0;
    std::size_t worst_instance = 0;
    Check worst; ///< the check with the largest ratio
    std::vector<double> ratios;

    std::size_t violations() const noexcept { return instances - passed; }
    bool all_passed() const noexcept { return passed == instances; }
    void add(const Check& c);
    void merge(const SuiteReport& other);
    nlohmann::json to_json() const;
};

struct BandedNormReport {
    SuiteReport hc_norm; ///< |H_c| <= beta
    SuiteReport e_norm;  ///< |H - H_c| <= r_s
};

BandedNormReport check_banded_norm_bounds(const ChannelSpec& spec, std::size_t n, std::size_t samples,
                                          const ChannelLaw& law);

/// Phi and Psi built explicitly for one realization H.
Matrix build_phi(const Matrix& sigma_sqrt, const Matrix& E);
Matrix build_psi(const Matrix& sigma_sqrt, const Matrix& H, const Matrix& omega_c);
double trace_of_square(const Matrix& m);

struct TraceBoundReport {
    SuiteReport phi; ///< 2 tr(Phi^2) <= C_n
    SuiteReport psi; ///< 2 tr(Psi^2) <= C'_n
};

/// Requires tr(Sigma) <= nP.
TraceBoundReport check_trace_bounds(const ChannelSpec& spec, const CovarianceSpec& cov, double P,
                                    std::size_t samples, const ChannelLaw& law);

struct WeylReport {
    SuiteReport det_m;      ///< det(Omega_H) >= (1 - phi1)^m det(Omega_c)
    SuiteReport det_n;      ///< the sharper exponent n
    SuiteReport eigenvalue; ///< |lambda_i(A) - lambda_i(B)| <= |A - B| on Sigma^{1/2} H^T H Sigma^{1/2}
};

/// Throws BoundInapplicable when phi1_n >= 1.
WeylReport check_weyl_det(const ChannelSpec& spec, const CovarianceSpec& cov, std::size_t samples,
                          const ChannelLaw& law);

/// m (1 - eta')^+ lambda_min(Omega_c Omega_H^{-1}) by a generalized symmetric eigensolve.
double qcqp_min(const Matrix& omega_c, const Matrix& omega_h, double eta_prime);
/// lambda_min of the pencil (Omega_c, Omega_H).
double qcqp_lambda_min(const Matrix& omega_c, const Matrix& omega_h);

struct VolumeResult {
    double log2_exact = 0.0;
    double log2_bound = 0.0;
    double log2_entropy = 0.0; ///< h_G(Sigma) in bits

    double exact() const;
    double bound() const;
    /// (exact / 2^h_G)^(2/n)
    double normalized_ratio(std::size_t n) const;
};

/// Volume of the typical shell and its entropy bound, via log-Gamma. Requires n <= 50.
VolumeResult typical_volume(const Matrix& sigma, double eta);

struct ConverseInput {
    ChannelSpec spec;
    double P = 0.0;
    CodewordMatrix codebook; ///< one codeword per row
};

struct ConverseResult {
    double first_term = 0.0;
    double kappa = 0.0;
    double ceiling = 0.0;
    double x_min = 0.0;
    std::optional<double> specialised; ///< closed form through x_min when x_min > 0
};

/// Throws std::invalid_argument when the codebook exceeds the average power budget.
ConverseResult converse_rate_bound(const ConverseInput& input);

/// Codebook whose symbols are +-sqrt(P) with signs from the codebook stream.
CodewordMatrix constant_magnitude_codebook(std::size_t n, std::size_t size, double P, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Randomized certification runner.

enum class SuiteId : unsigned {
    HcNorm,
    ENorm,
    TracePhi,
    TracePsi,
    WeylDet,
    WeylEigen,
    Qcqp,
    TypicalVolume,
    Lemma1,
    RowSumNorm,
};

inline constexpr unsigned kSuiteCount = 10;

std::string suite_name(SuiteId id);

struct VerifyConfig {
    std::uint64_t seed = 0;
    std::size_t instances = 200;
    std::size_t max_n = 64;
    /// When set, every instance uses this channel instead of a random one.
    std::optional<ChannelSpec> channel;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteReport> suites;

    bool all_passed() const noexcept;
    nlohmann::json to_json() const;
};

/// One randomized instance; a pure function of (config, suite, index).
Check run_instance(const VerifyConfig& config, SuiteId suite, std::size_t index);

VerifyReport run_verification(const VerifyConfig& config);
VerifyReport run_verification_serial(const VerifyConfig& config);

} // namespace tvisi

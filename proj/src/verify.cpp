// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/verify.hpp"

#include "tvisi/errors.hpp"
#include "tvisi/rng.hpp"
#include "tvisi/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tvisi {

Check check_leq(double lhs, double rhs)
{
    Check c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.holds = lhs <= rhs + kRelativeSlack * std::abs(rhs) + kAbsoluteSlack;
    if (rhs != 0.0)
        c.ratio = lhs / rhs;
    else
        c.ratio = lhs <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return c;
}

Check check_leq_log(double log_lhs, double log_rhs)
{
    Check c;
    c.lhs = log_lhs;
    c.rhs = log_rhs;
    c.holds = log_lhs - log_rhs <= kRelativeSlack * std::max(1.0, std::abs(log_rhs));
    c.ratio = std::exp(log_lhs - log_rhs);
    return c;
}

double row_sum_norm(const Matrix& m)
{
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

NormBundle norms(const Matrix& m) { return {operator_norm(m), m.norm(), row_sum_norm(m)}; }

Lemma1Result check_lemma1(const Matrix& m1, const Matrix& m2)
{
    if (m1.cols() != m2.rows()) throw DimensionMismatch("check_lemma1: matrices are not conformable");
    const double prod = (m1 * m2).norm();
    Lemma1Result r;
    r.left = check_leq(prod, operator_norm(m1) * m2.norm());
    r.right = check_leq(prod, operator_norm(m2) * m1.norm());
    r.holds = r.left.holds && r.right.holds;
    r.worst_slack = std::min(r.left.rhs - r.left.lhs, r.right.rhs - r.right.lhs);
    return r;
}

void SuiteReport::add(const Check& c)
{
    if (instances == 0 || c.ratio > worst_ratio) {
        worst_ratio = c.ratio;
        worst_instance = instances;
        worst = c;
    }
    ++instances;
    if (c.holds) ++passed;
    ratios.push_back(c.ratio);
}

void SuiteReport::merge(const SuiteReport& other)
{
    if (other.instances == 0) return;
    if (instances == 0 || other.worst_ratio > worst_ratio) {
        worst_ratio = other.worst_ratio;
        worst_instance = instances + other.worst_instance;
        worst = other.worst;
    }
    instances += other.instances;
    passed += other.passed;
    ratios.insert(ratios.end(), other.ratios.begin(), other.ratios.end());
}

nlohmann::json SuiteReport::to_json() const
{
    return {{"name", name},
            {"instances", instances},
            {"passed", passed},
            {"violations", violations()},
            {"worst_ratio", worst_ratio},
            {"worst_instance", worst_instance},
            {"worst_lhs", worst.lhs},
            {"worst_rhs", worst.rhs},
            {"ratios", ratios}};
}

BandedNormReport check_banded_norm_bounds(const ChannelSpec& spec, std::size_t n, std::size_t samples,
                                          const ChannelLaw& law)
{
    if (samples == 0) throw std::invalid_argument("check_banded_norm_bounds: samples must be >= 1");
    const SpectrumProfile profile = compute_norm_profile(spec);
    const BandedChannelMatrix hc = build_Hc(spec, n);
    BandedNormReport r;
    r.hc_norm.name = "hc_norm";
    r.e_norm.name = "e_norm";
    r.hc_norm.add(check_leq(operator_norm(hc.dense()), profile.beta));
    for (std::size_t s = 0; s < samples; ++s) {
        const BandedChannelMatrix h = sample_H(spec, n, law, s);
        r.e_norm.add(check_leq(operator_norm(h.dense() - hc.dense()), profile.r_s));
    }
    return r;
}

Matrix build_phi(const Matrix& sigma_sqrt, const Matrix& E)
{
    const auto n = sigma_sqrt.rows();
    const auto m = E.rows();
    if (E.cols() != n) throw DimensionMismatch("build_phi: E must be m x n");
    const Matrix es = E * sigma_sqrt;
    Matrix phi(n + m, n + m);
    phi.topLeftCorner(n, n) = Matrix::Identity(n, n) + es.transpose() * es;
    phi.topRightCorner(n, m) = es.transpose();
    phi.bottomLeftCorner(m, n) = es;
    phi.bottomRightCorner(m, m) = Matrix::Identity(m, m);
    return phi;
}

Matrix build_psi(const Matrix& sigma_sqrt, const Matrix& H, const Matrix& omega_c)
{
    const auto n = sigma_sqrt.rows();
    const auto m = H.rows();
    if (H.cols() != n || omega_c.rows() != m) throw DimensionMismatch("build_psi: inconsistent shapes");
    Matrix B(m, n + m);
    B.leftCols(n) = H * sigma_sqrt;
    B.rightCols(m) = Matrix::Identity(m, m);
    Eigen::LLT<Matrix> llt(omega_c);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("build_psi: Omega_c is not positive definite");
    return B.transpose() * llt.solve(B);
}

double trace_of_square(const Matrix& m) { return m.cwiseProduct(m.transpose()).sum(); }

namespace {

void require_budget(const CovarianceSpec& cov, double P, const char* where)
{
    if (cov.trace() > static_cast<double>(cov.n) * P * (1.0 + 1e-12))
        throw std::invalid_argument(std::string(where) + ": tr(Sigma) exceeds nP");
}

Matrix sigma_sqrt_of(const CovarianceSpec& cov) { return cov.basis * cov.d.cwiseSqrt().asDiagonal() * cov.basis.transpose(); }

} // namespace

TraceBoundReport check_trace_bounds(const ChannelSpec& spec, const CovarianceSpec& cov, double P,
                                    std::size_t samples, const ChannelLaw& law)
{
    if (samples == 0) throw std::invalid_argument("check_trace_bounds: samples must be >= 1");
    require_budget(cov, P, "check_trace_bounds");
    const SpectrumProfile profile = compute_norm_profile(spec);
    const TraceConstants tc = trace_constants(profile, cov.summary(spec.k()), P);
    const BandedChannelMatrix hc = build_Hc(spec, cov.n);
    const Matrix s_half = sigma_sqrt_of(cov);
    const Matrix omega_c = Matrix::Identity(static_cast<Eigen::Index>(hc.m()), static_cast<Eigen::Index>(hc.m()))
        + hc.dense() * cov.dense() * hc.dense().transpose();

    TraceBoundReport r;
    r.phi.name = "trace_phi";
    r.psi.name = "trace_psi";
    for (std::size_t s = 0; s < samples; ++s) {
        const Matrix H = sample_H(spec, cov.n, law, s).dense();
        r.phi.add(check_leq(2.0 * trace_of_square(build_phi(s_half, H - hc.dense())), tc.C_n));
        r.psi.add(check_leq(2.0 * trace_of_square(build_psi(s_half, H, omega_c)), tc.C_prime_n));
    }
    return r;
}

WeylReport check_weyl_det(const ChannelSpec& spec, const CovarianceSpec& cov, std::size_t samples,
                          const ChannelLaw& law)
{
    if (samples == 0) throw std::invalid_argument("check_weyl_det: samples must be >= 1");
    const SpectrumProfile profile = compute_norm_profile(spec);
    const double q = spread_factor(profile);
    const double phi1 = q * cov.lambda_max() / (1.0 + profile.alpha * profile.alpha * cov.lambda_min());
    if (phi1 >= 1.0) throw BoundInapplicable("check_weyl_det: phi1_n >= 1");

    const BandedChannelMatrix hc = build_Hc(spec, cov.n);
    const auto m = static_cast<Eigen::Index>(hc.m());
    const Matrix sigma = cov.dense();
    const Matrix s_half = sigma_sqrt_of(cov);
    const double log_det_c = log_det_spd(Matrix::Identity(m, m) + hc.dense() * sigma * hc.dense().transpose());
    const double log_shrink = std::log1p(-phi1);
    const Matrix hc_s = hc.dense() * s_half;
    const Matrix B = hc_s.transpose() * hc_s;
    Eigen::SelfAdjointEigenSolver<Matrix> eig_b(B, Eigen::EigenvaluesOnly);

    WeylReport r;
    r.det_m.name = "weyl_det";
    r.det_n.name = "weyl_det_n";
    r.eigenvalue.name = "weyl_eigen";
    for (std::size_t s = 0; s < samples; ++s) {
        const Matrix H = sample_H(spec, cov.n, law, s).dense();
        const double log_det_h = log_det_spd(Matrix::Identity(m, m) + H * sigma * H.transpose());
        r.det_m.add(check_leq_log(static_cast<double>(hc.m()) * log_shrink + log_det_c, log_det_h));
        r.det_n.add(check_leq_log(static_cast<double>(hc.n()) * log_shrink + log_det_c, log_det_h));

        const Matrix hs = H * s_half;
        const Matrix A = hs.transpose() * hs;
        Eigen::SelfAdjointEigenSolver<Matrix> eig_a(A, Eigen::EigenvaluesOnly);
        const double shift = (eig_a.eigenvalues() - eig_b.eigenvalues()).cwiseAbs().maxCoeff();
        r.eigenvalue.add(check_leq(shift, operator_norm(A - B)));
    }
    return r;
}

double qcqp_lambda_min(const Matrix& omega_c, const Matrix& omega_h)
{
    if (omega_c.rows() != omega_h.rows() || omega_c.rows() != omega_c.cols() || omega_h.rows() != omega_h.cols())
        throw DimensionMismatch("qcqp_lambda_min: matrices must be square and of equal size");
    Eigen::LLT<Matrix> check(omega_h);
    if (check.info() != Eigen::Success) throw NotPositiveDefinite("qcqp_lambda_min: Omega_H is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(omega_c, omega_h, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (ges.info() != Eigen::Success) throw NoConvergence("qcqp_lambda_min: generalized eigensolver failed");
    return ges.eigenvalues()(0);
}

double qcqp_min(const Matrix& omega_c, const Matrix& omega_h, double eta_prime)
{
    const auto m = static_cast<double>(omega_c.rows());
    return m * std::max(1.0 - eta_prime, 0.0) * qcqp_lambda_min(omega_c, omega_h);
}

double VolumeResult::exact() const { return std::exp2(log2_exact); }
double VolumeResult::bound() const { return std::exp2(log2_bound); }

double VolumeResult::normalized_ratio(std::size_t n) const
{
    return std::exp2(2.0 / static_cast<double>(n) * (log2_exact - log2_entropy));
}

VolumeResult typical_volume(const Matrix& sigma, double eta)
{
    const auto n = static_cast<std::size_t>(sigma.rows());
    if (n == 0 || sigma.cols() != sigma.rows()) throw DimensionMismatch("typical_volume: Sigma must be square");
    if (n > 50) throw std::invalid_argument("typical_volume: n must be <= 50");
    if (!(eta > 0.0)) throw std::invalid_argument("typical_volume: eta must be > 0");

    const double dn = static_cast<double>(n);
    const double log2_det = log_det_spd(sigma) / std::numbers::ln2;
    // log2 Vol(E_r) = log2(pi^{n/2} n^{n/2} / Gamma(n/2 + 1)) + log2(det)/2 + (n/2) log2 r
    const double log2_unit = 0.5 * dn * std::log2(std::numbers::pi * dn) - std::lgamma(0.5 * dn + 1.0) / std::numbers::ln2
        + 0.5 * log2_det;
    const double log2_outer = log2_unit + 0.5 * dn * std::log2(1.0 + eta);

    VolumeResult v;
    v.log2_entropy = 0.5 * (dn * std::log2(2.0 * std::numbers::pi * std::numbers::e) + log2_det);
    v.log2_bound = v.log2_entropy + 0.5 * dn * std::log2(1.0 + eta);
    if (eta < 1.0) {
        const double inner_over_outer = std::pow((1.0 - eta) / (1.0 + eta), 0.5 * dn);
        v.log2_exact = log2_outer + std::log1p(-inner_over_outer) / std::numbers::ln2;
    } else {
        v.log2_exact = log2_outer;
    }
    return v;
}

ConverseResult converse_rate_bound(const ConverseInput& input)
{
    const ChannelSpec& spec = input.spec;
    const CodewordMatrix& book = input.codebook;
    if (book.rows() == 0 || book.cols() == 0) throw std::invalid_argument("converse_rate_bound: empty codebook");
    if (!(input.P > 0.0)) throw std::invalid_argument("converse_rate_bound: P must be > 0");
    const auto n = static_cast<std::size_t>(book.cols());
    const auto size = static_cast<double>(book.rows());
    const double mean_energy = book.rowwise().squaredNorm().sum() / size;
    if (mean_energy > static_cast<double>(n) * input.P * (1.0 + 1e-12))
        throw std::invalid_argument("converse_rate_bound: codebook exceeds the average power budget");

    const double taps = static_cast<double>(spec.taps());
    const double gain = 2.0 / (std::numbers::pi * std::numbers::e);
    ConverseResult r;
    r.first_term = 0.5 * std::log2(1.0 + taps * (spec.norm_c_sq() + spec.norm_r_sq() / 3.0) * input.P);

    const std::size_t m = n + spec.k();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < book.rows(); ++i) {
        for (std::size_t t = 0; t < m; ++t) {
            double spread = 0.0;
            for (std::size_t j = 0; j <= spec.k(); ++j) {
                if (t < j || t - j >= n) continue;
                const double x = book(i, static_cast<Eigen::Index>(t - j));
                spread += spec.r(j) * spec.r(j) * x * x;
            }
            acc += 0.5 * std::log2(1.0 + gain * spread);
        }
    }
    r.kappa = acc / (static_cast<double>(n) * size);
    r.ceiling = r.first_term - r.kappa;
    r.x_min = book.cwiseAbs().minCoeff();
    if (r.x_min > 0.0)
        r.specialised = 0.5 * std::log2((1.0 + taps * (spec.norm_c_sq() + spec.norm_r_sq() / 3.0) * input.P)
                                        / (1.0 + gain * spec.norm_r_sq() * r.x_min * r.x_min));
    return r;
}

CodewordMatrix constant_magnitude_codebook(std::size_t n, std::size_t size, double P, std::uint64_t seed)
{
    if (!(P > 0.0)) throw std::invalid_argument("constant_magnitude_codebook: P must be > 0");
    const double amp = std::sqrt(P);
    CodewordMatrix book(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < book.rows(); ++i) {
        StreamRng rng(seed, Stream::Codebook, static_cast<std::uint64_t>(i));
        for (Eigen::Index t = 0; t < book.cols(); ++t) book(i, t) = (rng() >> 63) != 0 ? amp : -amp;
    }
    return book;
}

} // namespace tvisi

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/decoder.hpp"

#include "tvisi/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tvisi {

TypicalParams TypicalParams::defaults(const EtaThresholds& eta)
{
    return {0.1, 1.5 * eta.eta_n + 0.05, 1.5 * eta.eta_prime_n + 0.05};
}

void TypicalParams::validate() const
{
    if (!(epsilon > 0.0) || !(eta > 0.0) || !(eta_prime > 0.0))
        throw std::invalid_argument("TypicalParams: epsilon, eta and eta' must be > 0");
}

TypicalSet::TypicalSet(const Matrix& sigma)
{
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) throw DimensionMismatch("TypicalSet: covariance must be square");
    llt_.compute(sigma);
    if (llt_.info() != Eigen::Success) throw NotPositiveDefinite("TypicalSet: covariance is not positive definite");
}

double TypicalSet::statistic(const Vector& a) const
{
    if (a.size() != llt_.rows()) throw DimensionMismatch("typicality_statistic: vector and covariance sizes differ");
    const Vector v = llt_.matrixL().solve(a);
    return v.squaredNorm() / static_cast<double>(a.size());
}

double typicality_statistic(const Vector& a, const Matrix& sigma)
{
    if (sigma.rows() != a.size()) throw DimensionMismatch("typicality_statistic: vector and covariance sizes differ");
    return TypicalSet(sigma).statistic(a);
}

bool is_typical(const Vector& a, const Matrix& sigma, double eta) { return TypicalSet(sigma).contains(a, eta); }

double JointCovariance::det_relative_gap() const { return std::abs(std::expm1(log_det_xi - log_det_sigma)); }

JointCovariance build_joint(const CovarianceSpec& cov, const BandedChannelMatrix& Hc)
{
    if (Hc.n() != cov.n) throw DimensionMismatch("build_joint: channel and covariance dimensions differ");
    const auto n = static_cast<Eigen::Index>(Hc.n());
    const auto m = static_cast<Eigen::Index>(Hc.m());
    const Matrix sigma = cov.dense();
    const Matrix& hc = Hc.dense();

    Eigen::LLT<Matrix> sigma_llt(sigma);
    if (sigma_llt.info() != Eigen::Success) throw NotPositiveDefinite("build_joint: Sigma is not positive definite");
    const Matrix sigma_inv = sigma_llt.solve(Matrix::Identity(n, n));

    JointCovariance j;
    j.n = Hc.n();
    j.m = Hc.m();
    j.omega_c = Matrix::Identity(m, m) + hc * sigma * hc.transpose();
    j.xi.resize(n + m, n + m);
    j.xi.topLeftCorner(n, n) = sigma;
    j.xi.topRightCorner(n, m) = sigma * hc.transpose();
    j.xi.bottomLeftCorner(m, n) = hc * sigma;
    j.xi.bottomRightCorner(m, m) = j.omega_c;

    j.xi_inv.resize(n + m, n + m);
    j.xi_inv.topLeftCorner(n, n) = sigma_inv + hc.transpose() * hc;
    j.xi_inv.topRightCorner(n, m) = -hc.transpose();
    j.xi_inv.bottomLeftCorner(m, n) = -hc;
    j.xi_inv.bottomRightCorner(m, m) = Matrix::Identity(m, m);

    j.log_det_sigma = log_det_spd(sigma);
    j.log_det_xi = log_det_spd(j.xi);
    j.inverse_residual = (j.xi * j.xi_inv - Matrix::Identity(n + m, n + m)).cwiseAbs().maxCoeff();
    return j;
}

TypicalityDecoder::TypicalityDecoder(const Codebook& book, const CovarianceSpec& cov, const BandedChannelMatrix& Hc,
                                     TypicalParams params)
    : n_(Hc.n()), m_(Hc.m()), params_(params)
{
    params_.validate();
    if (book.n != n_ || cov.n != n_ || static_cast<std::size_t>(book.codewords.cols()) != n_)
        throw DimensionMismatch("TypicalityDecoder: codebook, covariance and channel dimensions differ");
    if (!(cov.d.minCoeff() > 0.0)) throw NotPositiveDefinite("TypicalityDecoder: Sigma has a non-positive eigenvalue");

    // Sigma = U D U^T, so x^T Sigma^{-1} x = |D^{-1/2} U^T x|^2 with the spectral factor.
    const Matrix whiten = cov.d.cwiseSqrt().cwiseInverse().asDiagonal() * cov.basis.transpose();
    const auto size = book.size();
    codeword_stat_.resize(size);
    codeword_ok_.resize(size);
    quad_x_.resize(size);
    hc_x_ = book.codewords * Hc.dense().transpose();
    for (std::size_t i = 0; i < size; ++i) {
        const Vector x = book.codewords.row(static_cast<Eigen::Index>(i)).transpose();
        quad_x_[i] = (whiten * x).squaredNorm();
        codeword_stat_[i] = quad_x_[i] / static_cast<double>(n_);
        codeword_ok_[i] = std::abs(codeword_stat_[i] - 1.0) < params_.epsilon ? 1 : 0;
    }
}

double TypicalityDecoder::joint_statistic(std::size_t i, const Vector& y) const
{
    if (static_cast<std::size_t>(y.size()) != m_) throw DimensionMismatch("joint_statistic: y has the wrong length");
    const auto row = hc_x_.row(static_cast<Eigen::Index>(i));
    return (quad_x_.at(i) + (y.transpose() - row).squaredNorm()) / static_cast<double>(m_ + n_);
}

bool TypicalityDecoder::joint_ok(std::size_t i, const Vector& y) const
{
    if (!codeword_ok_[i]) return false;
    const auto row = hc_x_.row(static_cast<Eigen::Index>(i));
    const double stat = (quad_x_[i] + (y.transpose() - row).squaredNorm()) / static_cast<double>(m_ + n_);
    return std::abs(stat - 1.0) < params_.eta;
}

bool TypicalityDecoder::matches(std::size_t i, const Vector& y) const
{
    if (static_cast<std::size_t>(y.size()) != m_) throw DimensionMismatch("matches: y has the wrong length");
    return joint_ok(i, y);
}

DecodeResult TypicalityDecoder::decode(const Vector& y) const
{
    if (static_cast<std::size_t>(y.size()) != m_) throw DimensionMismatch("decode: y has the wrong length");
    DecodeResult r;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!joint_ok(i, y)) continue;
        if (r.count == 0) r.index = i;
        ++r.count;
    }
    r.status = r.count == 1 ? DecodeStatus::Unique : (r.count == 0 ? DecodeStatus::None : DecodeStatus::Ambiguous);
    return r;
}

TypicalityDecoder::Scan TypicalityDecoder::scan(const Vector& y, std::size_t sent) const
{
    if (static_cast<std::size_t>(y.size()) != m_) throw DimensionMismatch("scan: y has the wrong length");
    Scan s;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!joint_ok(i, y)) continue;
        ++s.matches;
        if (i == sent) s.sent_matches = true;
    }
    return s;
}

} // namespace tvisi

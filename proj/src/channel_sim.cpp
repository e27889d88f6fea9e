// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/channel_sim.hpp"

#include "tvisi/errors.hpp"
#include "tvisi/rng.hpp"
#include "tvisi/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tvisi {

ChannelLaw ChannelLaw::iid_uniform(std::uint64_t seed) { return {LawKind::IIDUniform, {}, 1, seed}; }

ChannelLaw ChannelLaw::constant(std::vector<double> offsets, std::uint64_t seed)
{
    return {LawKind::Constant, std::move(offsets), 1, seed};
}

ChannelLaw ChannelLaw::block_hold(std::size_t block_len, std::uint64_t seed)
{
    return {LawKind::BlockHold, {}, block_len, seed};
}

void ChannelLaw::validate(std::size_t taps) const
{
    if (kind == LawKind::Constant) {
        if (offsets.size() != taps) throw std::invalid_argument("ChannelLaw: need one offset per tap");
        for (double o : offsets)
            if (!(o >= -1.0 && o <= 1.0)) throw std::invalid_argument("ChannelLaw: offsets must lie in [-1, 1]");
    }
    if (kind == LawKind::BlockHold && block_len == 0) throw std::invalid_argument("ChannelLaw: block_len must be > 0");
}

LawKind parse_law_kind(const std::string& name)
{
    if (name == "iid" || name == "IIDUniform") return LawKind::IIDUniform;
    if (name == "constant" || name == "Constant") return LawKind::Constant;
    if (name == "block" || name == "BlockHold") return LawKind::BlockHold;
    throw std::invalid_argument("unknown channel law: " + name);
}

std::string to_string(LawKind kind)
{
    switch (kind) {
    case LawKind::IIDUniform: return "iid";
    case LawKind::Constant: return "constant";
    case LawKind::BlockHold: return "block";
    }
    return "iid";
}

BandedChannelMatrix sample_H(const ChannelSpec& spec, std::size_t n, const ChannelLaw& law, std::uint64_t trial)
{
    law.validate(spec.taps());
    BandedChannelMatrix H(n, spec.k());
    StreamRng rng(law.seed, Stream::ChannelTaps, trial);
    std::vector<double> held(spec.taps(), 0.0);

    for (std::size_t row = 0; row < H.m(); ++row) {
        if (law.kind == LawKind::BlockHold && row % law.block_len == 0)
            for (double& u : held) u = rng.uniform_pm1();
        for (std::size_t lag = 0; lag < spec.taps(); ++lag) {
            if (!H.in_band(row, lag)) continue;
            double u = 0.0;
            switch (law.kind) {
            case LawKind::IIDUniform: u = rng.uniform_pm1(); break;
            case LawKind::Constant: u = law.offsets[lag]; break;
            case LawKind::BlockHold: u = held[lag]; break;
            }
            H.set_tap(row, lag, spec.c(lag) + u * spec.r(lag));
        }
    }
    return H;
}

bool in_channel_range(const ChannelSpec& spec, const BandedChannelMatrix& H, double slack)
{
    if (H.k() != spec.k()) return false;
    const Matrix& a = H.dense();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double v = a(i, j);
            if (i < j || static_cast<std::size_t>(i - j) > spec.k()) {
                if (v != 0.0) return false;
                continue;
            }
            const auto lag = static_cast<std::size_t>(i - j);
            if (std::abs(v - spec.c(lag)) > spec.r(lag) + slack) return false;
        }
    }
    return true;
}

Matrix CovarianceSpec::dense() const { return basis * d.asDiagonal() * basis.transpose(); }

Matrix CovarianceSpec::factor() const { return basis * d.cwiseSqrt().asDiagonal(); }

CovarianceSummary CovarianceSpec::summary(std::size_t k) const
{
    return {n, k, trace(), lambda_min(), lambda_max()};
}

CovarianceSpec build_sigma(const ChannelSpec& spec, std::size_t n, double P, CovariancePolicy policy)
{
    if (n < spec.taps()) throw std::invalid_argument("build_sigma: n must be >= k+1");
    if (!(P > 0.0)) throw std::invalid_argument("build_sigma: P must be > 0");
    const auto dim = static_cast<Eigen::Index>(n);
    CovarianceSpec cov;
    cov.n = n;
    if (policy == CovariancePolicy::WhiteISO) {
        cov.basis = Matrix::Identity(dim, dim);
        cov.d = Vector::Constant(dim, P);
        return cov;
    }
    GramSpectrum gs = gram_spectrum(spec, n);
    cov.d = waterfill_powers(gs.eigenvalues, static_cast<double>(n) * P, kDefaultEpsilonFloor).d;
    cov.basis = std::move(gs.eigenvectors);
    return cov;
}

unsigned codebook_bits(std::size_t n, double rate)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("codebook_bits: rate must be >= 0");
    const double nr = static_cast<double>(n) * rate;
    const double bits = std::ceil(nr - 1e-9 * std::max(1.0, nr));
    return bits > 1e6 ? 1000000u : static_cast<unsigned>(std::max(bits, 0.0));
}

Vector standard_normal(std::uint64_t seed, Stream stream, std::uint64_t index, std::size_t len)
{
    StreamRng rng(seed, stream, index);
    std::normal_distribution<double> normal;
    Vector g(static_cast<Eigen::Index>(len));
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = normal(rng);
    return g;
}

Codebook gen_codebook(const CovarianceSpec& cov, double rate, std::uint64_t seed)
{
    const unsigned bits = codebook_bits(cov.n, rate);
    if (bits > kMaxCodebookBits)
        throw CodebookTooLarge("gen_codebook: 2^" + std::to_string(bits) + " codewords exceeds the 2^24 cap");
    Codebook book;
    book.n = cov.n;
    book.rate = rate;
    book.bits = bits;
    book.seed = seed;
    const auto size = static_cast<Eigen::Index>(std::size_t{1} << bits);
    const auto dim = static_cast<Eigen::Index>(cov.n);
    book.codewords.resize(size, dim);
    const Matrix factor = cov.factor();
    for (Eigen::Index i = 0; i < size; ++i)
        book.codewords.row(i) = (factor * standard_normal(seed, Stream::Codebook, static_cast<std::uint64_t>(i), cov.n))
                                    .transpose();
    return book;
}

Vector transmit(const BandedChannelMatrix& H, const Vector& x, std::uint64_t trial, std::uint64_t seed,
                double noise_scale)
{
    if (static_cast<std::size_t>(x.size()) != H.n())
        throw DimensionMismatch("transmit: codeword length does not match the channel matrix");
    Vector y = H.dense() * x;
    if (noise_scale != 0.0) y += noise_scale * standard_normal(seed, Stream::Noise, trial, H.m());
    return y;
}

} // namespace tvisi

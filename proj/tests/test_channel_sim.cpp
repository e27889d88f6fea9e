// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "oracles.hpp"

#include "tvisi/channel_sim.hpp"
#include "tvisi/errors.hpp"
#include "tvisi/verify.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

using tvisi::ChannelLaw;
using tvisi::ChannelSpec;

TEST_CASE("law parsing and validation")
{
    CHECK(tvisi::parse_law_kind("iid") == tvisi::LawKind::IIDUniform);
    CHECK(tvisi::parse_law_kind("BlockHold") == tvisi::LawKind::BlockHold);
    CHECK(tvisi::to_string(tvisi::LawKind::Constant) == "constant");
    CHECK_THROWS_AS(tvisi::parse_law_kind("rayleigh"), std::invalid_argument);
    CHECK_THROWS_AS(ChannelLaw::constant({1.0, 0.0}).validate(3), std::invalid_argument);
    CHECK_THROWS_AS(ChannelLaw::constant({1.5}).validate(1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelLaw::block_hold(0, 1).validate(1), std::invalid_argument);
}

TEST_CASE("zero radii give the nominal matrix under every law")
{
    const ChannelSpec spec({1.0, 0.5, 0.5}, {0.0, 0.0, 0.0});
    const tvisi::Matrix hc = tvisi::build_Hc(spec, 12).dense();
    for (const ChannelLaw& law : {ChannelLaw::iid_uniform(3), ChannelLaw::constant({1.0, -1.0, 0.5}),
                                  ChannelLaw::block_hold(4, 9)})
        CHECK(tvisi::sample_H(spec, 12, law, 5).dense() == hc);
}

TEST_CASE("constant law adds the radius band")
{
    const auto spec = oracle::example_channel();
    const auto H = tvisi::sample_H(spec, 10, ChannelLaw::constant({1.0, 1.0, 1.0}), 0);
    const auto hc = tvisi::build_Hc(spec, 10);
    for (std::size_t row = 0; row < H.m(); ++row)
        for (std::size_t lag = 0; lag <= spec.k(); ++lag)
            if (H.in_band(row, lag)) CHECK(H.tap(row, lag) == doctest::Approx(hc.tap(row, lag) + spec.r(lag)));
}

TEST_CASE("iid uniform taps: mean and range")
{
    const ChannelSpec spec({0.8, -0.3}, {0.2, 0.1});
    const ChannelLaw law = ChannelLaw::iid_uniform(42);
    const int draws = 10000;
    double sum = 0.0;
    for (int t = 0; t < draws; ++t) {
        const auto H = tvisi::sample_H(spec, 1, law, static_cast<std::uint64_t>(t));
        const double v = H.tap(0, 0);
        CHECK(v >= 0.6);
        CHECK(v <= 1.0);
        sum += v;
    }
    const double sigma = 0.2 / std::sqrt(3.0);
    CHECK(std::abs(sum / draws - 0.8) < 3.0 * sigma / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("every draw lies in the uncertainty set with |E| <= r_s")
{
    const auto spec = ChannelSpec({1.0, -0.4, 0.3}, {0.1, 0.05, 0.2});
    const auto hc = tvisi::build_Hc(spec, 24).dense();
    for (const ChannelLaw& law : {ChannelLaw::iid_uniform(1), ChannelLaw::constant({-1.0, 1.0, -1.0}),
                                  ChannelLaw::block_hold(5, 2)}) {
        for (std::uint64_t t = 0; t < 50; ++t) {
            const auto H = tvisi::sample_H(spec, 24, law, t);
            CHECK(tvisi::in_channel_range(spec, H));
            CHECK(tvisi::operator_norm(H.dense() - hc) <= spec.radius_sum() * (1.0 + 1e-9));
        }
    }
    tvisi::BandedChannelMatrix bad = tvisi::build_Hc(spec, 4);
    bad.set_tap(1, 0, 1.2);
    CHECK_FALSE(tvisi::in_channel_range(spec, bad));
}

TEST_CASE("block law holds the offsets within a block")
{
    const auto spec = ChannelSpec({1.0, 0.5}, {0.2, 0.1});
    const auto H = tvisi::sample_H(spec, 20, ChannelLaw::block_hold(4, 11), 3);
    for (std::size_t row = 1; row < 4; ++row) CHECK(H.tap(row, 0) == H.tap(0, 0));
    CHECK(H.tap(4, 0) != H.tap(0, 0));
}

TEST_CASE("draws are deterministic per (seed, trial)")
{
    const auto spec = oracle::example_channel();
    const ChannelLaw law = ChannelLaw::iid_uniform(5);
    CHECK(tvisi::sample_H(spec, 16, law, 2).dense() == tvisi::sample_H(spec, 16, law, 2).dense());
    CHECK(tvisi::sample_H(spec, 16, law, 2).dense() != tvisi::sample_H(spec, 16, law, 3).dense());
    CHECK(tvisi::standard_normal(1, tvisi::Stream::Noise, 4, 8) == tvisi::standard_normal(1, tvisi::Stream::Noise, 4, 8));
}

TEST_CASE("covariance policies respect the budget")
{
    const auto white = tvisi::build_sigma(oracle::example_channel(), 4, 2.0, tvisi::CovariancePolicy::WhiteISO);
    CHECK(white.d == tvisi::Vector::Constant(4, 2.0));
    CHECK(white.dense() == 2.0 * tvisi::Matrix::Identity(4, 4));

    const auto flat = tvisi::build_sigma(ChannelSpec({1.0}, {0.0}), 8, 3.0, tvisi::CovariancePolicy::WaterfillGram);
    CHECK((flat.d.array() - 3.0).abs().maxCoeff() < 1e-12);

    const auto spec = oracle::example_channel();
    const double P = 0.5;
    const auto wf = tvisi::build_sigma(spec, 64, P, tvisi::CovariancePolicy::WaterfillGram);
    CHECK(wf.trace() == doctest::Approx(64.0 * P).epsilon(1e-12));
    CHECK(wf.trace() <= 64.0 * P * (1.0 + 1e-12));
    const tvisi::Vector lam = tvisi::gram_eigenvalues(spec, 64);
    for (Eigen::Index i = 1; i < wf.d.size(); ++i) {
        CHECK(wf.d(i) >= wf.d(i - 1) - 1e-12);
        CHECK(lam(i) >= lam(i - 1));
    }
    const tvisi::Matrix b = wf.basis.transpose() * wf.basis;
    CHECK((b - tvisi::Matrix::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((wf.factor() * wf.factor().transpose() - wf.dense()).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(tvisi::build_sigma(spec, 2, 1.0, tvisi::CovariancePolicy::WhiteISO), std::invalid_argument);
    CHECK_THROWS_AS(tvisi::build_sigma(spec, 8, 0.0, tvisi::CovariancePolicy::WhiteISO), std::invalid_argument);
}

TEST_CASE("codebook size, cap and determinism")
{
    const auto cov = tvisi::build_sigma(oracle::example_channel(), 16, 1.0, tvisi::CovariancePolicy::WaterfillGram);
    const auto single = tvisi::gen_codebook(cov, 0.0, 1);
    CHECK(single.size() == 1);
    CHECK(single.bits == 0);
    CHECK(tvisi::codebook_bits(16, 0.25) == 4);
    CHECK(tvisi::codebook_bits(10, 0.1) == 1);
    CHECK(tvisi::codebook_bits(3, 0.34) == 2);
    const auto a = tvisi::gen_codebook(cov, 0.25, 9);
    const auto b = tvisi::gen_codebook(cov, 0.25, 9);
    CHECK(a.size() == 16);
    CHECK(a.codewords == b.codewords);
    CHECK(tvisi::gen_codebook(cov, 0.25, 10).codewords != a.codewords);
    CHECK_THROWS_AS(tvisi::gen_codebook(cov, 1.6, 1), tvisi::CodebookTooLarge);
    CHECK_THROWS_AS(tvisi::gen_codebook(cov, -0.1, 1), std::invalid_argument);
}

TEST_CASE("codebook sample covariance matches Sigma")
{
    const ChannelSpec spec({1.0, 0.6}, {0.0, 0.0});
    const auto cov = tvisi::build_sigma(spec, 2, 1.0, tvisi::CovariancePolicy::WaterfillGram);
    const auto book = tvisi::gen_codebook(cov, 8.5, 3); // 2^17 codewords
    REQUIRE(book.size() >= 100000);
    const tvisi::Matrix x = book.codewords;
    const tvisi::Matrix sample = x.transpose() * x / static_cast<double>(x.rows());
    CHECK((sample - cov.dense()).norm() / cov.dense().norm() < 0.01);
}

TEST_CASE("forward model")
{
    const auto spec = oracle::example_channel();
    const auto hc = tvisi::build_Hc(spec, 4);
    tvisi::Vector x(4);
    x << 1.0, -2.0, 0.5, 3.0;
    CHECK(tvisi::transmit(hc, x, 0, 1, 0.0) == hc.dense() * x);
    CHECK_THROWS_AS(tvisi::transmit(hc, tvisi::Vector::Zero(3), 0, 1), tvisi::DimensionMismatch);

    // x = 0: y is pure noise with unit variance
    double sq = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) sq += tvisi::transmit(hc, tvisi::Vector::Zero(4), static_cast<std::uint64_t>(t), 2).squaredNorm();
    CHECK(sq / (trials * 6.0) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(tvisi::transmit(hc, x, 7, 1) == tvisi::transmit(hc, x, 7, 1));
}

TEST_CASE("received energy moment")
{
    const auto spec = ChannelSpec({1.0, 0.5, 0.5}, {0.2, 0.2, 0.2});
    const std::size_t n = 8;
    const auto cov = tvisi::build_sigma(spec, n, 1.0, tvisi::CovariancePolicy::WaterfillGram);
    const tvisi::Matrix sigma = cov.dense();
    const tvisi::Matrix f = cov.factor();
    const ChannelLaw law = ChannelLaw::iid_uniform(4);
    double energy = 0.0, expected = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto H = tvisi::sample_H(spec, n, law, static_cast<std::uint64_t>(t));
        const tvisi::Vector x = f * tvisi::standard_normal(4, tvisi::Stream::Codebook, static_cast<std::uint64_t>(t), n);
        energy += tvisi::transmit(H, x, static_cast<std::uint64_t>(t), 4).squaredNorm();
        expected += static_cast<double>(H.m()) + (H.dense() * sigma * H.dense().transpose()).trace();
    }
    CHECK(energy / expected == doctest::Approx(1.0).epsilon(0.02));
}

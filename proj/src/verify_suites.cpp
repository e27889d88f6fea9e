// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/errors.hpp"
#include "tvisi/rng.hpp"
#include "tvisi/thresholds.hpp"
#include "tvisi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tvisi {

std::string suite_name(SuiteId id)
{
    switch (id) {
    case SuiteId::HcNorm: return "hc_norm";
    case SuiteId::ENorm: return "e_norm";
    case SuiteId::TracePhi: return "trace_phi";
    case SuiteId::TracePsi: return "trace_psi";
    case SuiteId::WeylDet: return "weyl_det";
    case SuiteId::WeylEigen: return "weyl_eigen";
    case SuiteId::Qcqp: return "qcqp";
    case SuiteId::TypicalVolume: return "typical_volume";
    case SuiteId::Lemma1: return "lemma1";
    case SuiteId::RowSumNorm: return "row_sum_norm";
    }
    throw std::invalid_argument("suite_name: unknown suite");
}

bool VerifyReport::all_passed() const noexcept
{
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.all_passed(); });
}

nlohmann::json VerifyReport::to_json() const
{
    nlohmann::json out;
    out["seed"] = seed;
    out["all_passed"] = all_passed();
    out["suites"] = nlohmann::json::array();
    for (const SuiteReport& s : suites) out["suites"].push_back(s.to_json());
    return out;
}

namespace {

class InstanceDraw {
public:
    InstanceDraw(const VerifyConfig& config, SuiteId suite, std::size_t index)
        : config_(config),
          rng_(config.seed, Stream::Verify, (static_cast<std::uint64_t>(suite) << 32) | static_cast<std::uint64_t>(index))
    {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }

    std::size_t integer(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    ChannelSpec channel()
    {
        if (config_.channel) return *config_.channel;
        const std::size_t taps = integer(1, 5);
        std::vector<double> c(taps), r(taps);
        for (std::size_t l = 0; l < taps; ++l) {
            c[l] = rng_.uniform_pm1();
            r[l] = 0.3 * rng_.uniform01();
        }
        if (std::all_of(c.begin(), c.end(), [](double v) { return std::abs(v) < 1e-3; })) c[0] = 1.0;
        return ChannelSpec(std::move(c), std::move(r));
    }

    std::size_t length(const ChannelSpec& spec, std::size_t cap)
    {
        const std::size_t hi = std::max(std::min(config_.max_n, cap), spec.k() + 1);
        return integer(spec.k() + 1, hi);
    }

    ChannelLaw law(std::size_t taps)
    {
        const double pick = rng_.uniform01();
        const std::uint64_t seed = rng_();
        if (pick < 0.5) return ChannelLaw::iid_uniform(seed);
        if (pick < 0.75) {
            std::vector<double> offsets(taps);
            for (double& o : offsets) o = (rng_() >> 63) != 0 ? 1.0 : -1.0;
            return ChannelLaw::constant(std::move(offsets), seed);
        }
        return ChannelLaw::block_hold(integer(1, 8), seed);
    }

    /// Random orthogonal basis and spectrum in (0.05, 1), scaled to trace n * P * u.
    CovarianceSpec covariance(std::size_t n, double P)
    {
        std::normal_distribution<double> normal;
        Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = normal(rng_);
        Eigen::HouseholderQR<Matrix> qr(g);
        CovarianceSpec cov;
        cov.n = n;
        cov.basis = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
        cov.d.resize(g.rows());
        for (Eigen::Index i = 0; i < cov.d.size(); ++i) cov.d(i) = uniform(0.05, 1.0);
        cov.d *= static_cast<double>(n) * P * uniform(0.3, 1.0) / cov.d.sum();
        return cov;
    }

    Matrix matrix(Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> normal;
        Matrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng_);
        return m;
    }

private:
    const VerifyConfig& config_;
    StreamRng rng_;
};

Check worse(const Check& a, const Check& b)
{
    if (a.holds != b.holds) return a.holds ? b : a;
    return b.ratio > a.ratio ? b : a;
}

/// Radii rescaled so that phi1 hits the target; the centres and hence alpha, beta are unchanged.
ChannelSpec with_phi1(const ChannelSpec& spec, const SpectrumProfile& profile, const CovarianceSpec& cov,
                      double target)
{
    if (profile.r_s == 0.0) return spec;
    const double a2 = profile.alpha * profile.alpha;
    const double beta = profile.beta;
    const double r_s = -beta + std::sqrt(beta * beta + target * (1.0 + a2 * cov.lambda_min()) / cov.lambda_max());
    std::vector<double> radii(spec.r().begin(), spec.r().end());
    for (double& r : radii) r *= r_s / profile.r_s;
    return spec.with_radii(std::move(radii));
}

double phi1_of(const SpectrumProfile& profile, const CovarianceSpec& cov)
{
    return spread_factor(profile) * cov.lambda_max() / (1.0 + profile.alpha * profile.alpha * cov.lambda_min());
}

/// Channel and covariance with phi1 < 1: radii rescaled for random channels, Sigma halved for a fixed one.
std::pair<ChannelSpec, CovarianceSpec> weyl_instance(InstanceDraw& draw, bool fixed_channel, std::size_t cap)
{
    ChannelSpec spec = draw.channel();
    const std::size_t n = draw.length(spec, cap);
    CovarianceSpec cov = draw.covariance(n, draw.uniform(0.1, 10.0));
    const double target = draw.uniform(0.01, 0.9);
    SpectrumProfile profile = compute_norm_profile(spec);
    if (!fixed_channel) return {with_phi1(spec, profile, cov, target), std::move(cov)};
    for (int i = 0; i < 200 && phi1_of(profile, cov) >= 0.9; ++i) cov.d *= 0.5;
    return {std::move(spec), std::move(cov)};
}

} // namespace

Check run_instance(const VerifyConfig& config, SuiteId suite, std::size_t index)
{
    InstanceDraw draw(config, suite, index);
    const bool fixed = config.channel.has_value();

    switch (suite) {
    case SuiteId::HcNorm:
    case SuiteId::ENorm: {
        const ChannelSpec spec = draw.channel();
        const std::size_t n = draw.length(spec, 64);
        const ChannelLaw law = draw.law(spec.taps());
        const BandedNormReport r = check_banded_norm_bounds(spec, n, 1, law);
        return suite == SuiteId::HcNorm ? r.hc_norm.worst : r.e_norm.worst;
    }
    case SuiteId::TracePhi:
    case SuiteId::TracePsi: {
        const ChannelSpec spec = draw.channel();
        const std::size_t n = draw.length(spec, 64);
        const double P = draw.uniform(0.1, 10.0);
        const CovarianceSpec cov = draw.covariance(n, P);
        const ChannelLaw law = draw.law(spec.taps());
        const TraceBoundReport r = check_trace_bounds(spec, cov, P, 1, law);
        return suite == SuiteId::TracePhi ? r.phi.worst : r.psi.worst;
    }
    case SuiteId::WeylDet:
    case SuiteId::WeylEigen: {
        auto [spec, cov] = weyl_instance(draw, fixed, 64);
        const ChannelLaw law = draw.law(spec.taps());
        const WeylReport r = check_weyl_det(spec, cov, 1, law);
        return suite == SuiteId::WeylDet ? r.det_m.worst : r.eigenvalue.worst;
    }
    case SuiteId::Qcqp: {
        const ChannelSpec spec = draw.channel();
        const std::size_t n = draw.length(spec, 64);
        const CovarianceSpec cov = draw.covariance(n, draw.uniform(0.1, 10.0));
        const ChannelLaw law = draw.law(spec.taps());
        const double eta_prime = draw.uniform(0.0, 1.5);
        const SpectrumProfile profile = compute_norm_profile(spec);
        const Matrix sigma = cov.dense();
        const Matrix hc = build_Hc(spec, n).dense();
        const Matrix h = sample_H(spec, n, law, 0).dense();
        const auto m = hc.rows();
        const Matrix omega_c = Matrix::Identity(m, m) + hc * sigma * hc.transpose();
        const Matrix omega_h = Matrix::Identity(m, m) + h * sigma * h.transpose();
        const double phi3 = 1.0 / (1.0 + spread_factor(profile) * cov.lambda_max());
        const double floor = static_cast<double>(m) * std::max(1.0 - eta_prime, 0.0) * phi3;
        return check_leq(floor, qcqp_min(omega_c, omega_h, eta_prime));
    }
    case SuiteId::TypicalVolume: {
        const std::size_t n = draw.integer(1, std::min<std::size_t>(config.max_n, 50));
        static constexpr double kEtas[] = {0.1, 0.5, 1.0, 2.0};
        const double eta = kEtas[index % 4];
        const Matrix sigma = draw.covariance(n, draw.uniform(0.1, 10.0)).dense();
        const VolumeResult v = typical_volume(sigma, eta);
        Check c = check_leq_log(v.log2_exact * std::numbers::ln2, v.log2_bound * std::numbers::ln2);
        if (eta >= 1.0) {
            const double dn = static_cast<double>(n);
            const double lower = (1.0 + eta) * std::pow(std::numbers::pi * (dn + 2.0), -1.0 / dn);
            c = worse(c, check_leq(lower, v.normalized_ratio(n)));
        }
        return c;
    }
    case SuiteId::Lemma1: {
        const auto rows = static_cast<Eigen::Index>(draw.integer(1, 16));
        const auto inner = static_cast<Eigen::Index>(draw.integer(1, 16));
        const auto cols = static_cast<Eigen::Index>(draw.integer(1, 16));
        const Lemma1Result r = check_lemma1(draw.matrix(rows, inner), draw.matrix(inner, cols));
        return worse(r.left, r.right);
    }
    case SuiteId::RowSumNorm: {
        const auto rows = static_cast<Eigen::Index>(draw.integer(1, 16));
        const auto cols = static_cast<Eigen::Index>(draw.integer(1, 16));
        const Matrix m = draw.matrix(rows, cols);
        const NormBundle b = norms(m);
        return worse(check_leq(b.op_norm, b.fro_norm),
                     check_leq(b.op_norm * b.op_norm, row_sum_norm(m.transpose() * m)));
    }
    }
    throw std::invalid_argument("run_instance: unknown suite");
}

namespace {

VerifyReport assemble(const VerifyConfig& config, const std::vector<Check>& checks)
{
    VerifyReport report;
    report.seed = config.seed;
    for (unsigned s = 0; s < kSuiteCount; ++s) {
        SuiteReport suite;
        suite.name = suite_name(static_cast<SuiteId>(s));
        for (std::size_t i = 0; i < config.instances; ++i) suite.add(checks[s * config.instances + i]);
        report.suites.push_back(std::move(suite));
    }
    return report;
}

void require_instances(const VerifyConfig& config)
{
    if (config.instances == 0) throw std::invalid_argument("verify: instances must be >= 1");
    if (config.max_n == 0) throw std::invalid_argument("verify: max_n must be >= 1");
}

} // namespace

VerifyReport run_verification_serial(const VerifyConfig& config)
{
    require_instances(config);
    std::vector<Check> checks(kSuiteCount * config.instances);
    for (std::size_t j = 0; j < checks.size(); ++j)
        checks[j] = run_instance(config, static_cast<SuiteId>(j / config.instances), j % config.instances);
    return assemble(config, checks);
}

VerifyReport run_verification(const VerifyConfig& config)
{
    require_instances(config);
    std::vector<Check> checks(kSuiteCount * config.instances);
    std::exception_ptr failure;
    const auto total = static_cast<std::ptrdiff_t>(checks.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t j = 0; j < total; ++j) {
        try {
            const auto u = static_cast<std::size_t>(j);
            checks[u] = run_instance(config, static_cast<SuiteId>(u / config.instances), u % config.instances);
        } catch (...) {
#pragma omp critical(tvisi_verify_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return assemble(config, checks);
}

} // namespace tvisi

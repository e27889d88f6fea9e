// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/experiment.hpp"

#include "tvisi/rng.hpp"
#include "tvisi/thresholds.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tvisi {

WilsonInterval wilson_interval(std::size_t hits, std::size_t trials, double z)
{
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (hits > trials) throw std::invalid_argument("wilson_interval: hits exceed trials");
    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / t;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * t)) / (1.0 + z2 / t);
    const double half = z / (1.0 + z2 / t) * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

double fraction(std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

nlohmann::json interval_json(const WilsonInterval& w) { return {w.lo, w.hi}; }

void require_valid(const ExperimentConfig& config)
{
    if (config.trials == 0) throw std::invalid_argument("run_error_experiment: trials must be >= 1");
    if (config.n == 0) throw std::invalid_argument("run_error_experiment: n must be >= 1");
    if (!(config.P > 0.0)) throw std::invalid_argument("run_error_experiment: P must be > 0");
    if (!(config.noise_scale >= 0.0)) throw std::invalid_argument("run_error_experiment: noise_scale must be >= 0");
}

} // namespace

double ExperimentResult::type1_rate() const { return fraction(type1, trials); }
double ExperimentResult::type2_rate() const { return fraction(type2, trials); }
double ExperimentResult::success_rate() const { return fraction(success, trials); }
double ExperimentResult::error_rate() const { return fraction(errors(), trials); }

nlohmann::json ExperimentResult::to_json() const
{
    return {{"n", n},
            {"R_bits", rate},
            {"bits", bits},
            {"P_W", P},
            {"epsilon", params.epsilon},
            {"eta", params.eta},
            {"eta_prime", params.eta_prime},
            {"trials", trials},
            {"type1", type1},
            {"type2", type2},
            {"success", success},
            {"impostor", impostor},
            {"p_e", error_rate()},
            {"p_e_wilson", interval_json(error_interval())},
            {"type1_wilson", interval_json(type1_interval())},
            {"type2_wilson", interval_json(type2_interval())},
            {"success_wilson", interval_json(success_interval())}};
}

ErrorExperiment::ErrorExperiment(ExperimentConfig config)
    : config_((require_valid(config), std::move(config))),
      cov_(build_sigma(config_.spec, config_.n, config_.P, config_.policy)),
      hc_(build_Hc(config_.spec, config_.n)),
      book_(gen_codebook(cov_, config_.rate, config_.seed)),
      params_(config_.params ? *config_.params : default_params(config_.spec, cov_)),
      decoder_(book_, cov_, hc_, params_)
{
    config_.law.seed = config_.seed;
}

TrialData ErrorExperiment::trial_data(std::size_t t) const
{
    StreamRng msg(config_.seed, Stream::Message, t);
    const std::size_t sent = std::uniform_int_distribution<std::size_t>(0, book_.size() - 1)(msg);
    BandedChannelMatrix H = sample_H(config_.spec, config_.n, config_.law, t);
    Vector x = book_.codewords.row(static_cast<Eigen::Index>(sent)).transpose();
    Vector y = transmit(H, x, t, config_.seed, config_.noise_scale);
    return {t, sent, std::move(H), std::move(x), std::move(y)};
}

ErrorExperiment::TrialOutcome ErrorExperiment::classify(std::size_t t) const
{
    const TrialData d = trial_data(t);
    const TypicalityDecoder::Scan scan = decoder_.scan(d.y, d.sent);

    TrialOutcome out;
    const std::size_t others = scan.matches - (scan.sent_matches ? 1 : 0);
    out.impostor = others > 0;
    if (!scan.sent_matches)
        out.outcome = Outcome::TypeI;
    else if (others > 0)
        out.outcome = Outcome::TypeII;
    return out;
}

ExperimentResult ErrorExperiment::tally(const std::vector<TrialOutcome>& outcomes) const
{
    ExperimentResult r;
    r.n = config_.n;
    r.rate = config_.rate;
    r.bits = book_.bits;
    r.P = config_.P;
    r.params = params_;
    r.trials = outcomes.size();
    for (const TrialOutcome& o : outcomes) {
        switch (o.outcome) {
        case Outcome::Success: ++r.success; break;
        case Outcome::TypeI: ++r.type1; break;
        case Outcome::TypeII: ++r.type2; break;
        }
        if (o.impostor) ++r.impostor;
    }
    return r;
}

ExperimentResult ErrorExperiment::run_serial() const
{
    std::vector<TrialOutcome> outcomes(config_.trials);
    for (std::size_t t = 0; t < config_.trials; ++t) outcomes[t] = classify(t);
    return tally(outcomes);
}

ExperimentResult ErrorExperiment::run() const
{
    std::vector<TrialOutcome> outcomes(config_.trials);
    std::exception_ptr failure;
    const auto total = static_cast<std::ptrdiff_t>(config_.trials);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < total; ++t) {
        try {
            outcomes[static_cast<std::size_t>(t)] = classify(static_cast<std::size_t>(t));
        } catch (...) {
#pragma omp critical(tvisi_experiment_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return tally(outcomes);
}

TypicalParams default_params(const ChannelSpec& spec, const CovarianceSpec& cov)
{
    return TypicalParams::defaults(eta_thresholds(compute_norm_profile(spec), cov.summary(spec.k())));
}

ExperimentResult run_error_experiment_serial(const ExperimentConfig& config)
{
    return ErrorExperiment(config).run_serial();
}

ExperimentResult run_error_experiment(const ExperimentConfig& config) { return ErrorExperiment(config).run(); }

} // namespace tvisi

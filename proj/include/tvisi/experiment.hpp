// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors
#pragma once

// Monte Carlo error experiment for the typicality decoder: one random codebook
// per experiment, a random message, channel draw and noise draw per trial.

#include "tvisi/channel_sim.hpp"
#include "tvisi/decoder.hpp"
#include "tvisi/spectrum.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tvisi {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for `hits` out of `trials`.
WilsonInterval wilson_interval(std::size_t hits, std::size_t trials, double z = kWilsonZ95);

struct ExperimentConfig {
    ChannelSpec spec;
    ChannelLaw law = ChannelLaw::iid_uniform(0);
    std::size_t n = 64;
    double rate = 0.0; ///< bits per channel use
    double P = 1.0;    ///< watts
    std::optional<TypicalParams> params;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    CovariancePolicy policy = CovariancePolicy::WaterfillGram;
    double noise_scale = 1.0;
};

struct ExperimentResult {
    std::size_t n = 0;
    double rate = 0.0;
    unsigned bits = 0;
    double P = 0.0;
    TypicalParams params;
    std::size_t trials = 0;
    std::size_t type1 = 0;    ///< the sent codeword fails the rule
    std::size_t type2 = 0;    ///< the sent codeword passes and another one passes too
    std::size_t success = 0;  ///< only the sent codeword passes
    std::size_t impostor = 0; ///< some other codeword passes, whatever the sent one does

    std::size_t errors() const noexcept { return type1 + type2; }
    double type1_rate() const;
    double type2_rate() const;
    double success_rate() const;
    double error_rate() const;
    WilsonInterval error_interval() const { return wilson_interval(errors(), trials); }
    WilsonInterval type1_interval() const { return wilson_interval(type1, trials); }
    WilsonInterval type2_interval() const { return wilson_interval(type2, trials); }
    WilsonInterval success_interval() const { return wilson_interval(success, trials); }

    nlohmann::json to_json() const;
    friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

/// Decoder parameters used when config.params is empty.
TypicalParams default_params(const ChannelSpec& spec, const CovarianceSpec& cov);

/// Realization of one trial: message index, channel draw, codeword and received vector.
struct TrialData {
    std::size_t trial = 0;
    std::size_t sent = 0;
    BandedChannelMatrix H;
    Vector x;
    Vector y;
};

/// Codebook, covariance and decoder built once; trials are pure functions of their index.
class ErrorExperiment {
public:
    explicit ErrorExperiment(ExperimentConfig config);

    const ExperimentConfig& config() const noexcept { return config_; }
    const CovarianceSpec& covariance() const noexcept { return cov_; }
    const Codebook& codebook() const noexcept { return book_; }
    const TypicalParams& params() const noexcept { return params_; }
    const TypicalityDecoder& decoder() const noexcept { return decoder_; }

    TrialData trial_data(std::size_t t) const;
    ExperimentResult run() const;
    ExperimentResult run_serial() const;

private:
    enum class Outcome : unsigned char { Success, TypeI, TypeII };
    struct TrialOutcome {
        Outcome outcome = Outcome::Success;
        bool impostor = false;
    };

    TrialOutcome classify(std::size_t t) const;
    ExperimentResult tally(const std::vector<TrialOutcome>& outcomes) const;

    ExperimentConfig config_;
    CovarianceSpec cov_;
    BandedChannelMatrix hc_;
    Codebook book_;
    TypicalParams params_;
    TypicalityDecoder decoder_;
};

/// Trials fan out over OpenMP threads; the result does not depend on the thread count.
ExperimentResult run_error_experiment(const ExperimentConfig& config);
ExperimentResult run_error_experiment_serial(const ExperimentConfig& config);

} // namespace tvisi

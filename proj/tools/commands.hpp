// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors
#pragma once

// Subcommands of the tvisi tool. Each command builds its output table from a
// RunConfig, so tests can drive them without a process boundary.

#include "tvisi/channel_sim.hpp"
#include "tvisi/io.hpp"
#include "tvisi/spectrum.hpp"
#include "tvisi/verify.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tvisi::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitRuntimeError = 1,
    kExitConfigError = 2,
    kExitInapplicable = 3,
    kExitVerifyFailed = 4,
};

/// c = (1, 0.5, 0.5), r = (0.001, 0.001, 0.001).
ChannelSpec example_channel();

/// Grid syntax: "a,b,c" (explicit), "start:step:stop" (inclusive),
/// "lin:lo:hi:count" or "log:lo_exp:hi_exp:count" (powers of ten).
/// Throws ConfigError on malformed text; the result need not be increasing.
std::vector<double> parse_grid(const std::string& text);
/// Throws ConfigError unless the grid is nonempty and strictly increasing.
void require_increasing(const std::vector<double>& grid, const std::string& what);

struct RunConfig {
    std::optional<ChannelSpec> channel;
    std::optional<std::vector<double>> powers_dBW;
    std::optional<std::vector<double>> r_s;
    std::vector<std::size_t> n = {64, 128, 256};
    std::optional<double> rate;
    double rate_fraction = 0.25;
    double power_dBW = -10.0;
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    std::string law = "iid";
    std::size_t block_len = 4;
    std::vector<double> offsets;
    std::optional<double> epsilon;
    std::optional<double> eta;
    std::optional<double> eta_prime;
    std::size_t instances = 200;
    std::size_t max_n = 64;
    std::size_t grid = quadrature::kDefaultPanels;
    std::optional<int> threads;
    std::string out;
    std::string dump;

    ChannelSpec channel_or_default() const { return channel ? *channel : example_channel(); }
    ChannelLaw channel_law() const;

    /// Keys mirror the long flag names with '-' replaced by '_'. "channel" is an
    /// inline object or a path to a channel file. Throws ConfigError.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
};

struct TableOutcome {
    CsvTable table;
    std::size_t rows = 0;
    std::size_t inapplicable = 0;

    bool inapplicable_everywhere() const noexcept { return rows > 0 && inapplicable == rows; }
};

/// Default P grid {0, 10, ..., 70} dBW.
TableOutcome cmd_bounds(const RunConfig& config);
/// Default P {10, 20, 30, 40} dBW and r_s in 10^[-6, 0] at 121 points.
TableOutcome cmd_figure1(const RunConfig& config);
/// Default P grid of 101 points on [-10, 70] dBW.
TableOutcome cmd_figure2(const RunConfig& config);
/// One row per block length. Writes per-trial dumps when config.dump is set.
TableOutcome cmd_simulate(const RunConfig& config);
VerifyReport cmd_verify(const RunConfig& config);

/// Full command line, argv[0] included. Never throws; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tvisi::cli

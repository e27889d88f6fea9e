// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "commands.hpp"

#include "tvisi/errors.hpp"
#include "tvisi/experiment.hpp"
#include "tvisi/waterfill.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tvisi::cli {

ChannelSpec example_channel() { return ChannelSpec({1.0, 0.5, 0.5}, {0.001, 0.001, 0.001}); }

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("not a finite number: '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s)
{
    const double v = parse_double(s);
    if (v < 1.0 || v != std::floor(v) || v > 1e7) throw ConfigError("not a positive count: '" + s + "'");
    return static_cast<std::size_t>(v);
}

std::vector<double> spaced(double lo, double hi, std::size_t count)
{
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

} // namespace

std::vector<double> parse_grid(const std::string& text)
{
    if (text.empty()) throw ConfigError("empty grid");
    const std::vector<std::string> colon = split(text, ':');
    if (colon.size() == 4 && (colon[0] == "lin" || colon[0] == "log")) {
        std::vector<double> g = spaced(parse_double(colon[1]), parse_double(colon[2]), parse_count(colon[3]));
        if (colon[0] == "log")
            for (double& v : g) v = std::pow(10.0, v);
        return g;
    }
    if (colon.size() == 3) {
        const double start = parse_double(colon[0]);
        const double step = parse_double(colon[1]);
        const double stop = parse_double(colon[2]);
        if (!(step > 0.0)) throw ConfigError("grid step must be > 0: '" + text + "'");
        const double span = (stop - start) / step;
        if (span < -1e-9 || span > 1e7) throw ConfigError("grid range is empty or too large: '" + text + "'");
        const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        std::vector<double> g(count);
        for (std::size_t i = 0; i < count; ++i) g[i] = start + step * static_cast<double>(i);
        return g;
    }
    if (colon.size() != 1) throw ConfigError("malformed grid: '" + text + "'");
    std::vector<double> g;
    for (const std::string& s : split(text, ',')) g.push_back(parse_double(s));
    return g;
}

void require_increasing(const std::vector<double>& grid, const std::string& what)
{
    if (grid.empty()) throw ConfigError(what + ": grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError(what + ": grid must be strictly increasing");
}

ChannelLaw RunConfig::channel_law() const
{
    switch (parse_law_kind(law)) {
    case LawKind::IIDUniform: return ChannelLaw::iid_uniform(seed);
    case LawKind::BlockHold: return ChannelLaw::block_hold(block_len, seed);
    case LawKind::Constant: {
        std::vector<double> o = offsets;
        if (o.empty()) o.assign(channel_or_default().taps(), 1.0);
        return ChannelLaw::constant(std::move(o), seed);
    }
    }
    throw ConfigError("unknown channel law: " + law);
}

namespace {

std::vector<double> grid_from_json(const nlohmann::json& v, const std::string& key)
{
    if (v.is_string()) return parse_grid(v.get<std::string>());
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ConfigError(key + ": expected an array or grid string");
    return v.get<std::vector<double>>();
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst)
{
    if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take_optional(const nlohmann::json& j, const char* key, std::optional<T>& dst)
{
    if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("channel")) {
            const auto& ch = j.at("channel");
            c.channel = ch.is_string() ? ChannelSpec::load(ch.get<std::string>()) : ChannelSpec::from_json(ch);
        }
        if (j.contains("powers")) c.powers_dBW = grid_from_json(j.at("powers"), "powers");
        if (j.contains("rs")) c.r_s = grid_from_json(j.at("rs"), "rs");
        if (j.contains("n")) {
            c.n.clear();
            for (double v : grid_from_json(j.at("n"), "n")) {
                if (v < 1.0 || v != std::floor(v)) throw ConfigError("n: block lengths must be positive integers");
                c.n.push_back(static_cast<std::size_t>(v));
            }
        }
        take_optional(j, "rate", c.rate);
        take(j, "rate_fraction", c.rate_fraction);
        take(j, "power", c.power_dBW);
        take(j, "trials", c.trials);
        take(j, "seed", c.seed);
        take(j, "law", c.law);
        take(j, "block_len", c.block_len);
        take(j, "offsets", c.offsets);
        take_optional(j, "epsilon", c.epsilon);
        take_optional(j, "eta", c.eta);
        take_optional(j, "eta_prime", c.eta_prime);
        take(j, "instances", c.instances);
        take(j, "max_n", c.max_n);
        take(j, "grid", c.grid);
        take_optional(j, "threads", c.threads);
        take(j, "out", c.out);
        take(j, "dump", c.dump);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return from_json(j);
}

namespace {

std::string cell(double v) { return format_number(v); }
std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<double> powers_or(const RunConfig& config, std::vector<double> fallback)
{
    std::vector<double> g = config.powers_dBW ? *config.powers_dBW : std::move(fallback);
    require_increasing(g, "powers");
    return g;
}

SpectrumProfile profile_of(const ChannelSpec& spec, std::size_t grid)
{
    if (grid < 256) throw ConfigError("grid must be >= 256 panels");
    return compute_profile(spec, grid);
}

std::optional<double> psat_dbw(const BoundReport& r)
{
    if (!r.P_sat || !(*r.P_sat > 0.0)) return std::nullopt;
    return watts_to_dbw(*r.P_sat);
}

} // namespace

TableOutcome cmd_bounds(const RunConfig& config)
{
    const ChannelSpec spec = config.channel_or_default();
    const std::vector<double> powers = powers_or(config, parse_grid("0:10:70"));
    const SpectrumProfile profile = profile_of(spec, config.grid);
    TableOutcome out{CsvTable("bounds", 1,
                              {"P_dBW", "C0", "C_LB1", "C_LB2", "delta1", "delta2", "Psat_dBW", "gap_cor1", "gap_cor2",
                               "P_W", "flag"})};
    for (double p_dbw : powers) {
        const double P = dbw_to_watts(p_dbw);
        ++out.rows;
        try {
            const BoundReport r = bound_report(profile, spec, P);
            const std::optional<double> psat = psat_dbw(r);
            const bool near = psat && std::abs(p_dbw - *psat) <= 0.05;
            out.table.add_row({cell(p_dbw), cell(r.C0), cell(r.C_LB1), cell(r.C_LB2), cell(r.delta1), cell(r.delta2),
                               cell(psat), cell(r.gap_cor1), cell(r.gap_cor2), cell(P), near ? "near_psat" : "ok"});
        } catch (const BoundInapplicable&) {
            ++out.inapplicable;
            out.table.add_row({cell(p_dbw), cell(capacity_C0(profile, spec, P)), "", "", "", "", "", "", "", cell(P),
                               "inapplicable"});
        }
    }
    return out;
}

TableOutcome cmd_figure1(const RunConfig& config)
{
    const ChannelSpec spec = config.channel_or_default();
    const std::vector<double> powers = powers_or(config, {10.0, 20.0, 30.0, 40.0});
    const std::vector<double> radii = config.r_s ? *config.r_s : parse_grid("log:-6:0:121");
    require_increasing(radii, "rs");
    if (radii.front() < 0.0) throw ConfigError("rs: radius sums must be >= 0");
    const SpectrumProfile profile = profile_of(spec, config.grid);
    TableOutcome out{CsvTable("figure1", 1,
                              {"P_dBW", "r_s", "log_term", "logdet_term", "saturation_term", "total", "rs_knee", "P_W",
                               "flag"})};
    for (double p_dbw : powers) {
        const double P = dbw_to_watts(p_dbw);
        // r_s (r_s + 2 beta) P = 1
        const double knee = -profile.beta + std::sqrt(profile.beta * profile.beta + 1.0 / P);
        for (double r_s : radii) {
            ++out.rows;
            try {
                const PillowTerms t = pillow_terms(profile, spec, P, r_s);
                out.table.add_row({cell(p_dbw), cell(r_s), cell(t.log_term), cell(t.logdet_term),
                                   cell(t.saturation_term), cell(t.total), cell(knee), cell(P), "ok"});
            } catch (const BoundInapplicable&) {
                ++out.inapplicable;
                out.table.add_row({cell(p_dbw), cell(r_s), "", "", "", "", cell(knee), cell(P), "inapplicable"});
            }
        }
    }
    return out;
}

TableOutcome cmd_figure2(const RunConfig& config)
{
    const ChannelSpec spec = config.channel_or_default();
    const std::vector<double> powers = powers_or(config, parse_grid("lin:-10:70:101"));
    const SpectrumProfile profile = profile_of(spec, config.grid);
    TableOutcome out{CsvTable("figure2", 1, {"P_dBW", "C0", "C_LB1", "C_LB2", "C_LB2_valid", "Psat_dBW", "P_W", "flag"})};
    for (double p_dbw : powers) {
        const double P = dbw_to_watts(p_dbw);
        ++out.rows;
        try {
            const BoundReport r = bound_report(profile, spec, P);
            const std::optional<double> psat = psat_dbw(r);
            const bool near = psat && std::abs(p_dbw - *psat) <= 0.05;
            out.table.add_row({cell(p_dbw), cell(r.C0), cell(r.C_LB1), cell(r.delta2 ? r.C_LB2_curve : std::nullopt),
                               r.C_LB2 ? "1" : "0", cell(psat), cell(P), near ? "near_psat" : "ok"});
        } catch (const BoundInapplicable&) {
            ++out.inapplicable;
            out.table.add_row({cell(p_dbw), cell(capacity_C0(profile, spec, P)), "", "", "0", "", cell(P),
                               "inapplicable"});
        }
    }
    return out;
}

TableOutcome cmd_simulate(const RunConfig& config)
{
    const ChannelSpec spec = config.channel_or_default();
    if (config.n.empty()) throw ConfigError("n: at least one block length is required");
    for (std::size_t i = 1; i < config.n.size(); ++i)
        if (config.n[i] <= config.n[i - 1]) throw ConfigError("n: block lengths must be strictly increasing");
    if (config.trials == 0) throw ConfigError("trials must be >= 1");
    const double P = dbw_to_watts(config.power_dBW);

    double rate = 0.0;
    if (config.rate) {
        rate = *config.rate;
    } else {
        if (!(config.rate_fraction >= 0.0)) throw ConfigError("rate_fraction must be >= 0");
        rate = config.rate_fraction * bound_report(profile_of(spec, config.grid), spec, P).C_LB1;
    }
    if (!(rate >= 0.0)) throw ConfigError("rate must be >= 0");

    std::optional<TypicalParams> params;
    if (config.epsilon || config.eta || config.eta_prime) {
        if (!(config.epsilon && config.eta && config.eta_prime))
            throw ConfigError("epsilon, eta and eta_prime must be given together");
        params = TypicalParams{*config.epsilon, *config.eta, *config.eta_prime};
        params->validate();
    }

    std::ofstream dump;
    if (!config.dump.empty()) {
        dump.open(config.dump, std::ios::binary);
        if (!dump) throw ConfigError("cannot open dump file: " + config.dump);
    }

    TableOutcome out{CsvTable("simulate", 1,
                              {"n", "R_bits", "P_dBW", "trials", "type1", "type2", "success", "wilson_lo", "wilson_hi",
                               "p_e", "impostor", "bits", "P_W"})};
    for (std::size_t n : config.n) {
        ExperimentConfig ec{spec, config.channel_law(), n, rate, P, params, config.trials, config.seed};
        const ErrorExperiment experiment(std::move(ec));
        const ExperimentResult r = experiment.run();
        const WilsonInterval w = r.error_interval();
        ++out.rows;
        out.table.add_row({std::to_string(n), cell(rate), cell(config.power_dBW), std::to_string(r.trials),
                           cell(r.type1_rate()), cell(r.type2_rate()), cell(r.success_rate()), cell(w.lo), cell(w.hi),
                           cell(r.error_rate()), cell(static_cast<double>(r.impostor) / static_cast<double>(r.trials)),
                           std::to_string(r.bits), cell(P)});
        if (dump.is_open()) {
            for (std::size_t t = 0; t < config.trials; ++t) {
                TrialData d = experiment.trial_data(t);
                write_dump(dump, {n, spec.k(), t, d.H.dense(), std::move(d.x), std::move(d.y)});
            }
        }
    }
    if (dump.is_open() && !dump) throw ConfigError("failed writing dump file: " + config.dump);
    return out;
}

VerifyReport cmd_verify(const RunConfig& config)
{
    VerifyConfig vc;
    vc.seed = config.seed;
    vc.instances = config.instances;
    vc.max_n = config.max_n;
    vc.channel = config.channel;
    if (vc.instances == 0) throw ConfigError("instances must be >= 1");
    if (vc.max_n == 0) throw ConfigError("max_n must be >= 1");
    return run_verification(vc);
}

namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << text;
    if (!f) throw ConfigError("failed writing output file: " + path);
}

std::string render(const CsvTable& table)
{
    std::ostringstream s;
    table.write(s);
    return s.str();
}

std::vector<double> parse_list(const std::string& text, const std::string& what)
{
    try {
        std::vector<double> v;
        for (const std::string& s : split(text, ',')) v.push_back(parse_double(s));
        return v;
    } catch (const ConfigError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

struct Flags {
    std::string config, out, dump, channel, c, r, powers, rs, n, law, offsets;
    std::uint64_t seed = 0;
    int threads = 0;
    std::size_t grid = 0, trials = 0, instances = 0, max_n = 0, block_len = 0;
    double rate = 0, rate_fraction = 0, power = 0, epsilon = 0, eta = 0, eta_prime = 0;
};

RunConfig resolve(const CLI::App& app, const Flags& f)
{
    RunConfig c = f.config.empty() ? RunConfig{} : RunConfig::load(f.config);
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--channel")) c.channel = ChannelSpec::load(f.channel);
    if (given("--c") || given("--r")) {
        if (!given("--c")) throw ConfigError("--r requires --c");
        const std::vector<double> centres = parse_list(f.c, "--c");
        std::vector<double> radii = given("--r") ? parse_list(f.r, "--r") : std::vector<double>(centres.size(), 0.0);
        try {
            c.channel = ChannelSpec(centres, std::move(radii));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (given("--powers")) c.powers_dBW = parse_grid(f.powers);
    if (given("--rs")) c.r_s = parse_grid(f.rs);
    if (given("--n")) {
        c.n.clear();
        for (double v : parse_grid(f.n)) {
            if (v < 1.0 || v != std::floor(v)) throw ConfigError("--n: block lengths must be positive integers");
            c.n.push_back(static_cast<std::size_t>(v));
        }
    }
    if (given("--seed")) c.seed = f.seed;
    if (given("--threads")) c.threads = f.threads;
    if (given("--grid")) c.grid = f.grid;
    if (given("--out")) c.out = f.out;
    if (given("--dump")) c.dump = f.dump;
    if (given("--rate")) c.rate = f.rate;
    if (given("--rate-fraction")) {
        c.rate_fraction = f.rate_fraction;
        if (!given("--rate")) c.rate.reset();
    }
    if (given("--power")) c.power_dBW = f.power;
    if (given("--trials")) c.trials = f.trials;
    if (given("--law")) c.law = f.law;
    if (given("--block-len")) c.block_len = f.block_len;
    if (given("--offsets")) c.offsets = parse_list(f.offsets, "--offsets");
    if (given("--epsilon")) c.epsilon = f.epsilon;
    if (given("--eta")) c.eta = f.eta;
    if (given("--eta-prime")) c.eta_prime = f.eta_prime;
    if (given("--instances")) c.instances = f.instances;
    if (given("--max-n")) c.max_n = f.max_n;
    try {
        (void)c.channel_law();
        c.channel_law().validate(c.channel_or_default().taps());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

int finish_table(const TableOutcome& t, const RunConfig& c, std::ostream& out, std::ostream& err)
{
    emit(c.out, render(t.table), out);
    if (t.inapplicable_everywhere()) {
        err << "tvisi: bound inapplicable at every grid point\n";
        return kExitInapplicable;
    }
    if (t.inapplicable > 0) err << "tvisi: bound inapplicable at " << t.inapplicable << " of " << t.rows << " rows\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Capacity bounds and decoder experiments for ISI channels with bounded tap uncertainty", "tvisi"};
    app.require_subcommand(1, 1);
    Flags f;
    app.add_option("--config", f.config, "JSON run configuration; flags override its keys")->check(CLI::ExistingFile);
    app.add_option("--out", f.out, "output path (default stdout)");
    app.add_option("--seed", f.seed, "master RNG seed");
    app.add_option("--threads", f.threads, "worker threads (default: hardware parallelism)")->check(CLI::PositiveNumber);
    app.add_option("--grid", f.grid, "quadrature panels for spectral integrals");
    app.add_option("--channel", f.channel, "channel file {\"k\", \"c\", \"r\"}")->check(CLI::ExistingFile);
    app.add_option("--c", f.c, "tap centres, comma separated");
    app.add_option("--r", f.r, "tap radii, comma separated");
    app.add_option("--powers", f.powers, "P grid in dBW");
    app.add_option("--rs", f.rs, "r_s grid for figure1");
    app.add_option("--n", f.n, "block lengths for simulate");
    app.add_option("--rate", f.rate, "code rate in bits per channel use");
    app.add_option("--rate-fraction", f.rate_fraction, "code rate as a fraction of C_LB1 (default 0.25)");
    app.add_option("--power", f.power, "transmit power in dBW for simulate (default -10)");
    app.add_option("--trials", f.trials, "Monte Carlo trials per block length");
    app.add_option("--law", f.law, "channel law: iid, constant or block");
    app.add_option("--block-len", f.block_len, "hold length for the block law");
    app.add_option("--offsets", f.offsets, "per-tap offsets in [-1, 1] for the constant law");
    app.add_option("--epsilon", f.epsilon, "decoder epsilon");
    app.add_option("--eta", f.eta, "input typicality slack");
    app.add_option("--eta-prime", f.eta_prime, "joint typicality slack");
    app.add_option("--instances", f.instances, "randomized instances per verify suite");
    app.add_option("--max-n", f.max_n, "largest block length in verify suites");
    app.add_option("--dump", f.dump, "binary (H, x, y) dump path for simulate");
    app.fallthrough();

    CLI::App* bounds = app.add_subcommand("bounds", "C0, C_LB1, C_LB2 and gap bounds over a P grid");
    CLI::App* figure1 = app.add_subcommand("figure1", "three-term capacity-loss bound against r_s");
    CLI::App* figure2 = app.add_subcommand("figure2", "C0 and both lower bounds against P");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo error experiment of the typicality decoder");
    CLI::App* verify = app.add_subcommand("verify", "randomized certification of the matrix inequalities");
    for (CLI::App* sub : {bounds, figure1, figure2, simulate, verify}) sub->fallthrough();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "tvisi: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const RunConfig config = resolve(app, f);
#ifdef _OPENMP
        if (config.threads) omp_set_num_threads(*config.threads);
#endif
        if (bounds->parsed()) return finish_table(cmd_bounds(config), config, out, err);
        if (figure1->parsed()) return finish_table(cmd_figure1(config), config, out, err);
        if (figure2->parsed()) return finish_table(cmd_figure2(config), config, out, err);
        if (simulate->parsed()) return finish_table(cmd_simulate(config), config, out, err);
        const VerifyReport report = cmd_verify(config);
        emit(config.out, report.to_json().dump(2) + "\n", out);
        for (const SuiteReport& s : report.suites)
            err << s.name << ": " << s.passed << "/" << s.instances << " worst ratio " << format_number(s.worst_ratio)
                << "\n";
        return report.all_passed() ? kExitOk : kExitVerifyFailed;
    } catch (const ConfigError& e) {
        err << "tvisi: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "tvisi: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const BoundInapplicable& e) {
        err << "tvisi: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const std::exception& e) {
        err << "tvisi: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

} // namespace tvisi::cli

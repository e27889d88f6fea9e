// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "commands.hpp"

#include "tvisi/errors.hpp"
#include "tvisi/io.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace tvisi::cli;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "tvisi");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::vector<std::string>>& rows, const std::string& name)
{
    for (std::size_t i = 0; i < rows.at(0).size(); ++i)
        if (rows[0][i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

} // namespace

TEST_CASE("grid parsing")
{
    CHECK(parse_grid("1,2,3.5") == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(parse_grid("0:10:30") == std::vector<double>{0.0, 10.0, 20.0, 30.0});
    CHECK(parse_grid("0:0.1:0.3").size() == 4);
    const auto lin = parse_grid("lin:-10:70:101");
    CHECK(lin.size() == 101);
    CHECK(lin.front() == -10.0);
    CHECK(lin.back() == 70.0);
    const auto lg = parse_grid("log:-2:0:3");
    CHECK(lg[0] == doctest::Approx(0.01));
    CHECK(lg[2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_grid(""), tvisi::ConfigError);
    CHECK_THROWS_AS(parse_grid("1,x"), tvisi::ConfigError);
    CHECK_THROWS_AS(parse_grid("0:0:5"), tvisi::ConfigError);
    CHECK_THROWS_AS(parse_grid("5:1:0"), tvisi::ConfigError);
    CHECK_THROWS_AS(parse_grid("1:2"), tvisi::ConfigError);
    CHECK_THROWS_AS(require_increasing({1.0, 1.0}, "powers"), tvisi::ConfigError);
    CHECK_THROWS_AS(require_increasing({}, "powers"), tvisi::ConfigError);
}

TEST_CASE("config file keys and flag precedence")
{
    const auto c = RunConfig::from_json(nlohmann::json::parse(
        R"({"channel": {"c": [1, 0.2], "r": [0.01, 0.01]}, "powers": "0:5:10", "seed": 9, "n": [16, 32], "trials": 7})"));
    REQUIRE(c.channel.has_value());
    CHECK(c.channel->k() == 1);
    CHECK(*c.powers_dBW == std::vector<double>{0.0, 5.0, 10.0});
    CHECK(c.seed == 9);
    CHECK(c.n == std::vector<std::size_t>{16, 32});
    CHECK(c.trials == 7);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"seed": "x"})")), tvisi::ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"n": [1.5]})")), tvisi::ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"([1])")), tvisi::ConfigError);

    const std::string path = "test_cli_config.json";
    {
        std::ofstream f(path);
        f << R"({"powers": [0, 10], "channel": {"c": [1], "r": [0]}})";
    }
    const Run from_file = invoke({"bounds", "--config", path});
    CHECK(from_file.code == 0);
    CHECK(parse_csv(from_file.out).size() == 3);
    const Run overridden = invoke({"bounds", "--config", path, "--powers", "0,10,20"});
    CHECK(parse_csv(overridden.out).size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("bounds command")
{
    const Run r = invoke({"bounds"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("#schema=bounds/v1:P_dBW,C0,C_LB1,C_LB2,delta1,delta2,Psat_dBW,gap_cor1,gap_cor2,P_W,flag\n", 0) == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 9);
    const std::size_t lb1 = column(rows, "C_LB1");
    double peak = -1.0;
    std::size_t peak_row = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][lb1]);
        if (v > peak) {
            peak = v;
            peak_row = i;
        }
    }
    CHECK(peak_row > 1);
    CHECK(peak_row < rows.size() - 1);
    CHECK(std::stod(rows.back()[lb1]) < peak);

    const Run near = invoke({"bounds", "--powers", "53.47"});
    const auto nrows = parse_csv(near.out);
    CHECK(nrows[1][column(nrows, "flag")] == "near_psat");
    CHECK(std::stod(nrows[1][column(nrows, "Psat_dBW")]) == doctest::Approx(53.4678).epsilon(1e-5));

    const Run clean = invoke({"bounds", "--c", "1,0.5,0.5", "--r", "0,0,0"});
    const auto crows = parse_csv(clean.out);
    for (std::size_t i = 1; i < crows.size(); ++i)
        CHECK(std::abs(std::stod(crows[i][column(crows, "C0")]) - std::stod(crows[i][column(crows, "C_LB1")])) < 1e-10);

    CHECK(invoke({"bounds"}).out == r.out);
}

TEST_CASE("inapplicable rows and exit codes")
{
    const Run all = invoke({"bounds", "--c", "1,0.5,0.5", "--r", "0.5,0.5,0.5", "--powers", "30,40"});
    CHECK(all.code == kExitInapplicable);
    const auto rows = parse_csv(all.out);
    CHECK(rows.size() == 3);
    CHECK(rows[1][column(rows, "flag")] == "inapplicable");
    CHECK_FALSE(rows[1][column(rows, "C0")].empty());

    CHECK(invoke({"bounds", "--powers", "10,0"}).code == kExitConfigError);
    CHECK(invoke({"bounds", "--bogus"}).code == kExitConfigError);
    CHECK(invoke({}).code == kExitConfigError);
    CHECK(invoke({"render"}).code == kExitConfigError);
    CHECK(invoke({"bounds", "--config", "no/such.json"}).code == kExitConfigError);
    CHECK(invoke({"bounds", "--r", "0.1"}).code == kExitConfigError);
    CHECK(invoke({"bounds", "--c", "1,2", "--r", "0.1"}).code == kExitConfigError);
    CHECK(invoke({"simulate", "--law", "rayleigh"}).code == kExitConfigError);
    CHECK(invoke({"bounds", "--help"}).code == kExitOk);
}

TEST_CASE("figure commands")
{
    const Run f1 = invoke({"figure1", "--powers", "10,20", "--rs", "0,1e-4,1e-2"});
    REQUIRE(f1.code == 0);
    const auto rows = parse_csv(f1.out);
    REQUIRE(rows.size() == 7);
    CHECK(std::stod(rows[1][column(rows, "total")]) == 0.0);
    const double knee = std::stod(rows[1][column(rows, "rs_knee")]);
    CHECK(knee * (knee + 4.0) * 10.0 == doctest::Approx(1.0));

    const Run f2 = invoke({"figure2"});
    REQUIRE(f2.code == 0);
    const auto r2 = parse_csv(f2.out);
    CHECK(r2.size() == 102);
    const std::size_t clb2 = column(r2, "C_LB2");
    const std::size_t valid = column(r2, "C_LB2_valid");
    for (std::size_t i = 1; i < r2.size(); ++i) {
        CHECK(r2[i][clb2] == r2[1][clb2]);
        CHECK((r2[i][valid] == "1") == (std::stod(r2[i][0]) >= 53.4678162320958));
    }
}

TEST_CASE("simulate command and trial dump")
{
    const std::string dump = "test_cli_dump.bin";
    const std::string csv = "test_cli_sim.csv";
    const Run r = invoke({"simulate", "--n", "16,32", "--trials", "6", "--power", "0", "--rate", "0.1", "--dump", dump,
                          "--out", csv, "--threads", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(csv);
    std::stringstream text;
    text << in.rdbuf();
    const auto rows = parse_csv(text.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "n");
    CHECK(rows[1][0] == "16");
    CHECK(rows[1][column(rows, "trials")] == "6");
    CHECK(rows[1][column(rows, "bits")] == "2");
    const auto records = tvisi::read_dump_file(dump);
    CHECK(records.size() == 12);
    CHECK(records.front().n == 16);
    CHECK(records.back().n == 32);
    CHECK(records.back().trial == 5);
    std::remove(dump.c_str());
    std::remove(csv.c_str());

    const Run again = invoke({"simulate", "--n", "16", "--trials", "6", "--power", "0", "--rate", "0.1", "--seed", "3"});
    CHECK(again.out == invoke({"simulate", "--n", "16", "--trials", "6", "--power", "0", "--rate", "0.1", "--seed", "3"}).out);
    CHECK(invoke({"simulate", "--n", "16", "--trials", "2", "--eta", "0.1"}).code == kExitConfigError);
}

TEST_CASE("verify command")
{
    const Run r = invoke({"verify", "--instances", "5", "--max-n", "12", "--seed", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["seed"] == 2);
    CHECK(j["all_passed"] == true);
    CHECK(j["suites"].size() == tvisi::kSuiteCount);
    CHECK(j["suites"][0]["instances"] == 5);
    CHECK(invoke({"verify", "--instances", "0"}).code == kExitConfigError);
}

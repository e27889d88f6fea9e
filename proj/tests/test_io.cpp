// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/errors.hpp"
#include "tvisi/io.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>

using tvisi::Matrix;
using tvisi::Vector;

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 53.4678162320958}) {
        const std::string s = tvisi::format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(tvisi::format_number(0.1) == "0.1");
    CHECK(tvisi::format_number(NAN) == "nan");
    CHECK(tvisi::format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV table layout")
{
    tvisi::CsvTable t("bounds", 1, {"P_dBW", "C0"});
    t.add_row({"0", "0.5"});
    t.add_row({"10", "1.5"});
    CHECK(t.rows() == 2);
    std::ostringstream out;
    t.write(out);
    CHECK(out.str() == "#schema=bounds/v1:P_dBW,C0\nP_dBW,C0\n0,0.5\n10,1.5\n");
    CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
    CHECK_THROWS_AS(tvisi::CsvTable("x", 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(t.write(std::string("no/such/dir/out.csv")), tvisi::ConfigError);
}

namespace {

tvisi::TrialDump sample_record(std::uint64_t trial)
{
    tvisi::TrialDump d;
    d.n = 3;
    d.k = 1;
    d.trial = trial;
    d.H = Matrix::Zero(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) d.H(i, j) = 10.0 * i + j + 0.25;
    d.x = Vector::LinSpaced(3, -1.0, 1.0);
    d.y = Vector::LinSpaced(4, 0.5, 2.0);
    return d;
}

} // namespace

TEST_CASE("trial dump round trip and layout")
{
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    tvisi::write_dump(buf, sample_record(7));
    tvisi::write_dump(buf, sample_record(8));
    const std::string bytes = buf.str();
    const std::size_t record = 32 + 8 * (12 + 3 + 4);
    CHECK(bytes.size() == 2 * record);
    CHECK(bytes.compare(0, 8, "TVISIDMP") == 0);
    CHECK(static_cast<unsigned char>(bytes[8]) == 3);  // n, little-endian
    CHECK(static_cast<unsigned char>(bytes[16]) == 1); // k
    CHECK(static_cast<unsigned char>(bytes[24]) == 7); // trial
    double first = 0.0;
    std::memcpy(&first, bytes.data() + 32, 8);
    CHECK(first == 0.25);
    double second = 0.0; // row-major: H(0, 1)
    std::memcpy(&second, bytes.data() + 40, 8);
    CHECK(second == 1.25);

    const auto a = tvisi::read_dump(buf);
    const auto b = tvisi::read_dump(buf);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == sample_record(7));
    CHECK(*b == sample_record(8));
    CHECK_FALSE(tvisi::read_dump(buf).has_value());
}

TEST_CASE("trial dump errors")
{
    auto bad = sample_record(0);
    bad.x = Vector::Zero(2);
    std::ostringstream sink;
    CHECK_THROWS_AS(tvisi::write_dump(sink, bad), tvisi::DimensionMismatch);

    std::istringstream foreign(std::string("NOTADUMP") + std::string(24, '\0'));
    CHECK_THROWS_AS(tvisi::read_dump(foreign), tvisi::ConfigError);

    std::stringstream buf;
    tvisi::write_dump(buf, sample_record(1));
    std::istringstream truncated(buf.str().substr(0, 60));
    CHECK_THROWS_AS(tvisi::read_dump(truncated), tvisi::ConfigError);
    CHECK_THROWS_AS(tvisi::read_dump_file("no/such/file.bin"), tvisi::ConfigError);
}

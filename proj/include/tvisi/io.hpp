// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors
#pragma once

#include "tvisi/linalg.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tvisi {

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

/// CSV table whose first line is `#schema=<name>/v<version>:<col>,<col>,...`.
class CsvTable {
public:
    CsvTable(std::string schema, unsigned version, std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_.size(); }

    /// Throws std::invalid_argument when the cell count differs from the column count.
    void add_row(std::vector<std::string> cells);

    std::string schema_line() const;
    void write(std::ostream& out) const;
    /// Writes to `path`, or to stdout when path is empty or "-".
    void write(const std::string& path) const;

private:
    std::string schema_;
    unsigned version_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// 8-byte magic of a trial dump record.
inline constexpr char kDumpMagic[8] = {'T', 'V', 'I', 'S', 'I', 'D', 'M', 'P'};

/// One (H, x, y) record: a 32-byte header (magic, n, k, trial as little-endian
/// u64) followed by H (m x n row-major), x (n) and y (m) as little-endian float64.
struct TrialDump {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t trial = 0;
    Matrix H;
    Vector x;
    Vector y;

    friend bool operator==(const TrialDump& a, const TrialDump& b)
    {
        return a.n == b.n && a.k == b.k && a.trial == b.trial && a.H == b.H && a.x == b.x && a.y == b.y;
    }
};

/// Throws DimensionMismatch when the shapes disagree with (n, k).
void write_dump(std::ostream& out, const TrialDump& record);
/// Returns nullopt at a clean end of stream; throws ConfigError on a truncated or foreign record.
std::optional<TrialDump> read_dump(std::istream& in);
std::vector<TrialDump> read_dump_file(const std::string& path);

} // namespace tvisi

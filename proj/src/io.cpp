// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/io.hpp"

#include "tvisi/errors.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace tvisi {

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::string schema, unsigned version, std::vector<std::string> columns)
    : schema_(std::move(schema)), version_(version), columns_(std::move(columns))
{
    if (columns_.empty()) throw std::invalid_argument("CsvTable: at least one column is required");
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) + " cells, expected "
                                    + std::to_string(columns_.size()));
    rows_.push_back(std::move(cells));
}

namespace {

void join(std::ostream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << cells[i];
    }
    out << '\n';
}

} // namespace

std::string CsvTable::schema_line() const
{
    std::string line = "#schema=" + schema_ + "/v" + std::to_string(version_) + ":";
    for (std::size_t i = 0; i < columns_.size(); ++i) line += (i > 0 ? "," : "") + columns_[i];
    return line;
}

void CsvTable::write(std::ostream& out) const
{
    out << schema_line() << '\n';
    join(out, columns_);
    for (const auto& row : rows_) join(out, row);
}

void CsvTable::write(const std::string& path) const
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    write(out);
    if (!out) throw ConfigError("failed writing output file: " + path);
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint64_t to_little(std::uint64_t v)
{
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xffU);
    return r;
}

void put_u64(std::ostream& out, std::uint64_t v)
{
    const std::uint64_t le = to_little(v);
    out.write(reinterpret_cast<const char*>(&le), sizeof le);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

bool get_u64(std::istream& in, std::uint64_t& v)
{
    std::uint64_t le = 0;
    if (!in.read(reinterpret_cast<char*>(&le), sizeof le)) return false;
    v = to_little(le);
    return true;
}

double get_f64(std::istream& in)
{
    std::uint64_t bits = 0;
    if (!get_u64(in, bits)) throw ConfigError("trial dump: truncated payload");
    return std::bit_cast<double>(bits);
}

} // namespace

void write_dump(std::ostream& out, const TrialDump& record)
{
    const auto n = static_cast<Eigen::Index>(record.n);
    const auto m = static_cast<Eigen::Index>(record.n + record.k);
    if (record.H.rows() != m || record.H.cols() != n || record.x.size() != n || record.y.size() != m)
        throw DimensionMismatch("write_dump: shapes do not match (n, k)");
    out.write(kDumpMagic, sizeof kDumpMagic);
    put_u64(out, record.n);
    put_u64(out, record.k);
    put_u64(out, record.trial);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) put_f64(out, record.H(i, j));
    for (Eigen::Index j = 0; j < n; ++j) put_f64(out, record.x(j));
    for (Eigen::Index i = 0; i < m; ++i) put_f64(out, record.y(i));
}

std::optional<TrialDump> read_dump(std::istream& in)
{
    char magic[sizeof kDumpMagic];
    in.read(magic, sizeof magic);
    if (in.gcount() == 0 && in.eof()) return std::nullopt;
    if (in.gcount() != static_cast<std::streamsize>(sizeof magic) || std::memcmp(magic, kDumpMagic, sizeof magic) != 0)
        throw ConfigError("trial dump: bad magic");
    TrialDump r;
    if (!get_u64(in, r.n) || !get_u64(in, r.k) || !get_u64(in, r.trial)) throw ConfigError("trial dump: truncated header");
    if (r.n == 0 || r.n > (1U << 20) || r.k > (1U << 20)) throw ConfigError("trial dump: implausible dimensions");
    const auto n = static_cast<Eigen::Index>(r.n);
    const auto m = static_cast<Eigen::Index>(r.n + r.k);
    r.H.resize(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) r.H(i, j) = get_f64(in);
    r.x.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) r.x(j) = get_f64(in);
    r.y.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) r.y(i) = get_f64(in);
    return r;
}

std::vector<TrialDump> read_dump_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open trial dump: " + path);
    std::vector<TrialDump> out;
    while (auto rec = read_dump(in)) out.push_back(std::move(*rec));
    return out;
}

} // namespace tvisi

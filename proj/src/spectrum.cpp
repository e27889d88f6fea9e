// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/spectrum.hpp"

#include "tvisi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace tvisi {

ChannelSpec::ChannelSpec(std::vector<double> centres, std::vector<double> radii)
    : centres_(std::move(centres)), radii_(std::move(radii))
{
    if (centres_.empty()) throw std::invalid_argument("ChannelSpec: at least one tap is required");
    if (centres_.size() != radii_.size())
        throw std::invalid_argument("ChannelSpec: centres and radii must have the same length");
    for (double c : centres_)
        if (!std::isfinite(c)) throw std::invalid_argument("ChannelSpec: non-finite tap centre");
    for (double r : radii_)
        if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("ChannelSpec: radii must be finite and >= 0");
    if (std::all_of(centres_.begin(), centres_.end(), [](double c) { return c == 0.0; }))
        throw std::invalid_argument("ChannelSpec: all tap centres are zero");
}

double ChannelSpec::radius_sum() const noexcept { return std::accumulate(radii_.begin(), radii_.end(), 0.0); }

double ChannelSpec::norm_c_sq() const noexcept
{
    return std::inner_product(centres_.begin(), centres_.end(), centres_.begin(), 0.0);
}

double ChannelSpec::norm_r_sq() const noexcept
{
    return std::inner_product(radii_.begin(), radii_.end(), radii_.begin(), 0.0);
}

bool ChannelSpec::has_zero_radii() const noexcept
{
    return std::all_of(radii_.begin(), radii_.end(), [](double r) { return r == 0.0; });
}

ChannelSpec ChannelSpec::scaled_centres(double s) const
{
    std::vector<double> c = centres_;
    for (double& v : c) v *= s;
    return {std::move(c), radii_};
}

ChannelSpec ChannelSpec::with_radii(std::vector<double> radii) const { return {centres_, std::move(radii)}; }

nlohmann::json ChannelSpec::to_json() const { return {{"k", k()}, {"c", centres_}, {"r", radii_}}; }

ChannelSpec ChannelSpec::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("c"))
        throw std::invalid_argument("ChannelSpec: JSON object with key \"c\" expected");
    auto c = j.at("c").get<std::vector<double>>();
    std::vector<double> r = j.contains("r") ? j.at("r").get<std::vector<double>>() : std::vector<double>(c.size(), 0.0);
    if (j.contains("k") && j.at("k").get<std::size_t>() + 1 != c.size())
        throw std::invalid_argument("ChannelSpec: \"k\" does not match the number of taps");
    return {std::move(c), std::move(r)};
}

ChannelSpec ChannelSpec::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("ChannelSpec: cannot open " + path);
    return from_json(nlohmann::json::parse(in));
}

void ChannelSpec::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("ChannelSpec: cannot write " + path);
    out << to_json().dump(2) << '\n';
}

double eval_f_sq(const ChannelSpec& spec, double omega)
{
    double re = 0.0;
    double im = 0.0;
    const auto c = spec.c();
    for (std::size_t l = 0; l < c.size(); ++l) {
        const double phase = static_cast<double>(l) * omega;
        re += c[l] * std::cos(phase);
        im += c[l] * std::sin(phase);
    }
    return re * re + im * im;
}

namespace {

// Golden-section search for an extremum of g on [a, b]; sign = +1 minimizes, -1 maximizes.
template <class G>
double golden_section(G&& g, double a, double b, double sign, double rel_tol)
{
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = sign * g(x1);
    double f2 = sign * g(x2);
    const double tol = rel_tol * std::max(1.0, std::abs(a) + std::abs(b));
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = sign * g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = sign * g(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

SpectrumExtrema compute_extrema(const ChannelSpec& spec, std::size_t grid_size)
{
    if (grid_size < 3) throw std::invalid_argument("compute_extrema: grid too small");
    const double h = quadrature::kTwoPi / static_cast<double>(grid_size);
    std::vector<double> vals(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) vals[i] = eval_f_sq(spec, h * static_cast<double>(i));

    const auto fsq = [&](double w) { return eval_f_sq(spec, w); };
    double best_min = vals[0], best_max = vals[0];
    double arg_min = 0.0, arg_max = 0.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double prev = vals[(i + grid_size - 1) % grid_size];
        const double next = vals[(i + 1) % grid_size];
        const double centre = h * static_cast<double>(i);
        if (vals[i] < best_min) {
            best_min = vals[i];
            arg_min = centre;
        }
        if (vals[i] > best_max) {
            best_max = vals[i];
            arg_max = centre;
        }
        if (vals[i] <= prev && vals[i] <= next) {
            const double w = golden_section(fsq, centre - h, centre + h, 1.0, 1e-10);
            const double v = fsq(w);
            if (v < best_min) {
                best_min = v;
                arg_min = w;
            }
        }
        if (vals[i] >= prev && vals[i] >= next) {
            const double w = golden_section(fsq, centre - h, centre + h, -1.0, 1e-10);
            const double v = fsq(w);
            if (v > best_max) {
                best_max = v;
                arg_max = w;
            }
        }
    }
    const auto wrap = [](double w) {
        w = std::fmod(w, quadrature::kTwoPi);
        return w < 0.0 ? w + quadrature::kTwoPi : w;
    };
    return {std::sqrt(std::max(best_min, 0.0)), std::sqrt(best_max), wrap(arg_min), wrap(arg_max)};
}

SpectrumProfile compute_profile(const ChannelSpec& spec, std::size_t grid_size)
{
    if (grid_size < 256) throw std::invalid_argument("compute_profile: grid_size must be >= 256");
    const SpectrumExtrema ext = compute_extrema(spec, grid_size);
    if (ext.alpha <= 1e-12 * ext.beta)
        throw SpectrumSingular("compute_profile: |f| vanishes on the unit circle; J is infinite");

    SpectrumProfile p;
    p.alpha = ext.alpha;
    p.beta = ext.beta;
    const auto est = quadrature::periodic_mean_estimate([&](double w) { return 1.0 / eval_f_sq(spec, w); }, grid_size);
    p.J = est.value;
    p.J_error = est.error;
    p.r_s = spec.radius_sum();
    p.norm_c_sq = spec.norm_c_sq();
    p.norm_r_sq = spec.norm_r_sq();
    p.panels = grid_size;
    return p;
}

SpectrumProfile compute_norm_profile(const ChannelSpec& spec, std::size_t grid_size)
{
    const SpectrumExtrema ext = compute_extrema(spec, grid_size);
    SpectrumProfile p;
    p.alpha = ext.alpha;
    p.beta = ext.beta;
    p.J = 0.0;
    p.J_error = 0.0;
    p.r_s = spec.radius_sum();
    p.norm_c_sq = spec.norm_c_sq();
    p.norm_r_sq = spec.norm_r_sq();
    p.panels = grid_size;
    return p;
}

BandedChannelMatrix::BandedChannelMatrix(std::size_t n, std::size_t k) : n_(n), k_(k), entries_(Matrix::Zero(n + k, n))
{
    if (n == 0) throw std::invalid_argument("BandedChannelMatrix: n must be positive");
}

void BandedChannelMatrix::set_tap(std::size_t row, std::size_t lag, double value)
{
    if (!in_band(row, lag)) throw std::out_of_range("BandedChannelMatrix: entry outside the band");
    entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(row - lag)) = value;
}

double BandedChannelMatrix::tap(std::size_t row, std::size_t lag) const
{
    if (!in_band(row, lag)) throw std::out_of_range("BandedChannelMatrix: entry outside the band");
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(row - lag));
}

BandedChannelMatrix build_Hc(const ChannelSpec& spec, std::size_t n)
{
    BandedChannelMatrix hc(n, spec.k());
    for (std::size_t row = 0; row < hc.m(); ++row)
        for (std::size_t lag = 0; lag <= spec.k(); ++lag)
            if (hc.in_band(row, lag)) hc.set_tap(row, lag, spec.c(lag));
    return hc;
}

Matrix gram_matrix(const ChannelSpec& spec, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("gram_matrix: n must be positive");
    const std::size_t k = spec.k();
    const auto c = spec.c();
    std::vector<double> acf(k + 1, 0.0);
    for (std::size_t d = 0; d <= k; ++d)
        for (std::size_t l = 0; l + d <= k; ++l) acf[d] += c[l] * c[l + d];

    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            if (d <= k) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acf[d];
        }
    }
    return g;
}

GramSpectrum gram_spectrum(const ChannelSpec& spec, std::size_t n)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_matrix(spec, n));
    if (es.info() != Eigen::Success) throw NoConvergence("gram_spectrum: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Vector gram_eigenvalues(const ChannelSpec& spec, std::size_t n)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_matrix(spec, n), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NoConvergence("gram_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

} // namespace tvisi

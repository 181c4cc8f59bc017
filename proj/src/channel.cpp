// SPDX-License-Identifier: Apache-2.0
//
// fddmimo - support-aware downlink training simulator for FDD massive MIMO
// Copyright (C) 2026 The fddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fddmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fddmimo
{

using cx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// ---------- ScatteringProfile ----------

ScatteringProfile::ScatteringProfile(const std::vector<ScatteringCluster> &clusters, double theta_max)
{
    std::vector<double> edges;
    for (const auto &c : clusters)
    {
        if (!std::isfinite(c.lo) || !std::isfinite(c.hi) || !std::isfinite(c.density))
            throw std::invalid_argument("ScatteringProfile: non-finite cluster");
        if (!(c.lo < c.hi))
            throw std::invalid_argument("ScatteringProfile: cluster needs lo < hi");
        if (c.density < 0.0)
            throw std::invalid_argument("ScatteringProfile: negative density");
        if (c.lo < -theta_max - 1e-12 || c.hi > theta_max + 1e-12)
            throw std::invalid_argument("ScatteringProfile: cluster [" + std::to_string(c.lo) + ", " +
                                        std::to_string(c.hi) + ") leaves the angular range");
        edges.push_back(c.lo);
        edges.push_back(c.hi);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    for (std::size_t e = 0; e + 1 < edges.size(); ++e)
    {
        const double lo = edges[e], hi = edges[e + 1];
        const double mid = 0.5 * (lo + hi);
        double density = 0.0;
        for (const auto &c : clusters)
            if (c.lo <= mid && mid < c.hi)
                density += c.density;
        if (density <= 0.0)
            continue;
        if (!clusters_.empty() && clusters_.back().hi == lo && clusters_.back().density == density)
            clusters_.back().hi = hi;
        else
            clusters_.push_back({lo, hi, density});
    }
    validate(theta_max);
}

ScatteringProfile ScatteringProfile::unchecked(std::vector<ScatteringCluster> clusters)
{
    ScatteringProfile p;
    p.clusters_ = std::move(clusters);
    return p;
}

ScatteringProfile ScatteringProfile::uniform_clusters(const AngleSet &intervals, double theta_max)
{
    std::vector<ScatteringCluster> clusters;
    for (const auto &iv : intervals)
        clusters.push_back({iv.lo, iv.hi, 1.0});
    return ScatteringProfile(clusters, theta_max).scaled_to_unit_power();
}

double ScatteringProfile::total_power() const
{
    double sum = 0.0;
    for (const auto &c : clusters_)
        sum += c.density * (c.hi - c.lo);
    return sum;
}

double ScatteringProfile::power_in(double a, double b) const
{
    double sum = 0.0;
    for (const auto &c : clusters_)
    {
        const double lo = std::max(a, c.lo);
        const double hi = std::min(b, c.hi);
        if (hi > lo)
            sum += c.density * (hi - lo);
    }
    return sum;
}

AngleSet ScatteringProfile::support() const
{
    AngleSet out;
    for (const auto &c : clusters_)
        if (c.density > 0.0)
            out.push_back({c.lo, c.hi});
    return merge_intervals(std::move(out));
}

ScatteringProfile ScatteringProfile::scaled_to_unit_power() const
{
    const double total = total_power();
    if (!(total > 0.0))
        throw std::invalid_argument("ScatteringProfile: cannot normalize a profile with zero power");
    ScatteringProfile out = *this;
    for (auto &c : out.clusters_)
        c.density /= total;
    return out;
}

void ScatteringProfile::validate(double theta_max) const
{
    for (std::size_t i = 0; i < clusters_.size(); ++i)
    {
        const auto &c = clusters_[i];
        if (!(c.lo < c.hi) || c.density < 0.0 || !std::isfinite(c.density))
            throw std::invalid_argument("ScatteringProfile: malformed cluster");
        if (c.lo < -theta_max - 1e-12 || c.hi > theta_max + 1e-12)
            throw std::invalid_argument("ScatteringProfile: cluster leaves the angular range");
        if (i > 0 && clusters_[i - 1].hi > c.lo)
            throw std::invalid_argument("ScatteringProfile: clusters overlap");
    }
    if (!(total_power() > 0.0))
        throw std::invalid_argument("ScatteringProfile: total power must be positive");
}

// ---------- SupportSet ----------

SupportSet::SupportSet(std::vector<std::size_t> indices, Band band, std::size_t antennas)
    : indices_(std::move(indices)), band_(band), antennas_(antennas)
{
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && indices_.back() >= antennas_)
        throw std::out_of_range("SupportSet: index " + std::to_string(indices_.back()) + " outside [0, " +
                                std::to_string(antennas_) + ")");
}

bool SupportSet::contains(std::size_t index) const
{
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool SupportSet::includes(const SupportSet &other) const
{
    return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end());
}

std::size_t SupportSet::excess_over(const SupportSet &other) const
{
    std::size_t n = 0;
    for (auto i : indices_)
        if (!other.contains(i))
            ++n;
    return n;
}

// ---------- primitives ----------

arma::cx_vec array_response(const SystemConfig &cfg, double theta, Band band)
{
    if (!(std::abs(theta) <= cfg.theta_max * (1.0 + 1e-12)))
        throw std::domain_error("array_response: angle " + std::to_string(theta) + " outside the array range");
    const double phase_step = 2.0 * pi * cfg.spatial_frequency(band) * std::sin(theta);
    arma::cx_vec a(cfg.antennas);
    for (arma::uword l = 0; l < a.n_elem; ++l)
        a(l) = std::polar(1.0, phase_step * static_cast<double>(l));
    return a;
}

arma::cx_mat dft_matrix(std::size_t M)
{
    if (M < 1)
        throw std::invalid_argument("dft_matrix: M must be >= 1");
    // phase = pi * k (2l - M) / M, reduced modulo 2M in integer arithmetic
    const long long m = static_cast<long long>(M);
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    arma::cx_mat F(M, M);
    for (long long l = 0; l < m; ++l)
        for (long long k = 0; k < m; ++k)
        {
            long long num = (k * (2 * l - m)) % (2 * m);
            if (num < 0)
                num += 2 * m;
            F(k, l) = std::polar(scale, pi * static_cast<double>(num) / static_cast<double>(m));
        }
    return F;
}

double dirichlet_kernel(double psi, std::size_t M)
{
    // D_M(psi + n) = (-1)^(n (M - 1)) D_M(psi): evaluate near zero, where the ratio is well conditioned
    const double n = std::round(psi);
    const double r = psi - n;
    const bool flip = std::fmod(std::abs(n), 2.0) == 1.0 && (M - 1) % 2 != 0;
    const double den = std::sin(pi * r);
    const double value = std::abs(den) < 1e-15 ? static_cast<double>(M)
                                                : std::sin(pi * r * static_cast<double>(M)) / den;
    return flip ? -value : value;
}

double beam_offset(const SystemConfig &cfg, Band band, std::size_t index, double theta)
{
    const double M = static_cast<double>(cfg.antennas);
    return cfg.spatial_frequency(band) * std::sin(theta) - static_cast<double>(index) / M + 0.5;
}

AngleSet beam_interval(const SystemConfig &cfg, Band band, std::size_t index)
{
    const double M = static_cast<double>(cfg.antennas);
    const double alpha = cfg.spatial_frequency(band);
    const double s_max = std::sin(cfg.theta_max);
    const double shift = static_cast<double>(index) / M - 0.5;

    // psi = alpha s - shift; |psi - n| <= 1/M  <=>  s in [(n + shift - 1/M)/alpha, (n + shift + 1/M)/alpha]
    const long long n_lo = static_cast<long long>(std::floor(-alpha * s_max - shift)) - 1;
    const long long n_hi = static_cast<long long>(std::ceil(alpha * s_max - shift)) + 1;

    AngleSet out;
    for (long long n = n_lo; n <= n_hi; ++n)
    {
        const double s_lo = std::max(-s_max, (static_cast<double>(n) + shift - 1.0 / M) / alpha);
        const double s_hi = std::min(s_max, (static_cast<double>(n) + shift + 1.0 / M) / alpha);
        if (s_lo <= s_hi)
            out.push_back({std::asin(s_lo), std::asin(s_hi)});
    }
    return merge_intervals(std::move(out));
}

AngleGrid make_angle_grid(const SystemConfig &cfg, const ScatteringProfile &profile)
{
    const std::size_t G = cfg.grid();
    AngleGrid grid;
    grid.step = 2.0 * cfg.theta_max / static_cast<double>(G);
    grid.theta.set_size(G);
    grid.cell_power.set_size(G);
    for (std::size_t g = 0; g < G; ++g)
    {
        const double lo = -cfg.theta_max + static_cast<double>(g) * grid.step;
        const double hi = lo + grid.step;
        // node at the power centroid of the cell, so partially covered edge cells are not biased
        double power = 0.0, moment = 0.0;
        for (const auto &c : profile.clusters())
        {
            const double a = std::max(lo, c.lo), b = std::min(hi, c.hi);
            if (b > a)
            {
                power += c.density * (b - a);
                moment += c.density * (b - a) * 0.5 * (a + b);
            }
        }
        grid.cell_power(g) = power;
        grid.theta(g) = power > 0.0 ? moment / power : lo + 0.5 * grid.step;
    }
    return grid;
}

// ---------- sampling ----------

ChannelSampler::ChannelSampler(const SystemConfig &cfg, const ScatteringProfile &profile, Band band)
{
    cfg.validate();
    profile.validate(cfg.theta_max);
    const AngleGrid grid = make_angle_grid(cfg, profile);
    const arma::uvec active = arma::find(grid.cell_power > 0.0);
    steering_.set_size(cfg.antennas, active.n_elem);
    for (arma::uword j = 0; j < active.n_elem; ++j)
    {
        const arma::uword g = active(j);
        steering_.col(j) = std::sqrt(grid.cell_power(g)) * array_response(cfg, grid.theta(g), band);
    }
}

arma::cx_vec ChannelSampler::draw(Rng &rng) const
{
    return steering_ * complex_gaussian(steering_.n_cols, rng);
}

arma::cx_mat ChannelSampler::draw_block(arma::uword count, Rng &rng) const
{
    return steering_ * complex_gaussian(steering_.n_cols, count, rng);
}

ChannelRealization sample_channel(const SystemConfig &cfg, const ScatteringProfile &profile, Band band, Rng &rng)
{
    const ChannelSampler sampler(cfg, profile, band);
    ChannelRealization out;
    out.band = band;
    out.spatial = sampler.draw(rng);
    out.fourier = dft_matrix(cfg.antennas).t() * out.spatial;
    return out;
}

// ---------- second-order statistics ----------

arma::vec variance_vector(const SystemConfig &cfg, const ScatteringProfile &profile, Band band)
{
    cfg.validate();
    profile.validate(cfg.theta_max);
    const AngleGrid grid = make_angle_grid(cfg, profile);
    const std::size_t M = cfg.antennas;
    arma::vec v(M, arma::fill::zeros);
    for (arma::uword g = 0; g < grid.theta.n_elem; ++g)
    {
        const double w = grid.cell_power(g);
        if (w <= 0.0)
            continue;
        for (std::size_t i = 0; i < M; ++i)
        {
            const double D = dirichlet_kernel(beam_offset(cfg, band, i, grid.theta(g)), M);
            v(i) += w * D * D;
        }
    }
    return v / static_cast<double>(M);
}

arma::cx_mat fourier_covariance(const SystemConfig &cfg, const ScatteringProfile &profile, Band band)
{
    cfg.validate();
    profile.validate(cfg.theta_max);
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    const AngleGrid grid = make_angle_grid(cfg, profile);
    arma::cx_mat A(cfg.antennas, grid.theta.n_elem);
    for (arma::uword g = 0; g < grid.theta.n_elem; ++g)
        A.col(g) = std::sqrt(grid.cell_power(g)) * array_response(cfg, grid.theta(g), band);
    const arma::cx_mat FA = F.t() * A;
    return FA * FA.t();
}

SupportSet theoretical_support(const SystemConfig &cfg, const ScatteringProfile &profile, Band band)
{
    cfg.validate();
    profile.validate(cfg.theta_max);
    const AngleSet clusters = profile.support();
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < cfg.antennas; ++i)
    {
        const AngleSet beam = beam_interval(cfg, band, i);
        const bool hit = std::any_of(beam.begin(), beam.end(), [&](const AngleInterval &b)
                                     { return std::any_of(clusters.begin(), clusters.end(), [&](const AngleInterval &c)
                                                          { return intersects_half_open(b, c); }); });
        if (hit)
            indices.push_back(i);
    }
    return SupportSet(std::move(indices), band, cfg.antennas);
}

} // namespace fddmimo

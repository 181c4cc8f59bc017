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

#pragma once

#include "fddmimo/config.hpp"
#include "fddmimo/intervals.hpp"
#include "fddmimo/rng.hpp"

#include <armadillo>
#include <cstddef>
#include <vector>

namespace fddmimo
{

// One cluster of scatterers: constant power density over [lo, hi).
struct ScatteringCluster
{
    double lo = 0.0;
    double hi = 0.0;
    double density = 0.0; // power per radian
};

// Angular scattering function as a piecewise-constant density on [-theta_max, theta_max).
// The checked constructor splits overlapping clusters into disjoint pieces (densities add)
// and drops zero-density pieces.
class ScatteringProfile
{
  public:
    ScatteringProfile() = default;
    ScatteringProfile(const std::vector<ScatteringCluster> &clusters, double theta_max);

    // Bypasses validation; sample_channel and friends still validate before use.
    static ScatteringProfile unchecked(std::vector<ScatteringCluster> clusters);

    // Equal-density clusters of the given intervals, scaled to unit total power.
    static ScatteringProfile uniform_clusters(const AngleSet &intervals, double theta_max);

    const std::vector<ScatteringCluster> &clusters() const { return clusters_; }
    double total_power() const;

    // Power contained in [a, b).
    double power_in(double a, double b) const;

    // Half-open intervals where the density is positive.
    AngleSet support() const;

    ScatteringProfile scaled_to_unit_power() const;

    void validate(double theta_max) const;

  private:
    std::vector<ScatteringCluster> clusters_;
};

struct ChannelRealization
{
    arma::cx_vec spatial; // antenna domain
    arma::cx_vec fourier; // F^H * spatial
    Band band = Band::uplink;
};

// Sorted, duplicate-free subset of {0, ..., antennas - 1}.
class SupportSet
{
  public:
    SupportSet() = default;
    SupportSet(std::vector<std::size_t> indices, Band band, std::size_t antennas);

    const std::vector<std::size_t> &indices() const { return indices_; }
    Band band() const { return band_; }
    std::size_t antennas() const { return antennas_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(std::size_t index) const;

    // True when every index of `other` is also in this set.
    bool includes(const SupportSet &other) const;

    // |this \ other|
    std::size_t excess_over(const SupportSet &other) const;

    bool operator==(const SupportSet &) const = default;

  private:
    std::vector<std::size_t> indices_;
    Band band_ = Band::uplink;
    std::size_t antennas_ = 0;
};

// Steering vector with entries exp(j 2 pi / c f l d sin(theta)), l = 0..M-1.
// Angles outside [-theta_max, theta_max] raise std::domain_error.
arma::cx_vec array_response(const SystemConfig &cfg, double theta, Band band);

// [F]_{k,l} = exp(j 2 pi / M k (l - M/2)) / sqrt(M), k and l zero-based.
arma::cx_mat dft_matrix(std::size_t M);

// sin(pi psi M) / sin(pi psi) with the removable singularities replaced by their limit.
double dirichlet_kernel(double psi, std::size_t M);

// psi_{band,i}(theta) = (d/c) f_band sin(theta) - i/M + 1/2
double beam_offset(const SystemConfig &cfg, Band band, std::size_t index, double theta);

// Closed set {theta in [-theta_max, theta_max] : |psi_{band,i}(theta)| <= 1/M}, where |psi| is
// the distance to the nearest integer (the Dirichlet kernel is 1-periodic in magnitude).
// Solved in sin(theta) space, so it is exact and independent of the angle grid.
AngleSet beam_interval(const SystemConfig &cfg, Band band, std::size_t index);

// Uniform cells over [-theta_max, theta_max) with the integrated profile power of each cell and a
// node at its power centroid (the midpoint for empty or fully covered cells).
struct AngleGrid
{
    arma::vec theta;
    arma::vec cell_power;
    double step = 0.0;
};
AngleGrid make_angle_grid(const SystemConfig &cfg, const ScatteringProfile &profile);

// Draws channel vectors for one user. Each grid cell carries an independent CN(0, cell power)
// gain; only cells with positive power are kept.
class ChannelSampler
{
  public:
    ChannelSampler(const SystemConfig &cfg, const ScatteringProfile &profile, Band band);

    arma::cx_vec draw(Rng &rng) const;
    arma::cx_mat draw_block(arma::uword count, Rng &rng) const;
    arma::uword antennas() const { return steering_.n_rows; }

  private:
    arma::cx_mat steering_; // steering vectors scaled by sqrt(cell power)
};

ChannelRealization sample_channel(const SystemConfig &cfg, const ScatteringProfile &profile, Band band, Rng &rng);

// Per-index variance of the Fourier coefficients:
// [v]_i = (1/M) sum_g P_g |D_M(psi_{band,i}(theta_g))|^2, P_g the power in grid cell g.
arma::vec variance_vector(const SystemConfig &cfg, const ScatteringProfile &profile, Band band);

// Exact covariance of the Fourier coefficients under the grid discretization.
arma::cx_mat fourier_covariance(const SystemConfig &cfg, const ScatteringProfile &profile, Band band);

// Indices whose beam interval meets the profile support.
SupportSet theoretical_support(const SystemConfig &cfg, const ScatteringProfile &profile, Band band);

} // namespace fddmimo

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

#include "fddmimo/channel.hpp"
#include "fddmimo/config.hpp"
#include "fddmimo/intervals.hpp"

#include <armadillo>
#include <vector>

namespace fddmimo
{

// L noisy UL pilot observations of one user, one column per signal dimension.
struct UplinkSnapshotBlock
{
    arma::cx_mat Y;
    double sigma = 0.0; // noise standard deviation per complex entry

    arma::uword snapshots() const { return Y.n_cols; }
    void validate() const;
};

struct MmvOptions
{
    arma::uword max_iterations = 5000;
    double rel_objective_tol = 1e-6;
    double feas_tol = 1e-3;   // accepted relative violation of the noise-ball radius
    double penalty_scale = 1.0; // ADMM step: 1/rho = penalty_scale * sigma * sqrt(L)
    bool keep_history = false;
};

struct MmvSolution
{
    arma::cx_mat X;
    arma::vec row_norms;
    arma::uword iterations = 0;
    double residual = 0.0;  // ||Y - F X||_F
    double objective = 0.0; // ||X||_{2,1}
    bool converged = false;
    std::vector<double> objective_history; // best feasible objective per iteration
};

// Row-wise shrinkage, the proximal map of threshold * ||.||_{2,1}.
arma::cx_mat shrink_rows(const arma::cx_mat &X, double threshold);

double l21_norm(const arma::cx_mat &X);

// min ||X||_{2,1} s.t. ||Y - F X||_F <= sqrt(M L) sigma, with unitary F.
//
// ADMM on the split X = V: the X-step is row shrinkage and the V-step is a projection onto the
// Frobenius ball around F^H Y (closed form because F is unitary). The best feasible iterate
// is returned; `converged` is false when the iteration cap was hit first.
MmvSolution solve_mmv(const UplinkSnapshotBlock &block, const arma::cx_mat &F, const MmvOptions &opts = {});

// Default threshold factor, relative to the largest row norm.
inline constexpr double default_threshold_factor = 0.25;

SupportSet threshold_support(const MmvSolution &sol, double epsilon);

// epsilon = factor * max_i row_norms[i]
double adaptive_threshold(const MmvSolution &sol, double factor = default_threshold_factor);

// Union of the UL beam intervals of the given indices, merged into maximal disjoint closed
// intervals. Empty input gives an empty set (the user cannot be served).
AngleSet interpolate_scattering_support(const SystemConfig &cfg, const SupportSet &ul_support);

// DL indices whose beam interval meets the estimated angular support.
SupportSet map_to_dl_support(const SystemConfig &cfg, const AngleSet &angular_support);

// Draws L UL snapshots y_i = h_i + n_i with independent channel realizations per snapshot.
UplinkSnapshotBlock simulate_uplink(const SystemConfig &cfg, const ChannelSampler &ul_sampler, Rng &rng);

// DL beam energy predicted from the UL solution: every active UL beam spreads its row energy
// evenly over its angular interval, and DL beam j collects the part overlapping its own interval.
arma::vec interpolate_beam_power(const SystemConfig &cfg, const SupportSet &ul_support, const arma::vec &ul_row_norms);

struct SupportEstimate
{
    SupportSet ul;
    AngleSet angular;
    SupportSet dl;
    arma::vec dl_power; // per DL beam, see interpolate_beam_power
    bool mmv_converged = true;
};

// Full per-user chain: MMV recovery, thresholding, interpolation and DL mapping.
SupportEstimate estimate_dl_support(const SystemConfig &cfg, const UplinkSnapshotBlock &block,
                                    const arma::cx_mat &F, double threshold_factor = default_threshold_factor,
                                    const MmvOptions &opts = {});

} // namespace fddmimo

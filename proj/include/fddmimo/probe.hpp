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

#include "fddmimo/rng.hpp"

#include <armadillo>
#include <cstddef>
#include <vector>

namespace fddmimo
{

// T probing vectors over the selected beams, one per row, each with squared norm P.
struct ProbingMatrix
{
    arma::cx_mat Psi;
    double power = 0.0;

    arma::uword pilot_dim() const { return Psi.n_rows; }
    arma::uword beam_count() const { return Psi.n_cols; }
};

// i.i.d. CN(0, 1) rows rescaled to squared norm P.
ProbingMatrix generate_probing(std::size_t pilot_dim, std::size_t beam_count, double power, Rng &rng);

// y = Psi * B * h + n with n ~ CN(0, noise_var I). noise_var = 0 gives the noiseless observation.
arma::cx_vec receive_pilots(const ProbingMatrix &probing, const arma::cx_mat &B, const arma::cx_vec &h,
                            double noise_var, Rng &rng);

struct EffectiveChannelEstimate
{
    arma::cx_vec h_eff_hat;          // length |selected beams|, zero outside omega
    std::vector<std::size_t> omega;  // 1-based positions
    std::size_t user = 0;
    bool rank_deficient = false;     // minimum-norm solution was returned
};

// Least squares on the columns in omega: [h]_omega = pinv(Psi_omega) y, zero elsewhere.
// Throws std::invalid_argument when |omega| > T.
EffectiveChannelEstimate estimate_effective(const arma::cx_vec &y, const ProbingMatrix &probing,
                                            const std::vector<std::size_t> &omega, std::size_t user = 0);

} // namespace fddmimo

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

#include "fddmimo/probe.hpp"

#include <cmath>
#include <stdexcept>

namespace fddmimo
{

ProbingMatrix generate_probing(std::size_t pilot_dim, std::size_t beam_count, double power, Rng &rng)
{
    if (pilot_dim < 1 || beam_count < 1)
        throw std::invalid_argument("generate_probing: dimensions must be >= 1");
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("generate_probing: power must be positive");

    ProbingMatrix p;
    p.power = power;
    p.Psi = complex_gaussian(pilot_dim, beam_count, rng);
    for (arma::uword j = 0; j < p.Psi.n_rows; ++j)
    {
        double n = arma::norm(p.Psi.row(j), 2);
        // a zero row has probability zero; redraw instead of dividing by it
        while (n == 0.0)
        {
            p.Psi.row(j) = complex_gaussian(beam_count, rng).st();
            n = arma::norm(p.Psi.row(j), 2);
        }
        p.Psi.row(j) *= std::sqrt(power) / n;
    }
    return p;
}

arma::cx_vec receive_pilots(const ProbingMatrix &probing, const arma::cx_mat &B, const arma::cx_vec &h,
                            double noise_var, Rng &rng)
{
    if (B.n_rows != probing.beam_count() || B.n_cols != h.n_elem)
        throw std::invalid_argument("receive_pilots: inconsistent dimensions");
    if (noise_var < 0.0)
        throw std::invalid_argument("receive_pilots: negative noise variance");
    arma::cx_vec y = probing.Psi * (B * h);
    if (noise_var > 0.0)
        y += std::sqrt(noise_var) * complex_gaussian(y.n_elem, rng);
    return y;
}

EffectiveChannelEstimate estimate_effective(const arma::cx_vec &y, const ProbingMatrix &probing,
                                            const std::vector<std::size_t> &omega, std::size_t user)
{
    const arma::uword T = probing.pilot_dim(), n = probing.beam_count();
    if (y.n_elem != T)
        throw std::invalid_argument("estimate_effective: measurement length differs from T");
    if (omega.size() > T)
        throw std::invalid_argument("estimate_effective: |omega| exceeds the pilot dimension");

    EffectiveChannelEstimate est;
    est.user = user;
    est.omega = omega;
    est.h_eff_hat.zeros(n);
    if (omega.empty())
        return est;

    arma::uvec cols(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i)
    {
        if (omega[i] < 1 || omega[i] > n)
            throw std::out_of_range("estimate_effective: omega position outside 1..|B|");
        cols(i) = omega[i] - 1;
    }
    const arma::cx_mat sub = probing.Psi.cols(cols);
    est.rank_deficient = arma::rank(sub) < sub.n_cols;
    const arma::cx_vec x = arma::pinv(sub) * y;
    est.h_eff_hat.elem(cols) = x;
    return est;
}

} // namespace fddmimo

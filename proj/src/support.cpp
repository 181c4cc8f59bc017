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

#include "fddmimo/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fddmimo
{

void UplinkSnapshotBlock::validate() const
{
    if (Y.n_cols < 1)
        throw std::invalid_argument("UplinkSnapshotBlock: need at least one snapshot");
    if (!Y.is_finite())
        throw std::invalid_argument("UplinkSnapshotBlock: non-finite observation");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("UplinkSnapshotBlock: sigma must be positive");
}

arma::cx_mat shrink_rows(const arma::cx_mat &X, double threshold)
{
    arma::cx_mat out(arma::size(X), arma::fill::zeros);
    for (arma::uword i = 0; i < X.n_rows; ++i)
    {
        const double n = arma::norm(X.row(i), 2);
        if (n > threshold)
            out.row(i) = X.row(i) * ((n - threshold) / n);
    }
    return out;
}

double l21_norm(const arma::cx_mat &X)
{
    double sum = 0.0;
    for (arma::uword i = 0; i < X.n_rows; ++i)
        sum += arma::norm(X.row(i), 2);
    return sum;
}

namespace
{
arma::vec row_norms_of(const arma::cx_mat &X)
{
    arma::vec out(X.n_rows);
    for (arma::uword i = 0; i < X.n_rows; ++i)
        out(i) = arma::norm(X.row(i), 2);
    return out;
}

// Projection onto {V : ||V - center||_F <= radius}
arma::cx_mat project_ball(const arma::cx_mat &V, const arma::cx_mat &center, double radius)
{
    const arma::cx_mat diff = V - center;
    const double n = arma::norm(diff, "fro");
    if (n <= radius)
        return V;
    return center + diff * (radius / n);
}
} // namespace

MmvSolution solve_mmv(const UplinkSnapshotBlock &block, const arma::cx_mat &F, const MmvOptions &opts)
{
    block.validate();
    const arma::uword M = block.Y.n_rows;
    const arma::uword L = block.Y.n_cols;
    if (F.n_rows != M || F.n_cols != M)
        throw std::invalid_argument("solve_mmv: dictionary must be M x M");
    if (arma::norm(F.t() * F - arma::eye<arma::cx_mat>(M, M), "fro") > 1e-8 * std::sqrt(static_cast<double>(M)))
        throw std::invalid_argument("solve_mmv: dictionary must be unitary");

    const double radius = std::sqrt(static_cast<double>(M * L)) * block.sigma;
    const arma::cx_mat Z = F.t() * block.Y; // ||Y - F X|| = ||Z - X||

    MmvSolution sol;
    if (arma::norm(Z, "fro") <= radius)
    {
        // zero is feasible and minimal
        sol.X.zeros(M, L);
        sol.row_norms.zeros(M);
        sol.residual = arma::norm(block.Y, "fro");
        sol.converged = true;
        return sol;
    }

    const double step = opts.penalty_scale * block.sigma * std::sqrt(static_cast<double>(L));
    const double feasible_radius = radius * (1.0 + opts.feas_tol);

    arma::cx_mat V = Z;
    arma::cx_mat U(M, L, arma::fill::zeros);
    arma::cx_mat X;

    double best_objective = std::numeric_limits<double>::infinity();
    arma::cx_mat best_X = Z; // feasible start: the unshrunk back-projection
    best_objective = l21_norm(Z);
    double prev_objective = std::numeric_limits<double>::infinity();

    for (arma::uword it = 1; it <= opts.max_iterations; ++it)
    {
        X = shrink_rows(V - U, step);
        V = project_ball(X + U, Z, radius);
        U += X - V;

        const double objective = l21_norm(X);
        const double primal = arma::norm(X - V, "fro");
        const double misfit = arma::norm(Z - X, "fro");
        if (misfit <= feasible_radius && objective <= best_objective)
        {
            best_objective = objective;
            best_X = X;
        }
        if (opts.keep_history)
            sol.objective_history.push_back(best_objective);
        sol.iterations = it;

        const double change = std::abs(objective - prev_objective) / std::max(objective, 1e-300);
        prev_objective = objective;
        if (change < opts.rel_objective_tol && primal <= opts.feas_tol * radius && misfit <= feasible_radius)
        {
            sol.converged = true;
            break;
        }
    }

    sol.X = best_X;
    sol.row_norms = row_norms_of(sol.X);
    sol.objective = best_objective;
    sol.residual = arma::norm(block.Y - F * sol.X, "fro");
    return sol;
}

SupportSet threshold_support(const MmvSolution &sol, double epsilon)
{
    if (epsilon < 0.0)
        throw std::invalid_argument("threshold_support: epsilon must be non-negative");
    std::vector<std::size_t> indices;
    for (arma::uword i = 0; i < sol.row_norms.n_elem; ++i)
        if (sol.row_norms(i) >= epsilon)
            indices.push_back(i);
    return SupportSet(std::move(indices), Band::uplink, sol.row_norms.n_elem);
}

double adaptive_threshold(const MmvSolution &sol, double factor)
{
    if (sol.row_norms.is_empty())
        return 0.0;
    const double peak = sol.row_norms.max();
    // an all-zero solution has no active rows
    if (!(peak > 0.0))
        return std::numeric_limits<double>::infinity();
    return factor * peak;
}

AngleSet interpolate_scattering_support(const SystemConfig &cfg, const SupportSet &ul_support)
{
    AngleSet pieces;
    for (auto i : ul_support.indices())
    {
        if (i >= cfg.antennas)
            throw std::out_of_range("interpolate_scattering_support: index outside the array");
        const AngleSet beam = beam_interval(cfg, Band::uplink, i);
        pieces.insert(pieces.end(), beam.begin(), beam.end());
    }
    return merge_intervals(std::move(pieces));
}

SupportSet map_to_dl_support(const SystemConfig &cfg, const AngleSet &angular_support)
{
    std::vector<std::size_t> indices;
    if (!angular_support.empty())
    {
        for (std::size_t i = 0; i < cfg.antennas; ++i)
        {
            const AngleSet beam = beam_interval(cfg, Band::downlink, i);
            const bool hit = std::any_of(beam.begin(), beam.end(), [&](const AngleInterval &b)
                                         { return std::any_of(angular_support.begin(), angular_support.end(),
                                                              [&](const AngleInterval &x) { return intersects_closed(b, x); }); });
            if (hit)
                indices.push_back(i);
        }
    }
    return SupportSet(std::move(indices), Band::downlink, cfg.antennas);
}

arma::vec interpolate_beam_power(const SystemConfig &cfg, const SupportSet &ul_support, const arma::vec &ul_row_norms)
{
    if (ul_row_norms.n_elem != cfg.antennas)
        throw std::invalid_argument("interpolate_beam_power: one row norm per antenna expected");
    auto overlap = [](const AngleSet &a, const AngleSet &b)
    {
        double sum = 0.0;
        for (const auto &x : a)
            for (const auto &y : b)
                sum += std::max(0.0, std::min(x.hi, y.hi) - std::max(x.lo, y.lo));
        return sum;
    };
    std::vector<AngleSet> dl_beams(cfg.antennas);
    for (std::size_t j = 0; j < cfg.antennas; ++j)
        dl_beams[j] = beam_interval(cfg, Band::downlink, j);

    arma::vec power(cfg.antennas, arma::fill::zeros);
    for (auto i : ul_support.indices())
    {
        if (i >= cfg.antennas)
            throw std::out_of_range("interpolate_beam_power: index outside the array");
        const AngleSet beam = beam_interval(cfg, Band::uplink, i);
        const double width = total_length(beam);
        if (!(width > 0.0))
            continue;
        const double density = ul_row_norms(i) * ul_row_norms(i) / width;
        for (std::size_t j = 0; j < cfg.antennas; ++j)
            power(j) += density * overlap(beam, dl_beams[j]);
    }
    return power;
}

UplinkSnapshotBlock simulate_uplink(const SystemConfig &cfg, const ChannelSampler &ul_sampler, Rng &rng)
{
    UplinkSnapshotBlock block;
    block.sigma = std::sqrt(cfg.ul_noise_var);
    block.Y = ul_sampler.draw_block(cfg.ul_pilots, rng);
    block.Y += block.sigma * complex_gaussian(cfg.antennas, cfg.ul_pilots, rng);
    return block;
}

SupportEstimate estimate_dl_support(const SystemConfig &cfg, const UplinkSnapshotBlock &block, const arma::cx_mat &F,
                                    double threshold_factor, const MmvOptions &opts)
{
    const MmvSolution sol = solve_mmv(block, F, opts);
    SupportEstimate est;
    est.mmv_converged = sol.converged;
    est.ul = threshold_support(sol, adaptive_threshold(sol, threshold_factor));
    est.angular = interpolate_scattering_support(cfg, est.ul);
    est.dl = map_to_dl_support(cfg, est.angular);
    est.dl_power = interpolate_beam_power(cfg, est.ul, sol.row_norms);
    return est;
}

} // namespace fddmimo

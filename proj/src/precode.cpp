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

#include "fddmimo/precode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace fddmimo
{

std::vector<std::size_t> greedy_select(const arma::cx_mat &estimates, double tol)
{
    const arma::uword K = estimates.n_cols;
    if (K < 1)
        throw std::invalid_argument("greedy_select: need at least one vector");

    arma::vec norms(K);
    for (arma::uword k = 0; k < K; ++k)
        norms(k) = arma::norm(estimates.col(k), 2);
    const arma::uvec order = arma::stable_sort_index(norms, "descend");

    std::vector<std::size_t> selected;
    arma::cx_mat basis(estimates.n_rows, 0);
    for (auto k : order)
    {
        if (!(norms(k) > 0.0))
            continue;
        arma::cx_vec r = estimates.col(k);
        // two passes keep the basis orthogonal to working precision
        for (int pass = 0; pass < 2 && basis.n_cols > 0; ++pass)
            r -= basis * (basis.t() * r);
        const double rn = arma::norm(r, 2);
        if (rn > tol * norms(k))
        {
            basis.insert_cols(basis.n_cols, r / rn);
            selected.push_back(k);
        }
    }
    return selected;
}

ZfPrecoder build_zf(const arma::cx_mat &H, std::vector<std::size_t> user_ids, double tol)
{
    if (user_ids.empty())
    {
        user_ids.resize(H.n_cols);
        std::iota(user_ids.begin(), user_ids.end(), std::size_t{0});
    }
    if (user_ids.size() != H.n_cols)
        throw std::invalid_argument("build_zf: one id per column required");

    ZfPrecoder zf;
    if (H.n_cols == 0)
    {
        zf.columns.set_size(H.n_rows, 0);
        return zf;
    }

    arma::cx_mat use = H;
    std::vector<std::size_t> ids = user_ids;
    if (H.n_cols > H.n_rows || arma::rank(H) < H.n_cols)
    {
        const std::vector<std::size_t> keep = greedy_select(H, tol);
        std::vector<std::size_t> sorted = keep;
        std::sort(sorted.begin(), sorted.end());
        use.set_size(H.n_rows, sorted.size());
        ids.clear();
        for (std::size_t i = 0; i < sorted.size(); ++i)
        {
            use.col(i) = H.col(sorted[i]);
            ids.push_back(user_ids[sorted[i]]);
        }
        zf.dropped = H.n_cols - sorted.size();
    }

    arma::cx_mat Q = arma::pinv(arma::cx_mat(use.t()));
    for (arma::uword k = 0; k < Q.n_cols; ++k)
    {
        const double n = arma::norm(Q.col(k), 2);
        if (n > 0.0)
            Q.col(k) /= n;
    }
    zf.columns = std::move(Q);
    zf.users = std::move(ids);
    return zf;
}

ZfPrecoder greedy_zf(const arma::cx_mat &estimates, const std::vector<std::size_t> &user_ids, double tol)
{
    if (user_ids.size() != estimates.n_cols)
        throw std::invalid_argument("greedy_zf: one id per column required");
    if (estimates.n_cols == 0)
        return build_zf(estimates, {}, tol);
    std::vector<std::size_t> pick = greedy_select(estimates, tol);
    std::sort(pick.begin(), pick.end());
    arma::cx_mat H(estimates.n_rows, pick.size());
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < pick.size(); ++i)
    {
        H.col(i) = estimates.col(pick[i]);
        ids.push_back(user_ids[pick[i]]);
    }
    ZfPrecoder zf = build_zf(H, ids, tol);
    zf.dropped += estimates.n_cols - pick.size();
    return zf;
}

namespace
{

// Neumaier-compensated running sum.
struct Accumulator
{
    double sum = 0.0, carry = 0.0;
    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

} // namespace

RateBounds evaluate_rates(const std::vector<RateTrial> &trials, double power, std::size_t pilot_dim,
                          std::size_t block_size)
{
    if (block_size < 1)
        throw std::invalid_argument("evaluate_rates: block size must be >= 1");
    if (pilot_dim > block_size)
        throw std::invalid_argument("evaluate_rates: pilot dimension exceeds the coherence block");
    if (trials.empty())
        throw std::invalid_argument("evaluate_rates: need at least one trial");
    if (!(power >= 0.0))
        throw std::invalid_argument("evaluate_rates: negative power");

    const arma::uword K = trials.front().channels.n_cols;
    const double Nc = static_cast<double>(block_size);
    const std::size_t n = trials.size();

    RateBounds rb;
    rb.trials = n;
    rb.prelog = 1.0 - static_cast<double>(pilot_dim) / Nc;
    rb.lower.assign(K, 0.0);
    rb.upper.assign(K, 0.0);

    // g[t](k, j): gain of user k on the beam of user j in trial t, zero when j is not served
    std::vector<arma::cx_mat> gains(n);
    std::vector<Accumulator> sinr_log(K);
    Accumulator served;
    for (std::size_t t = 0; t < n; ++t)
    {
        const auto &tr = trials[t];
        if (tr.channels.n_cols != K)
            throw std::invalid_argument("evaluate_rates: user count changes between trials");
        const auto &zf = tr.precoder;
        if (zf.columns.n_cols != zf.users.size())
            throw std::invalid_argument("evaluate_rates: precoder ids do not match its columns");
        arma::cx_mat &g = gains[t];
        g.zeros(K, K);
        served.add(static_cast<double>(zf.served()));
        if (zf.served() == 0)
            continue;
        if (zf.columns.n_rows != tr.channels.n_rows)
            throw std::invalid_argument("evaluate_rates: precoder and channel sizes differ");
        const double scale = std::sqrt(power / static_cast<double>(zf.served()));
        const arma::cx_mat G = scale * (tr.channels.t() * zf.columns); // K x K'
        for (std::size_t j = 0; j < zf.users.size(); ++j)
        {
            if (zf.users[j] >= K)
                throw std::out_of_range("evaluate_rates: served user id outside the channel matrix");
            g.col(zf.users[j]) = G.col(j);
        }
        for (std::size_t j = 0; j < zf.users.size(); ++j)
        {
            const std::size_t k = zf.users[j];
            const double signal = std::norm(g(k, k));
            const double interference = arma::accu(arma::square(arma::abs(g.row(k)))) - signal;
            sinr_log[k].add(std::log2(1.0 + signal / (1.0 + std::max(interference, 0.0))));
        }
    }
    rb.mean_served = served.value() / static_cast<double>(n);

    double sum_lb = 0.0, sum_ub = 0.0;
    for (arma::uword k = 0; k < K; ++k)
    {
        const double ub = rb.prelog * sinr_log[k].value() / static_cast<double>(n);
        double penalty = 0.0;
        for (arma::uword j = 0; j < K; ++j)
        {
            // two-pass sample variance (population normalization)
            std::complex<double> mean = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                mean += gains[t](k, j);
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                var += std::norm(gains[t](k, j) - mean);
            var /= static_cast<double>(n);
            penalty += std::log2(1.0 + Nc * var);
        }
        const double lb = std::max(0.0, ub - rb.prelog * penalty / Nc);
        rb.upper[k] = ub;
        rb.lower[k] = std::min(lb, ub);
        sum_ub += ub;
        sum_lb += rb.lower[k];
    }
    rb.sum_upper = sum_ub;
    rb.sum_lower = sum_lb;
    return rb;
}

} // namespace fddmimo

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

#include <armadillo>
#include <cstddef>
#include <vector>

namespace fddmimo
{

// Unit-norm zero-forcing beams, one column per served user.
struct ZfPrecoder
{
    arma::cx_mat columns;            // M x K'
    std::vector<std::size_t> users;  // served user ids, column order
    std::size_t dropped = 0;         // users removed after a numerical rank failure

    std::size_t served() const { return users.size(); }
};

// Pivoted Gram-Schmidt in order of decreasing norm. A vector joins when its residual after
// projection onto the already selected span exceeds tol * its norm. Returns column positions
// of `estimates` in selection order.
std::vector<std::size_t> greedy_select(const arma::cx_mat &estimates, double tol = 1e-6);

// T = Q with normalized columns, Q = pinv(H^H). `user_ids` labels the columns of H.
// When H turns out rank deficient, selection is rerun on H and the dropped users are counted.
ZfPrecoder build_zf(const arma::cx_mat &H, std::vector<std::size_t> user_ids = {}, double tol = 1e-6);

// Selection followed by build_zf.
ZfPrecoder greedy_zf(const arma::cx_mat &estimates, const std::vector<std::size_t> &user_ids, double tol = 1e-6);

struct RateBounds
{
    std::vector<double> lower;  // per user id, bits per channel use
    std::vector<double> upper;
    double sum_lower = 0.0;
    double sum_upper = 0.0;
    double prelog = 0.0;        // 1 - T / N_c
    std::size_t trials = 0;
    double mean_served = 0.0;
};

// One Monte-Carlo trial: the true channels of every user (M x K, column = user id) and the
// precoder used in that trial.
struct RateTrial
{
    arma::cx_mat channels;
    ZfPrecoder precoder;
};

// Sample-statistic rate bounds over the trials with gains g_kj = sqrt(P / K') h_k^H t_j.
//   ub_k = prelog * mean[ log2(1 + |g_kk|^2 / (1 + sum_{j != k} |g_kj|^2)) ]
//   lb_k = ub_k - prelog / N_c * sum_j log2(1 + N_c var(g_kj))
// A user that is not served in a trial contributes zero gains in that trial; lb is clamped at 0.
// Throws when T > N_c.
RateBounds evaluate_rates(const std::vector<RateTrial> &trials, double power, std::size_t pilot_dim,
                          std::size_t block_size);

} // namespace fddmimo

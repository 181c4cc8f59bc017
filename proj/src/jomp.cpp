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

#include "fddmimo/jomp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fddmimo
{

namespace
{

// |a_i^H r|^2 / ||a_i||^2 for every atom
arma::vec correlation(const arma::cx_mat &A, const arma::vec &atom_norm_sq, const arma::cx_vec &r)
{
    const arma::cx_vec c = A.t() * r;
    return arma::square(arma::abs(c)) / atom_norm_sq;
}

} // namespace

JompResult jomp_estimate(const arma::cx_mat &Y, const arma::cx_mat &Phi, const std::vector<std::size_t> &sparsity,
                         const arma::cx_mat &F, const JompOptions &opts)
{
    const arma::uword T = Phi.n_rows, M = Phi.n_cols, K = Y.n_cols;
    if (Y.n_rows != T)
        throw std::invalid_argument("jomp_estimate: measurements must have T rows");
    if (F.n_rows != M || F.n_cols != M)
        throw std::invalid_argument("jomp_estimate: dictionary must be M x M");
    if (sparsity.size() != K)
        throw std::invalid_argument("jomp_estimate: one sparsity order per user");

    const arma::cx_mat A = Phi * F;
    arma::vec atom_norm_sq(M);
    for (arma::uword i = 0; i < M; ++i)
        atom_norm_sq(i) = std::max(arma::norm(A.col(i), 2) * arma::norm(A.col(i), 2), 1e-300);

    std::vector<arma::uword> joint;
    if (opts.joint_atoms > 0)
    {
        arma::vec total(M, arma::fill::zeros);
        for (arma::uword k = 0; k < K; ++k)
            total += correlation(A, atom_norm_sq, Y.col(k));
        const arma::uvec order = arma::stable_sort_index(total, "descend");
        const std::size_t count = std::min<std::size_t>({opts.joint_atoms, M, T});
        joint.assign(order.begin(), order.begin() + static_cast<long>(count));
    }

    JompResult out;
    out.X.zeros(M, K);
    out.atoms.resize(K);
    out.over_sparse.assign(K, 0);

    for (arma::uword k = 0; k < K; ++k)
    {
        const arma::cx_vec y = Y.col(k);
        const double y_norm = arma::norm(y, 2);
        const std::size_t budget = std::min<std::size_t>(sparsity[k], T);
        out.over_sparse[k] = sparsity[k] > T;
        if (budget == 0 || y_norm == 0.0)
            continue;

        std::vector<arma::uword> &chosen = out.atoms[k];
        std::vector<char> taken(M, 0);
        arma::cx_vec r = y;
        arma::cx_vec coef;

        auto refit = [&]()
        {
            const arma::uvec idx(std::vector<arma::uword>(chosen.begin(), chosen.end()));
            const arma::cx_mat sub = A.cols(idx);
            coef = arma::pinv(sub) * y;
            r = y - sub * coef;
        };

        for (auto a : joint)
        {
            if (chosen.size() >= budget)
                break;
            chosen.push_back(a);
            taken[a] = 1;
        }
        if (!chosen.empty())
            refit();

        while (chosen.size() < budget && arma::norm(r, 2) > opts.residual_tol * y_norm)
        {
            const arma::vec c = correlation(A, atom_norm_sq, r);
            arma::uword best = M;
            double best_val = -1.0;
            for (arma::uword i = 0; i < M; ++i)
                if (!taken[i] && c(i) > best_val)
                {
                    best_val = c(i);
                    best = i;
                }
            if (best == M)
                break;
            chosen.push_back(best);
            taken[best] = 1;
            refit();
        }
        for (std::size_t i = 0; i < chosen.size(); ++i)
            out.X(chosen[i], k) = coef(i);
    }
    out.H = F * out.X;
    return out;
}

} // namespace fddmimo

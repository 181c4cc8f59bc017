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

#include "fddmimo/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fddmimo
{

namespace
{

constexpr double tol = 1e-9;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::size_t bland_after = 50; // consecutive degenerate pivots before switching rules

struct Tableau
{
    arma::mat T;                      // B^{-1} [A | I | art]
    arma::vec value;                  // current values of the basic variables
    std::vector<arma::uword> basis;   // basic variable per row
    std::vector<char> is_basic;
    std::vector<char> at_upper;
    arma::vec upper;
    std::size_t pivots = 0;

    double nonbasic_value(arma::uword j) const { return at_upper[j] ? upper(j) : 0.0; }

    void pivot(arma::uword r, arma::uword j)
    {
        const double p = T(r, j);
        T.row(r) /= p;
        for (arma::uword i = 0; i < T.n_rows; ++i)
            if (i != r)
            {
                const double f = T(i, j);
                if (f != 0.0)
                    T.row(i) -= f * T.row(r);
            }
        ++pivots;
    }

    // Runs the simplex loop for the given cost vector; returns optimal / unbounded / limit.
    LpStatus optimize(const arma::vec &cost, std::size_t max_pivots)
    {
        const arma::uword m = T.n_rows, N = T.n_cols;
        std::size_t degenerate_run = 0;
        while (true)
        {
            if (pivots >= max_pivots)
                return LpStatus::iteration_limit;
            const bool bland = degenerate_run >= bland_after;

            arma::rowvec cb(m);
            for (arma::uword i = 0; i < m; ++i)
                cb(i) = cost(basis[i]);
            const arma::rowvec reduced = cost.t() - cb * T;

            arma::uword enter = N;
            double best = 0.0;
            for (arma::uword j = 0; j < N; ++j)
            {
                if (is_basic[j])
                    continue;
                const double d = reduced(j);
                const bool improving = at_upper[j] ? (d < -tol) : (d > tol && upper(j) > tol);
                if (!improving)
                    continue;
                if (bland)
                {
                    enter = j;
                    break;
                }
                if (std::abs(d) > best)
                {
                    best = std::abs(d);
                    enter = j;
                }
            }
            if (enter == N)
                return LpStatus::optimal;

            const double dir = at_upper[enter] ? -1.0 : 1.0;
            double theta = upper(enter); // bound flip distance
            arma::uword leave_row = m;
            for (arma::uword i = 0; i < m; ++i)
            {
                const double alpha = dir * T(i, enter);
                double limit = inf;
                if (alpha > tol)
                    limit = std::max(value(i), 0.0) / alpha;
                else if (alpha < -tol && std::isfinite(upper(basis[i])))
                    limit = std::max(upper(basis[i]) - value(i), 0.0) / -alpha;
                else
                    continue;
                // ties go to the smallest basic index; a tie with the bound flip keeps the flip
                if (limit < theta - tol || (limit <= theta + tol && leave_row != m && basis[i] < basis[leave_row]))
                {
                    theta = limit;
                    leave_row = i;
                }
            }
            if (!std::isfinite(theta))
                return LpStatus::unbounded;

            degenerate_run = theta < tol ? degenerate_run + 1 : 0;
            for (arma::uword i = 0; i < m; ++i)
                value(i) -= dir * T(i, enter) * theta;

            if (leave_row == m)
            {
                at_upper[enter] = !at_upper[enter];
                ++pivots;
                continue;
            }

            const arma::uword leaving = basis[leave_row];
            const double alpha_r = dir * T(leave_row, enter);
            const double entering_value = at_upper[enter] ? upper(enter) - theta : theta;
            pivot(leave_row, enter);
            value(leave_row) = entering_value;
            is_basic[leaving] = 0;
            at_upper[leaving] = alpha_r < 0.0 ? 1 : 0;
            is_basic[enter] = 1;
            at_upper[enter] = 0;
            basis[leave_row] = enter;
        }
    }
};

} // namespace

LpResult solve_lp(const arma::mat &A, const arma::vec &b, const arma::vec &c, const arma::vec &upper,
                  std::size_t max_pivots)
{
    const arma::uword m = A.n_rows, n = A.n_cols;
    if (b.n_elem != m || c.n_elem != n || upper.n_elem != n)
        throw std::invalid_argument("solve_lp: inconsistent dimensions");

    std::vector<arma::uword> negative_rows;
    for (arma::uword i = 0; i < m; ++i)
        if (b(i) < 0.0)
            negative_rows.push_back(i);
    const arma::uword r = negative_rows.size();
    const arma::uword N = n + m + r;

    Tableau tab;
    tab.T.zeros(m, N);
    tab.value.zeros(m);
    tab.basis.assign(m, 0);
    tab.is_basic.assign(N, 0);
    tab.at_upper.assign(N, 0);
    tab.upper.set_size(N);
    tab.upper.head(n) = upper;
    tab.upper.tail(m + r).fill(inf);

    tab.T.cols(0, n - 1) = A;
    for (arma::uword i = 0; i < m; ++i)
        tab.T(i, n + i) = 1.0;
    for (arma::uword i = 0; i < m; ++i)
    {
        tab.basis[i] = n + i;
        tab.value(i) = b(i);
    }
    for (arma::uword k = 0; k < r; ++k)
    {
        const arma::uword i = negative_rows[k];
        const arma::uword art = n + m + k;
        tab.T.row(i) *= -1.0;
        tab.T(i, art) = 1.0;
        tab.basis[i] = art;
        tab.value(i) = -b(i);
    }
    for (auto j : tab.basis)
        tab.is_basic[j] = 1;

    LpResult result;
    if (r > 0)
    {
        arma::vec phase1(N, arma::fill::zeros);
        phase1.tail(r).fill(-1.0);
        const LpStatus st = tab.optimize(phase1, max_pivots);
        if (st == LpStatus::iteration_limit)
        {
            result.status = st;
            result.pivots = tab.pivots;
            return result;
        }
        double infeasibility = 0.0;
        for (arma::uword i = 0; i < m; ++i)
            if (tab.basis[i] >= n + m)
                infeasibility += tab.value(i);
        if (infeasibility > 1e-7)
        {
            result.status = LpStatus::infeasible;
            result.pivots = tab.pivots;
            return result;
        }
        tab.upper.tail(r).zeros();
    }

    arma::vec cost(N, arma::fill::zeros);
    cost.head(n) = c;
    result.status = tab.optimize(cost, max_pivots);
    result.pivots = tab.pivots;

    result.x.set_size(n);
    for (arma::uword j = 0; j < n; ++j)
        result.x(j) = tab.nonbasic_value(j);
    for (arma::uword i = 0; i < m; ++i)
        if (tab.basis[i] < n)
            result.x(tab.basis[i]) = tab.value(i);
    result.objective = arma::dot(c, result.x);
    return result;
}

} // namespace fddmimo

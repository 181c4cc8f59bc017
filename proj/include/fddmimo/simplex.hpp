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

namespace fddmimo
{

enum class LpStatus
{
    optimal,
    infeasible,
    unbounded,
    iteration_limit
};

struct LpResult
{
    LpStatus status = LpStatus::iteration_limit;
    double objective = 0.0;
    arma::vec x;
    std::size_t pivots = 0;
};

// maximize c'x  subject to  A x <= b,  0 <= x <= upper  (upper may hold +inf)
//
// Dense bounded-variable primal simplex: nonbasic variables sit at either bound, so the box
// constraints never enter the tableau. Phase I drives artificial variables out of the rows
// with negative right-hand side. Pricing is Dantzig's rule, falling back to Bland's rule
// after a run of degenerate pivots.
LpResult solve_lp(const arma::mat &A, const arma::vec &b, const arma::vec &c, const arma::vec &upper,
                  std::size_t max_pivots = 50000);

} // namespace fddmimo

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

struct JompOptions
{
    // Atoms chosen jointly by correlation summed over all users before the per-user stage.
    // 0 disables the joint stage.
    std::size_t joint_atoms = 0;
    double residual_tol = 1e-12; // relative to ||y||, stops early
};

struct JompResult
{
    arma::cx_mat X;                        // M x K Fourier coefficients
    arma::cx_mat H;                        // M x K spatial estimates, F * X
    std::vector<std::vector<arma::uword>> atoms; // selected atoms per user, in selection order
    std::vector<char> over_sparse;         // s_k > T: only T iterations were run
};

// Orthogonal matching pursuit per user on the dictionary Phi * F, fed the sparsity order of each
// user. Column k of Y is user k's measurement vector.
JompResult jomp_estimate(const arma::cx_mat &Y, const arma::cx_mat &Phi, const std::vector<std::size_t> &sparsity,
                         const arma::cx_mat &F, const JompOptions &opts = {});

} // namespace fddmimo

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
#include <cstdint>
#include <random>
#include <string_view>

namespace fddmimo
{

using Rng = std::mt19937_64;

// Random streams are derived, never shared: every consumer asks for the stream keyed by
// (master seed, stage tag, user id, trial id). The key is folded through FNV-1a (tag) and
// SplitMix64 (all fields), so streams are independent of scheduling order.
std::uint64_t stream_seed(std::uint64_t master, std::string_view tag, std::uint64_t user = 0,
                          std::uint64_t trial = 0);

Rng make_stream(std::uint64_t master, std::string_view tag, std::uint64_t user = 0, std::uint64_t trial = 0);

std::uint64_t splitmix64(std::uint64_t x);

// Circularly-symmetric complex Gaussian entries with unit variance, CN(0, 1).
arma::cx_vec complex_gaussian(arma::uword n, Rng &rng);
arma::cx_mat complex_gaussian(arma::uword rows, arma::uword cols, Rng &rng);

} // namespace fddmimo

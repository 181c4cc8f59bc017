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

#include "fddmimo/rng.hpp"

#include <cmath>

namespace fddmimo
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace
{
std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s)
    {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}
} // namespace

std::uint64_t stream_seed(std::uint64_t master, std::string_view tag, std::uint64_t user, std::uint64_t trial)
{
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ fnv1a(tag));
    h = splitmix64(h ^ user);
    h = splitmix64(h ^ (trial + 0x632BE59BD9B4E019ULL));
    return h;
}

Rng make_stream(std::uint64_t master, std::string_view tag, std::uint64_t user, std::uint64_t trial)
{
    return Rng(stream_seed(master, tag, user, trial));
}

arma::cx_mat complex_gaussian(arma::uword rows, arma::uword cols, Rng &rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    arma::cx_mat out(rows, cols);
    for (arma::uword j = 0; j < cols; ++j)
        for (arma::uword i = 0; i < rows; ++i)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = {re, im};
        }
    return out;
}

arma::cx_vec complex_gaussian(arma::uword n, Rng &rng)
{
    return arma::cx_vec(complex_gaussian(n, 1, rng));
}

} // namespace fddmimo

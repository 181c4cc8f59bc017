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

#include "fddmimo/channel.hpp"

#include <armadillo>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <vector>

namespace fddmimo
{

// Bipartite beam/user graph. Row a of W is beam beams[a], column k is user users[k].
struct BeamUserGraph
{
    std::vector<std::size_t> beams; // sorted Fourier indices, union of all DL supports
    std::vector<std::size_t> users; // user ids
    arma::umat W;                   // |beams| x |users|, 0/1

    std::size_t beam_count() const { return beams.size(); }
    std::size_t user_count() const { return users.size(); }
    std::size_t degree_of_user(std::size_t k) const;
    std::size_t degree_of_beam(std::size_t a) const;
};

// Users with an empty support stay in the graph with an all-zero column; they can never be
// served. Throws when every support is empty.
BeamUserGraph build_graph(const std::vector<SupportSet> &supports, std::vector<std::size_t> user_ids = {});

struct IlpOptions
{
    std::size_t max_nodes = 500000;    // per branch-and-bound run
    std::size_t max_variables = 1024;  // larger instances go straight to the heuristic
    bool canonical_ties = true;        // lexicographically smallest beam set among optima
    // Beam positions in the order the tie rule compares them; empty means ascending. With a
    // priority the rule prefers the optimum that keeps the earliest-listed beams.
    std::vector<std::size_t> beam_priority;
};

struct IlpSolution
{
    std::vector<char> z; // per beam position
    std::vector<char> u; // per user position
    long objective = 0;  // selected beams + served users
    bool proven_optimal = false;
    bool heuristic = false; // true when the size cap or node cap forced the greedy fallback
    std::size_t nodes = 0;
    std::size_t lp_solves = 0;

    std::size_t served_count() const;
    std::size_t selected_count() const;
};

// Maximize sum_a z_a + sum_k u_k subject to
//   z_a <= sum_k W[a,k] u_k                 (a selected beam serves someone)
//   u_k <= sum_a W[a,k] z_a                 (a served user is probed on some beam)
//   sum_a W[a,k] z_a <= M (1 - u_k) + T     (a served user sees at most T beams)
// over binary z, u. Branch-and-bound on an LP relaxation, users branched first. Among optima
// the solution with the most served users wins, then the lexicographically smallest beam set
// (in the order of opts.beam_priority when given).
IlpSolution solve_ilp(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas,
                      const IlpOptions &opts = {});

// Enumerates every assignment; limited to 24 binaries. Same tie rule as solve_ilp.
IlpSolution solve_ilp_exhaustive(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas,
                                 const std::vector<std::size_t> &beam_priority = {});

// Greedy serve-then-fill heuristic with single-user removal moves. Always feasible.
IlpSolution solve_ilp_greedy(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas);

bool ilp_feasible(const BeamUserGraph &graph, const std::vector<char> &z, const std::vector<char> &u,
                  std::size_t pilot_dim, std::size_t antennas);

struct SparsificationPlan
{
    std::vector<char> z;
    std::vector<char> u;
    std::vector<std::size_t> selected_beams; // Fourier indices of the probed beams, ascending
    std::vector<std::size_t> served_users;   // user ids
    std::map<std::size_t, std::vector<std::size_t>> omega; // user id -> 1-based positions in selected_beams
    arma::cx_mat B;                          // |selected| x M pre-beamforming matrix, rows of F^H
    long objective = 0;

    bool serves(std::size_t user_id) const { return omega.count(user_id) != 0; }
};

SparsificationPlan build_plan(const BeamUserGraph &graph, const std::vector<char> &z, const std::vector<char> &u,
                              const arma::cx_mat &F, std::size_t pilot_dim);

// ---------- instance files ----------
//
//   fddmimo-ilp 1
//   antennas <M>
//   pilot_dim <T>
//   beams <n> <index_0> ... <index_{n-1}>
//   users <K> <id_0> ... <id_{K-1}>
//   edges <E>
//   <beam position> <user position> 1      (E lines)
//
// Blank lines and lines starting with '#' are ignored.
struct IlpInstance
{
    BeamUserGraph graph;
    std::size_t pilot_dim = 1;
    std::size_t antennas = 2;
};

void write_instance(std::ostream &os, const IlpInstance &inst);
IlpInstance read_instance(std::istream &is);

} // namespace fddmimo

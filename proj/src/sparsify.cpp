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

#include "fddmimo/sparsify.hpp"
#include "fddmimo/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fddmimo
{

// ---------- graph ----------

std::size_t BeamUserGraph::degree_of_user(std::size_t k) const
{
    return static_cast<std::size_t>(arma::accu(W.col(k)));
}

std::size_t BeamUserGraph::degree_of_beam(std::size_t a) const
{
    return static_cast<std::size_t>(arma::accu(W.row(a)));
}

BeamUserGraph build_graph(const std::vector<SupportSet> &supports, std::vector<std::size_t> user_ids)
{
    if (supports.empty())
        throw std::invalid_argument("build_graph: need at least one user");
    if (user_ids.empty())
    {
        user_ids.resize(supports.size());
        std::iota(user_ids.begin(), user_ids.end(), std::size_t{0});
    }
    if (user_ids.size() != supports.size())
        throw std::invalid_argument("build_graph: one id per support required");

    BeamUserGraph g;
    for (const auto &s : supports)
        g.beams.insert(g.beams.end(), s.indices().begin(), s.indices().end());
    std::sort(g.beams.begin(), g.beams.end());
    g.beams.erase(std::unique(g.beams.begin(), g.beams.end()), g.beams.end());
    if (g.beams.empty())
        throw std::invalid_argument("build_graph: every support is empty, nothing to probe");

    g.users = std::move(user_ids);
    g.W.zeros(g.beams.size(), supports.size());
    for (std::size_t k = 0; k < supports.size(); ++k)
        for (auto idx : supports[k].indices())
        {
            const auto pos = std::lower_bound(g.beams.begin(), g.beams.end(), idx) - g.beams.begin();
            g.W(pos, k) = 1;
        }
    return g;
}

// ---------- solutions ----------

std::size_t IlpSolution::served_count() const
{
    return static_cast<std::size_t>(std::count(u.begin(), u.end(), 1));
}

std::size_t IlpSolution::selected_count() const
{
    return static_cast<std::size_t>(std::count(z.begin(), z.end(), 1));
}

bool ilp_feasible(const BeamUserGraph &graph, const std::vector<char> &z, const std::vector<char> &u,
                  std::size_t pilot_dim, std::size_t antennas)
{
    const std::size_t A = graph.beam_count(), K = graph.user_count();
    if (z.size() != A || u.size() != K)
        return false;
    for (std::size_t a = 0; a < A; ++a)
    {
        if (!z[a])
            continue;
        bool covered = false;
        for (std::size_t k = 0; k < K && !covered; ++k)
            covered = graph.W(a, k) && u[k];
        if (!covered)
            return false;
    }
    for (std::size_t k = 0; k < K; ++k)
    {
        std::size_t probed = 0;
        for (std::size_t a = 0; a < A; ++a)
            probed += graph.W(a, k) && z[a];
        if (u[k] && probed == 0)
            return false;
        const long cap = static_cast<long>(antennas) * (1 - u[k]) + static_cast<long>(pilot_dim);
        if (static_cast<long>(probed) > cap)
            return false;
    }
    return true;
}

namespace
{

long count_ones(const std::vector<char> &v)
{
    return static_cast<long>(std::count(v.begin(), v.end(), 1));
}

std::vector<std::size_t> tie_order(const std::vector<std::size_t> &priority, std::size_t A)
{
    std::vector<std::size_t> order(A);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (priority.empty())
        return order;
    std::vector<std::size_t> sorted = priority;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != order)
        throw std::invalid_argument("solve_ilp: beam priority must be a permutation of the beam positions");
    return priority;
}

// Tie rule: larger objective, then more users, then lexicographically smaller beam set.
bool better_solution(const std::vector<char> &z1, const std::vector<char> &u1, const std::vector<char> &z2,
                     const std::vector<char> &u2)
{
    const long o1 = count_ones(z1) + count_ones(u1), o2 = count_ones(z2) + count_ones(u2);
    if (o1 != o2)
        return o1 > o2;
    const long n1 = count_ones(u1), n2 = count_ones(u2);
    if (n1 != n2)
        return n1 > n2;
    for (std::size_t a = 0; a < z1.size(); ++a)
        if (z1[a] != z2[a])
            return z1[a] > z2[a];
    return false;
}

// Best beam selection for a fixed served set, greedily: beams touching fewer served users first.
void greedy_fill(const BeamUserGraph &g, std::size_t T, const std::vector<char> &served, std::vector<char> &z,
                 std::vector<char> &u)
{
    const std::size_t A = g.beam_count(), K = g.user_count();
    z.assign(A, 0);
    u = served;
    std::vector<std::size_t> order(A);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> load(A, 0);
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t k = 0; k < K; ++k)
            load[a] += g.W(a, k) && served[k];
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return load[x] < load[y]; });

    std::vector<std::size_t> used(K, 0);
    for (auto a : order)
    {
        if (load[a] == 0)
            continue;
        bool fits = true;
        for (std::size_t k = 0; k < K && fits; ++k)
            fits = !(g.W(a, k) && served[k]) || used[k] < T;
        if (!fits)
            continue;
        z[a] = 1;
        for (std::size_t k = 0; k < K; ++k)
            used[k] += g.W(a, k) && served[k];
    }
    for (std::size_t k = 0; k < K; ++k)
        if (u[k] && used[k] == 0)
            u[k] = 0;
}

// ---------- branch and bound ----------

class BranchAndBound
{
  public:
    BranchAndBound(const BeamUserGraph &g, std::size_t T, const IlpOptions &opts)
        : g_(g), T_(T), opts_(opts), A_(g.beam_count()), K_(g.user_count()), n_(A_ + K_)
    {
        weight_.set_size(n_);
        // combined objective (K+1)(beams + users) + users keeps the user tie-break exact
        for (std::size_t v = 0; v < n_; ++v)
            weight_(v) = v < K_ ? static_cast<double>(K_ + 2) : static_cast<double>(K_ + 1);
        degree_.resize(K_);
        for (std::size_t k = 0; k < K_; ++k)
            degree_[k] = g.degree_of_user(k);
    }

    long combined(const std::vector<char> &x) const
    {
        long s = 0;
        for (std::size_t v = 0; v < n_; ++v)
            s += x[v] ? static_cast<long>(weight_(v)) : 0;
        return s;
    }

    // Depth-first search below `fixed`. Looks for solutions with combined value >= target;
    // when `first_hit` is set it returns at the first one, otherwise it keeps raising the
    // target past each incumbent. Returns false when the node cap was hit.
    bool search(std::vector<signed char> fixed, long target, bool first_hit, std::vector<char> &best, long &best_value)
    {
        struct Node
        {
            std::vector<signed char> fixed;
        };
        std::vector<Node> stack;
        stack.push_back({std::move(fixed)});
        std::size_t nodes_here = 0;

        while (!stack.empty())
        {
            if (nodes_here >= opts_.max_nodes)
                return false;
            Node node = std::move(stack.back());
            stack.pop_back();
            ++nodes_here;
            ++nodes;

            std::vector<double> x;
            double bound = 0.0;
            if (!relax(node.fixed, x, bound))
                continue;
            if (static_cast<long>(std::floor(bound + 1e-6)) < target)
                continue;

            // branching variable: most fractional user, then most fractional beam
            std::size_t pick = n_;
            double pick_frac = 1e-6;
            for (std::size_t pass = 0; pass < 2 && pick == n_; ++pass)
            {
                const std::size_t lo = pass == 0 ? 0 : K_, hi = pass == 0 ? K_ : n_;
                for (std::size_t v = lo; v < hi; ++v)
                {
                    const double frac = std::min(x[v], 1.0 - x[v]);
                    if (frac > pick_frac)
                    {
                        pick_frac = frac;
                        pick = v;
                    }
                }
            }

            if (pick == n_)
            {
                std::vector<char> sol(n_);
                for (std::size_t v = 0; v < n_; ++v)
                    sol[v] = x[v] > 0.5 ? 1 : 0;
                const long value = combined(sol);
                if (value >= target)
                {
                    best = sol;
                    best_value = value;
                    if (first_hit)
                        return true;
                    target = value + 1;
                }
                continue;
            }

            Node down{node.fixed}, up{std::move(node.fixed)};
            down.fixed[pick] = 0;
            up.fixed[pick] = 1;
            stack.push_back(std::move(down));
            stack.push_back(std::move(up)); // explored first
        }
        return true;
    }

    std::size_t nodes = 0;
    std::size_t lp_solves = 0;

  private:
    // LP relaxation with fixed variables substituted. Returns false when infeasible.
    bool relax(const std::vector<signed char> &fixed, std::vector<double> &x, double &bound)
    {
        std::vector<std::size_t> free_vars;
        std::vector<long> col(n_, -1);
        for (std::size_t v = 0; v < n_; ++v)
            if (fixed[v] < 0)
            {
                col[v] = static_cast<long>(free_vars.size());
                free_vars.push_back(v);
            }
        auto value_of = [&](std::size_t v) { return fixed[v] < 0 ? 0.0 : static_cast<double>(fixed[v]); };

        std::vector<arma::rowvec> rows;
        std::vector<double> rhs;
        const std::size_t nf = free_vars.size();

        // Adds sum coef[v] x_v <= b, moving fixed variables to the right-hand side.
        auto add_row = [&](const std::vector<std::pair<std::size_t, double>> &terms, double b) -> bool
        {
            arma::rowvec r(nf, arma::fill::zeros);
            bool any_free = false;
            for (const auto &[v, coef] : terms)
            {
                if (fixed[v] < 0)
                {
                    r(col[v]) += coef;
                    any_free = true;
                }
                else
                    b -= coef * value_of(v);
            }
            if (!any_free)
                return b >= -1e-9;
            rows.push_back(std::move(r));
            rhs.push_back(b);
            return true;
        };

        std::vector<std::pair<std::size_t, double>> terms;
        for (std::size_t a = 0; a < A_; ++a)
        {
            terms.clear();
            terms.emplace_back(K_ + a, 1.0);
            for (std::size_t k = 0; k < K_; ++k)
                if (g_.W(a, k))
                    terms.emplace_back(k, -1.0);
            if (!add_row(terms, 0.0))
                return false;
        }
        for (std::size_t k = 0; k < K_; ++k)
        {
            terms.clear();
            terms.emplace_back(k, 1.0);
            for (std::size_t a = 0; a < A_; ++a)
                if (g_.W(a, k))
                    terms.emplace_back(K_ + a, -1.0);
            if (!add_row(terms, 0.0))
                return false;

            // Big-M tightened to deg_k - T: identical over binaries since the left side never
            // exceeds deg_k.
            if (degree_[k] > T_)
            {
                terms.clear();
                for (std::size_t a = 0; a < A_; ++a)
                    if (g_.W(a, k))
                        terms.emplace_back(K_ + a, 1.0);
                terms.emplace_back(k, static_cast<double>(degree_[k] - T_));
                if (!add_row(terms, static_cast<double>(degree_[k])))
                    return false;
            }
        }

        double fixed_value = 0.0;
        for (std::size_t v = 0; v < n_; ++v)
            fixed_value += weight_(v) * value_of(v);

        x.assign(n_, 0.0);
        for (std::size_t v = 0; v < n_; ++v)
            if (fixed[v] >= 0)
                x[v] = fixed[v];
        if (nf == 0)
        {
            bound = fixed_value;
            return true;
        }

        arma::vec c(nf), upper(nf, arma::fill::ones);
        for (std::size_t j = 0; j < nf; ++j)
            c(j) = weight_(free_vars[j]);
        if (rows.empty())
        {
            for (std::size_t j = 0; j < nf; ++j)
                x[free_vars[j]] = 1.0;
            bound = fixed_value + arma::accu(c);
            return true;
        }
        arma::mat Amat(rows.size(), nf);
        for (std::size_t i = 0; i < rows.size(); ++i)
            Amat.row(i) = rows[i];
        const LpResult lp = solve_lp(Amat, arma::vec(rhs), c, upper);
        ++lp_solves;
        if (lp.status == LpStatus::infeasible)
            return false;
        if (lp.status != LpStatus::optimal)
            throw std::runtime_error("solve_ilp: LP relaxation did not reach optimality");
        for (std::size_t j = 0; j < nf; ++j)
            x[free_vars[j]] = std::clamp(lp.x(j), 0.0, 1.0);
        bound = fixed_value + lp.objective;
        return true;
    }

    const BeamUserGraph &g_;
    std::size_t T_;
    IlpOptions opts_;
    std::size_t A_, K_, n_;
    arma::vec weight_;
    std::vector<std::size_t> degree_;
};

IlpSolution to_solution(const std::vector<char> &x, std::size_t K, std::size_t A)
{
    IlpSolution s;
    s.u.assign(x.begin(), x.begin() + static_cast<long>(K));
    s.z.assign(x.begin() + static_cast<long>(K), x.begin() + static_cast<long>(K + A));
    s.objective = count_ones(s.z) + count_ones(s.u);
    return s;
}

} // namespace

IlpSolution solve_ilp_greedy(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas)
{
    const std::size_t K = graph.user_count();
    std::vector<char> served(K, 0);
    for (std::size_t k = 0; k < K; ++k)
        served[k] = graph.degree_of_user(k) > 0;

    std::vector<char> best_z, best_u;
    greedy_fill(graph, pilot_dim, served, best_z, best_u);

    // drop users one at a time while that improves the selection
    bool improved = true;
    while (improved)
    {
        improved = false;
        for (std::size_t k = 0; k < K; ++k)
        {
            if (!best_u[k])
                continue;
            std::vector<char> trial = best_u;
            trial[k] = 0;
            std::vector<char> z, u;
            greedy_fill(graph, pilot_dim, trial, z, u);
            if (better_solution(z, u, best_z, best_u))
            {
                best_z = z;
                best_u = u;
                improved = true;
            }
        }
    }

    IlpSolution s;
    s.z = best_z;
    s.u = best_u;
    s.objective = count_ones(s.z) + count_ones(s.u);
    s.heuristic = true;
    if (!ilp_feasible(graph, s.z, s.u, pilot_dim, antennas))
        throw std::logic_error("solve_ilp_greedy: produced an infeasible selection");
    return s;
}

IlpSolution solve_ilp(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas, const IlpOptions &opts)
{
    if (pilot_dim < 1)
        throw std::invalid_argument("solve_ilp: pilot dimension must be >= 1");
    const std::size_t A = graph.beam_count(), K = graph.user_count(), n = A + K;
    if (graph.W.n_rows != A || graph.W.n_cols != K)
        throw std::invalid_argument("solve_ilp: adjacency does not match the graph");

    const IlpSolution greedy = solve_ilp_greedy(graph, pilot_dim, antennas);
    if (n > opts.max_variables)
        return greedy;

    BranchAndBound bnb(graph, pilot_dim, opts);

    std::vector<signed char> fixed(n, -1);
    for (std::size_t k = 0; k < K; ++k)
        if (graph.degree_of_user(k) == 0)
            fixed[k] = 0;

    std::vector<char> best(n);
    std::copy(greedy.u.begin(), greedy.u.end(), best.begin());
    std::copy(greedy.z.begin(), greedy.z.end(), best.begin() + static_cast<long>(K));
    long best_value = bnb.combined(best);

    bool complete = bnb.search(fixed, best_value + 1, false, best, best_value);

    if (complete && opts.canonical_ties)
    {
        // Walk the beams in tie order and keep z_a = 1 whenever some optimum allows it.
        const std::vector<std::size_t> order = tie_order(opts.beam_priority, A);
        for (std::size_t i = 0; i < A && complete; ++i)
        {
            const std::size_t a = order[i];
            const std::size_t v = K + a;
            if (best[v])
            {
                fixed[v] = 1;
                continue;
            }
            std::vector<signed char> trial = fixed;
            trial[v] = 1;
            std::vector<char> found;
            long found_value = 0;
            complete = bnb.search(trial, best_value, true, found, found_value);
            if (!found.empty())
            {
                best = found;
                fixed[v] = 1;
            }
            else
                fixed[v] = 0;
        }
    }

    IlpSolution s = to_solution(best, K, A);
    s.nodes = bnb.nodes;
    s.lp_solves = bnb.lp_solves;
    s.proven_optimal = complete;
    // node cap: the incumbent is reported, never worse than the greedy start
    s.heuristic = !complete;
    if (!ilp_feasible(graph, s.z, s.u, pilot_dim, antennas))
        throw std::logic_error("solve_ilp: incumbent violates the constraints");
    return s;
}

IlpSolution solve_ilp_exhaustive(const BeamUserGraph &graph, std::size_t pilot_dim, std::size_t antennas,
                                 const std::vector<std::size_t> &beam_priority)
{
    const std::size_t A = graph.beam_count(), K = graph.user_count(), n = A + K;
    if (n > 24)
        throw std::invalid_argument("solve_ilp_exhaustive: at most 24 binaries");
    const std::vector<std::size_t> order = tie_order(beam_priority, A);

    std::vector<std::uint32_t> users_of_beam(A, 0), beams_of_user(K, 0);
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t k = 0; k < K; ++k)
            if (graph.W(a, k))
            {
                users_of_beam[a] |= 1u << k;
                beams_of_user[k] |= 1u << a;
            }

    auto lex_better = [&order](std::uint32_t z1, std::uint32_t z2)
    {
        for (auto a : order)
            if (((z1 ^ z2) >> a) & 1u)
                return ((z1 >> a) & 1u) != 0;
        return false;
    };

    long best_obj = -1, best_users = -1;
    std::uint32_t best_u = 0, best_z = 0;
    for (std::uint32_t um = 0; um < (1u << K); ++um)
        for (std::uint32_t zm = 0; zm < (1u << A); ++zm)
        {
            bool ok = true;
            for (std::size_t a = 0; a < A && ok; ++a)
                if ((zm >> a) & 1u)
                    ok = (users_of_beam[a] & um) != 0;
            for (std::size_t k = 0; k < K && ok; ++k)
            {
                const long probed = std::popcount(beams_of_user[k] & zm);
                const long served = (um >> k) & 1u;
                if (served && probed == 0)
                    ok = false;
                else
                    ok = probed <= static_cast<long>(antennas) * (1 - served) + static_cast<long>(pilot_dim);
            }
            if (!ok)
                continue;
            const long users = std::popcount(um);
            const long obj = std::popcount(zm) + users;
            if (obj > best_obj || (obj == best_obj && users > best_users) ||
                (obj == best_obj && users == best_users && lex_better(zm, best_z)))
            {
                best_obj = obj;
                best_users = users;
                best_u = um;
                best_z = zm;
            }
        }

    IlpSolution s;
    s.z.resize(A);
    s.u.resize(K);
    for (std::size_t a = 0; a < A; ++a)
        s.z[a] = (best_z >> a) & 1u;
    for (std::size_t k = 0; k < K; ++k)
        s.u[k] = (best_u >> k) & 1u;
    s.objective = best_obj;
    s.proven_optimal = true;
    return s;
}

// ---------- plan ----------

SparsificationPlan build_plan(const BeamUserGraph &graph, const std::vector<char> &z, const std::vector<char> &u,
                              const arma::cx_mat &F, std::size_t pilot_dim)
{
    const std::size_t M = F.n_rows;
    if (!ilp_feasible(graph, z, u, pilot_dim, M))
        throw std::invalid_argument("build_plan: (z, u) violates the sparsification constraints");

    SparsificationPlan plan;
    plan.z = z;
    plan.u = u;
    plan.objective = count_ones(z) + count_ones(u);
    for (std::size_t a = 0; a < graph.beam_count(); ++a)
        if (z[a])
            plan.selected_beams.push_back(graph.beams[a]);

    plan.B.set_size(plan.selected_beams.size(), M);
    for (std::size_t r = 0; r < plan.selected_beams.size(); ++r)
        plan.B.row(r) = F.col(plan.selected_beams[r]).t();

    for (std::size_t k = 0; k < graph.user_count(); ++k)
    {
        if (!u[k])
            continue;
        std::vector<std::size_t> positions;
        std::size_t pos = 0;
        for (std::size_t a = 0; a < graph.beam_count(); ++a)
        {
            if (!z[a])
                continue;
            ++pos;
            if (graph.W(a, k))
                positions.push_back(pos);
        }
        if (positions.size() > pilot_dim)
            throw std::logic_error("build_plan: effective dimension exceeds the pilot dimension");
        plan.served_users.push_back(graph.users[k]);
        plan.omega[graph.users[k]] = std::move(positions);
    }
    return plan;
}

// ---------- instance files ----------

void write_instance(std::ostream &os, const IlpInstance &inst)
{
    const auto &g = inst.graph;
    os << "fddmimo-ilp 1\n";
    os << "antennas " << inst.antennas << "\n";
    os << "pilot_dim " << inst.pilot_dim << "\n";
    os << "beams " << g.beams.size();
    for (auto b : g.beams)
        os << ' ' << b;
    os << "\nusers " << g.users.size();
    for (auto k : g.users)
        os << ' ' << k;
    os << "\nedges " << arma::accu(g.W) << "\n";
    for (std::size_t a = 0; a < g.beam_count(); ++a)
        for (std::size_t k = 0; k < g.user_count(); ++k)
            if (g.W(a, k))
                os << a << ' ' << k << " 1\n";
}

namespace
{
std::string next_line(std::istream &is)
{
    std::string line;
    while (std::getline(is, line))
    {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        return line;
    }
    throw std::runtime_error("read_instance: unexpected end of input");
}

void expect_key(std::istringstream &ss, const std::string &key)
{
    std::string got;
    ss >> got;
    if (got != key)
        throw std::runtime_error("read_instance: expected '" + key + "', found '" + got + "'");
}
} // namespace

IlpInstance read_instance(std::istream &is)
{
    IlpInstance inst;
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "fddmimo-ilp");
        int version = 0;
        ss >> version;
        if (version != 1)
            throw std::runtime_error("read_instance: unsupported version");
    }
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "antennas");
        ss >> inst.antennas;
    }
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "pilot_dim");
        ss >> inst.pilot_dim;
    }
    std::size_t A = 0, K = 0, E = 0;
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "beams");
        ss >> A;
        inst.graph.beams.resize(A);
        for (auto &b : inst.graph.beams)
            ss >> b;
        if (!ss)
            throw std::runtime_error("read_instance: malformed beams line");
    }
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "users");
        ss >> K;
        inst.graph.users.resize(K);
        for (auto &k : inst.graph.users)
            ss >> k;
        if (!ss)
            throw std::runtime_error("read_instance: malformed users line");
    }
    {
        std::istringstream ss(next_line(is));
        expect_key(ss, "edges");
        ss >> E;
    }
    inst.graph.W.zeros(A, K);
    for (std::size_t e = 0; e < E; ++e)
    {
        std::istringstream ss(next_line(is));
        std::size_t a = 0, k = 0;
        int w = 0;
        ss >> a >> k >> w;
        if (!ss || a >= A || k >= K || (w != 0 && w != 1))
            throw std::runtime_error("read_instance: malformed edge on line " + std::to_string(e + 1));
        inst.graph.W(a, k) = static_cast<arma::uword>(w);
    }
    if (!std::is_sorted(inst.graph.beams.begin(), inst.graph.beams.end()))
        throw std::runtime_error("read_instance: beams must be sorted");
    return inst;
}

} // namespace fddmimo

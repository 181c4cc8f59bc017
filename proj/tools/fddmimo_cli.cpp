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

// Command-line front end: full sweeps, single-user support demos, ILP instance solving and
// brute-force cross-checks.

#include "fddmimo/channel.hpp"
#include "fddmimo/harness.hpp"
#include "fddmimo/sparsify.hpp"
#include "fddmimo/support.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace fddmimo;

namespace
{

struct Common
{
    std::string config;
    std::string scale = "desk";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--config", c.config, "key = value configuration file");
    cmd->add_option("--scale", c.scale, "base profile")->check(CLI::IsMember({"desk", "full"}));
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores");
    cmd->add_option("--set", c.overrides, "extra key=value overrides, applied last");
}

ExperimentSetup resolve(const Common &c)
{
    ExperimentSetup s = c.scale == "full" ? ExperimentSetup::full() : ExperimentSetup::desk();
    if (!c.config.empty())
        s = load_setup(c.config, s);
    if (c.seed)
        s.spec.master_seed = *c.seed;
    if (c.threads)
        s.spec.threads = *c.threads;
    for (const auto &kv : c.overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    s.cfg.set_ul_snr_db(s.spec.ul_snr_db);
    s.spec.validate(s.cfg);
    return s;
}

std::string join(const std::vector<std::size_t> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

int cmd_run(const Common &c, const std::string &out)
{
    const ExperimentSetup s = resolve(c);
    const ExperimentReport rep = run_experiment(s.spec, s.cfg);
    if (out.empty() || out == "-")
        write_report(rep, std::cout);
    else
    {
        write_report(rep, std::filesystem::path(out));
        if (s.spec.record_timing)
            write_timings(rep, std::filesystem::path(out + ".timing.csv"));
        std::cerr << "wrote " << rep.rows.size() << " rows to " << out << "\n";
    }
    if (rep.failures() > 0)
    {
        std::cerr << rep.failures() << " cell(s) failed\n";
        return 1;
    }
    return 0;
}

int cmd_support(const Common &c, std::size_t seed, std::size_t user)
{
    const ExperimentSetup s = resolve(c);
    if (user >= s.cfg.users)
        throw std::invalid_argument("user index out of range");
    const std::uint64_t sm = seed_master(s.spec.master_seed, seed);
    const Geometry g = draw_geometry(s.cfg, s.spec, sm);
    const arma::cx_mat F = dft_matrix(s.cfg.antennas);
    const SupportEstimate est = estimate_user_support(s.cfg, s.spec, g.profiles[user], F, sm, user);
    const SupportSet truth = theoretical_support(s.cfg, g.profiles[user], Band::downlink);

    std::printf("clusters:");
    for (const auto &iv : g.profiles[user].support())
        std::printf(" [%.4f, %.4f)", iv.lo, iv.hi);
    std::printf("\nul support (%zu): %s\n", est.ul.size(), join(est.ul.indices()).c_str());
    std::printf("angular support:");
    for (const auto &iv : est.angular)
        std::printf(" [%.4f, %.4f]", iv.lo, iv.hi);
    std::printf("\ndl support (%zu): %s\n", est.dl.size(), join(est.dl.indices()).c_str());
    std::printf("dl theoretical (%zu): %s\n", truth.size(), join(truth.indices()).c_str());
    std::printf("contains theoretical: %s, excess %zu\n", est.dl.includes(truth) ? "yes" : "no",
                est.dl.excess_over(truth));
    return est.mmv_converged ? 0 : 1;
}

int cmd_ilp(const std::string &path, bool exhaustive)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    const IlpInstance inst = read_instance(in);
    const IlpSolution sol = exhaustive ? solve_ilp_exhaustive(inst.graph, inst.pilot_dim, inst.antennas)
                                       : solve_ilp(inst.graph, inst.pilot_dim, inst.antennas);
    std::vector<std::size_t> beams, users;
    for (std::size_t a = 0; a < sol.z.size(); ++a)
        if (sol.z[a])
            beams.push_back(inst.graph.beams[a]);
    for (std::size_t k = 0; k < sol.u.size(); ++k)
        if (sol.u[k])
            users.push_back(inst.graph.users[k]);
    std::printf("objective %ld\nbeams %s\nusers %s\nproven_optimal %d nodes %zu lp_solves %zu\n", sol.objective,
                join(beams).c_str(), join(users).c_str(), sol.proven_optimal ? 1 : 0, sol.nodes, sol.lp_solves);
    return sol.proven_optimal ? 0 : 1;
}

// Random small instances solved both ways, plus an analytic-vs-sampled variance check.
int cmd_oracle(std::uint64_t seed, std::size_t instances)
{
    Rng rng = make_stream(seed, "oracle");
    std::uniform_int_distribution<int> beams_d(2, 12), users_d(1, 8), T_d(1, 5);
    std::bernoulli_distribution edge(0.35);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < instances; ++i)
    {
        const std::size_t A = beams_d(rng), K = std::min<std::size_t>(users_d(rng), 20 - A);
        BeamUserGraph g;
        g.beams.resize(A);
        for (std::size_t a = 0; a < A; ++a)
            g.beams[a] = a;
        g.users.resize(K);
        for (std::size_t k = 0; k < K; ++k)
            g.users[k] = k;
        g.W.zeros(A, K);
        for (std::size_t a = 0; a < A; ++a)
            for (std::size_t k = 0; k < K; ++k)
                g.W(a, k) = edge(rng);
        const std::size_t T = T_d(rng);
        const IlpSolution bb = solve_ilp(g, T, 64), ex = solve_ilp_exhaustive(g, T, 64);
        const bool same = bb.objective == ex.objective && bb.z == ex.z && bb.u == ex.u;
        mismatches += !same;
        std::printf("ilp %3zu  A=%2zu K=%2zu T=%zu  bb=%ld exhaustive=%ld %s\n", i, A, K, T, bb.objective,
                    ex.objective, same ? "match" : "MISMATCH");
    }

    SystemConfig cfg = SystemConfig::desk();
    const ScatteringProfile prof =
        ScatteringProfile::uniform_clusters({{-0.4, -0.2}, {0.3, 0.45}}, cfg.theta_max);
    const arma::vec v = variance_vector(cfg, prof, Band::uplink);
    const ChannelSampler sampler(cfg, prof, Band::uplink);
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    Rng crng = make_stream(seed, "oracle-channels");
    const std::size_t draws = 4000;
    arma::vec emp(cfg.antennas, arma::fill::zeros);
    for (std::size_t t = 0; t < draws; ++t)
        emp += arma::square(arma::abs(F.t() * sampler.draw(crng)));
    emp /= static_cast<double>(draws);
    double worst = 0.0;
    for (arma::uword i = 0; i < v.n_elem; ++i)
        if (v(i) > 0.01 * v.max())
            worst = std::max(worst, std::abs(emp(i) - v(i)) / v(i));
    std::printf("variance worst relative error on significant indices: %.4f (%zu draws)\n", worst, draws);
    return mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"fddmimo: support-aware downlink training simulator"};
    app.require_subcommand(1);

    Common common;
    std::string out;
    auto *run = app.add_subcommand("run", "full sweep over T and DL SNR, CSV output");
    add_common(run, common);
    run->add_option("--out,-o", out, "CSV path, '-' for stdout");

    std::size_t seed_index = 0, user = 0;
    auto *support = app.add_subcommand("support", "UL to DL support estimate for one user");
    add_common(support, common);
    support->add_option("--geometry-seed", seed_index, "geometry seed index");
    support->add_option("--user", user, "user index");

    std::string instance;
    bool exhaustive = false;
    auto *ilp = app.add_subcommand("ilp", "solve a dumped sparsification instance");
    ilp->add_option("instance", instance, "instance file")->required();
    ilp->add_flag("--exhaustive", exhaustive, "enumerate instead of branch-and-bound");

    std::uint64_t oracle_seed = 1;
    std::size_t instances = 20;
    auto *oracle = app.add_subcommand("oracle", "brute-force ILP and variance cross-checks");
    oracle->add_option("--seed", oracle_seed, "random seed");
    oracle->add_option("--instances", instances, "random ILP instances");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(common, out);
        if (*support)
            return cmd_support(common, seed_index, user);
        if (*ilp)
            return cmd_ilp(instance, exhaustive);
        if (*oracle)
            return cmd_oracle(oracle_seed, instances);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

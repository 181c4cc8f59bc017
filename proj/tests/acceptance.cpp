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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
//   acceptance [desk.csv]
//
// The optional argument receives the report of the desk-scale ordering sweep.

#include "fddmimo/channel.hpp"
#include "fddmimo/harness.hpp"
#include "fddmimo/precode.hpp"
#include "fddmimo/probe.hpp"
#include "fddmimo/sparsify.hpp"
#include "fddmimo/support.hpp"

#include <armadillo>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fddmimo;

namespace
{

// ---------- pinned tolerances ----------
constexpr std::size_t ordering_seeds = 20;
constexpr std::size_t ordering_trials = 200;
constexpr double ordering_seed_fraction = 0.90;

constexpr int support_trials = 100;
constexpr int support_required = 95;
constexpr std::size_t support_max_excess = 4;

constexpr int ilp_instances = 50;
constexpr std::size_t ilp_max_binaries = 20;
constexpr double ilp_max_seconds = 1.0;

constexpr std::size_t variance_antennas = 64;
constexpr int variance_profiles = 3;
constexpr arma::uword variance_draws = 10000;
constexpr double variance_significant = 0.01; // fraction of the largest entry
constexpr double variance_rel_tol = 0.05;

constexpr int roundtrip_cases = 50;
constexpr double ls_rel_tol = 1e-9;
constexpr double zf_rel_tol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(bool pass, const std::string &name, const std::string &detail)
{
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

template <class... Args>
std::string format(const char *fmt, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

std::string csv_of(const ExperimentReport &r)
{
    std::ostringstream os;
    write_report(r, os);
    return os.str();
}

// ---------- ordering ----------

ExperimentReport ordering(const std::string &csv_path)
{
    ExperimentSetup s = ExperimentSetup::desk();
    s.spec.geometry_seeds = ordering_seeds;
    s.spec.rate_trials = ordering_trials;
    s.spec.dl_snr_db = {0.0, 10.0};
    const std::size_t s_max = s.spec.s_max(s.cfg);

    const auto t0 = Clock::now();
    const ExperimentReport rep = run_experiment(s.spec, s.cfg);
    const double elapsed = seconds_since(t0);
    if (!csv_path.empty())
        write_report(rep, csv_path);

    // (seed, T, snr) -> value
    std::map<std::tuple<std::size_t, std::size_t, double>, double> lb, ub;
    for (const auto &r : rep.rows)
    {
        const auto key = std::make_tuple(r.seed, r.pilot_dim, r.dl_snr_db);
        if (r.method == "proposed" && r.status.rfind("failed", 0) != 0)
            lb[key] = r.sum_lb;
        else if (r.method == "jomp" && r.status.rfind("failed", 0) != 0)
            ub[key] = r.sum_ub;
    }

    std::size_t good_seeds = 0, cells = 0, good_cells = 0;
    for (std::size_t seed = 0; seed < ordering_seeds; ++seed)
    {
        bool all = true;
        for (auto T : s.spec.pilot_dims)
        {
            if (T >= s_max)
                continue;
            for (double snr : s.spec.dl_snr_db)
            {
                const auto key = std::make_tuple(seed, T, snr);
                const bool ok = lb.count(key) && ub.count(key) && lb[key] > ub[key];
                ++cells;
                good_cells += ok;
                all = all && ok;
            }
        }
        good_seeds += all;
    }
    const double fraction = static_cast<double>(good_seeds) / static_cast<double>(ordering_seeds);
    report(fraction >= ordering_seed_fraction, "ordering",
           format("proposed lb > jomp ub for every T < s_max=%zu at DL SNR {0,10} dB in %zu/%zu seeds "
                  "(need >= %.0f%%), %zu/%zu cells, %.1f s",
                  s_max, good_seeds, ordering_seeds, 100.0 * ordering_seed_fraction, good_cells, cells, elapsed));
    return rep;
}

// ---------- support fidelity ----------

void support_fidelity()
{
    const SystemConfig cfg = SystemConfig::standard();
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    const double w = 2.0 * cfg.theta_max / 10.0;
    std::uniform_real_distribution<double> place(-cfg.theta_max, cfg.theta_max - w);
    int good = 0;
    std::size_t worst = 0;
    for (int t = 0; t < support_trials; ++t)
    {
        Rng rng = make_stream(2024, "acceptance-support", 0, static_cast<std::uint64_t>(t));
        const double lo = place(rng);
        const ScatteringProfile p = ScatteringProfile::uniform_clusters({{lo, lo + w}}, cfg.theta_max);
        const ChannelSampler ul(cfg, p, Band::uplink);
        const SupportEstimate est = estimate_dl_support(cfg, simulate_uplink(cfg, ul, rng), F);
        const SupportSet truth = theoretical_support(cfg, p, Band::downlink);
        const bool contains = est.dl.includes(truth);
        const std::size_t excess = contains ? est.dl.excess_over(truth) : 0;
        if (contains)
            worst = std::max(worst, excess);
        good += contains && excess <= support_max_excess;
    }
    report(good >= support_required, "support-fidelity",
           format("estimate contains the true DL support with excess <= %zu in %d/%d trials (need >= %d), "
                  "largest excess among containing trials %zu",
                  support_max_excess, good, support_trials, support_required, worst));
}

// ---------- ILP exactness ----------

BeamUserGraph random_graph(std::size_t A, std::size_t K, double density, Rng &rng)
{
    std::bernoulli_distribution edge(density);
    BeamUserGraph g;
    for (std::size_t a = 0; a < A; ++a)
        g.beams.push_back(2 * a + 5);
    for (std::size_t k = 0; k < K; ++k)
        g.users.push_back(k);
    g.W.zeros(A, K);
    for (std::size_t a = 0; a < A; ++a)
    {
        for (std::size_t k = 0; k < K; ++k)
            g.W(a, k) = edge(rng);
        if (arma::accu(g.W.row(a)) == 0)
            g.W(a, std::uniform_int_distribution<std::size_t>(0, K - 1)(rng)) = 1;
    }
    return g;
}

void ilp_exactness()
{
    Rng rng = make_stream(2024, "acceptance-ilp");
    std::uniform_real_distribution<double> dens(0.2, 0.7);
    int exact = 0;
    double slowest = 0.0;
    long worst_gap = 0;
    for (int i = 0; i < ilp_instances; ++i)
    {
        const std::size_t A = std::uniform_int_distribution<std::size_t>(4, 14)(rng);
        const std::size_t K = std::uniform_int_distribution<std::size_t>(2, ilp_max_binaries - A)(rng);
        const std::size_t T = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const BeamUserGraph g = random_graph(A, K, dens(rng), rng);

        const auto t0 = Clock::now();
        const IlpSolution bb = solve_ilp(g, T, 64);
        const double dt = seconds_since(t0);
        const IlpSolution ex = solve_ilp_exhaustive(g, T, 64);

        slowest = std::max(slowest, dt);
        worst_gap = std::max(worst_gap, std::abs(ex.objective - bb.objective));
        exact += bb.proven_optimal && bb.objective == ex.objective && ilp_feasible(g, bb.z, bb.u, T, 64) &&
                 dt < ilp_max_seconds;
    }
    report(exact == ilp_instances, "ilp-exactness",
           format("branch-and-bound equals exhaustive search on %d/%d instances with |A|+K <= %zu, "
                  "largest gap %ld, slowest %.4f s (limit %.1f s)",
                  exact, ilp_instances, ilp_max_binaries, worst_gap, slowest, ilp_max_seconds));
}

// ---------- variance oracle ----------

ScatteringProfile random_profile(double theta_max, Rng &rng)
{
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> width(0.05, 0.3), density(0.5, 3.0);
    const int n = count(rng);
    std::vector<ScatteringCluster> clusters;
    for (int c = 0; c < n; ++c)
    {
        const double wd = width(rng);
        const double lo = std::uniform_real_distribution<double>(-theta_max, theta_max - wd)(rng);
        clusters.push_back({lo, lo + wd, density(rng)});
    }
    return ScatteringProfile(clusters, theta_max);
}

void variance_oracle()
{
    SystemConfig cfg = SystemConfig::standard();
    cfg.antennas = variance_antennas;
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    Rng rng = make_stream(2024, "acceptance-variance");

    std::size_t checked = 0, within = 0;
    double worst = 0.0;
    for (int p = 0; p < variance_profiles; ++p)
    {
        const ScatteringProfile prof = random_profile(cfg.theta_max, rng);
        for (Band b : {Band::uplink, Band::downlink})
        {
            const arma::vec v = variance_vector(cfg, prof, b);
            const ChannelSampler sampler(cfg, prof, b);
            const arma::cx_mat H = F.t() * sampler.draw_block(variance_draws, rng);
            const arma::vec emp = arma::sum(arma::square(arma::abs(H)), 1) / static_cast<double>(variance_draws);
            for (arma::uword i = 0; i < v.n_elem; ++i)
            {
                if (v(i) < variance_significant * v.max())
                    continue;
                const double rel = std::abs(emp(i) - v(i)) / v(i);
                worst = std::max(worst, rel);
                ++checked;
                within += rel <= variance_rel_tol;
            }
        }
    }
    report(within == checked && checked > 0, "variance-oracle",
           format("%zu/%zu significant indices (>= %.0f%% of peak) within %.0f%% over %d profiles x 2 bands, "
                  "M=%zu, %llu draws, worst %.2f%%",
                  within, checked, 100.0 * variance_significant, 100.0 * variance_rel_tol, variance_profiles,
                  variance_antennas, static_cast<unsigned long long>(variance_draws), 100.0 * worst));
}

// ---------- noiseless round trip ----------

void noiseless_round_trip()
{
    Rng rng = make_stream(2024, "acceptance-roundtrip");
    double worst_ls = 0.0, worst_zf = 0.0;
    for (int c = 0; c < roundtrip_cases; ++c)
    {
        const std::size_t M = 32;
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
        const std::size_t T = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        const std::size_t s = std::uniform_int_distribution<std::size_t>(1, T)(rng);

        // n beams of the DFT, a channel living on s of them
        std::vector<std::size_t> beams(M);
        for (std::size_t i = 0; i < M; ++i)
            beams[i] = i;
        std::shuffle(beams.begin(), beams.end(), rng);
        beams.resize(n);
        std::sort(beams.begin(), beams.end());
        const arma::cx_mat F = dft_matrix(M);
        arma::cx_mat B(n, M);
        for (std::size_t a = 0; a < n; ++a)
            B.row(a) = F.col(beams[a]).t();

        std::vector<std::size_t> pos(n);
        for (std::size_t a = 0; a < n; ++a)
            pos[a] = a + 1;
        std::shuffle(pos.begin(), pos.end(), rng);
        std::vector<std::size_t> omega(pos.begin(), pos.begin() + static_cast<long>(s));
        std::sort(omega.begin(), omega.end());

        arma::cx_vec x(M, arma::fill::zeros);
        const arma::cx_vec gains = complex_gaussian(s, rng);
        for (std::size_t j = 0; j < s; ++j)
            x(beams[omega[j] - 1]) = gains(j);
        const arma::cx_vec h = F * x;
        const arma::cx_vec h_eff = B * h;

        const ProbingMatrix probing = generate_probing(T, n, 10.0, rng);
        const arma::cx_vec y = receive_pilots(probing, B, h, 0.0, rng);
        const EffectiveChannelEstimate est = estimate_effective(y, probing, omega);
        worst_ls = std::max(worst_ls, arma::norm(est.h_eff_hat - h_eff, 2) / arma::norm(h_eff, 2));

        // ZF on perfect CSI of K generic users
        const std::size_t K = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        const arma::cx_mat H = complex_gaussian(M, K, rng);
        const ZfPrecoder zf = build_zf(H);
        const arma::cx_mat G = H.t() * zf.columns;
        for (arma::uword k = 0; k < K; ++k)
            for (arma::uword j = 0; j < K; ++j)
                if (j != k)
                    worst_zf = std::max(worst_zf, std::abs(G(k, j)) / std::abs(G(k, k)));
    }
    report(worst_ls < ls_rel_tol && worst_zf < zf_rel_tol, "noiseless-round-trip",
           format("worst LS relative residual %.2e (limit %.0e), worst ZF inter-user gain %.2e relative "
                  "(limit %.0e), %d cases",
                  worst_ls, ls_rel_tol, worst_zf, zf_rel_tol, roundtrip_cases));
}

// ---------- bound sandwich and determinism ----------

ExperimentSetup small_sweep()
{
    ExperimentSetup s = ExperimentSetup::desk();
    s.spec.geometry_seeds = 3;
    s.spec.rate_trials = 40;
    s.spec.pilot_dims = {4, 12, 24, s.cfg.block_size};
    s.spec.dl_snr_db = {0.0, 10.0};
    return s;
}

void bound_sandwich(const ExperimentReport &desk, const ExperimentReport &small, std::size_t block_size)
{
    std::size_t rows = 0, ordered = 0, full_rows = 0, full_zero = 0;
    for (const ExperimentReport *rep : {&desk, &small})
        for (const auto &r : rep->rows)
        {
            if (r.status.rfind("failed", 0) == 0)
                continue;
            ++rows;
            ordered += r.sum_lb <= r.sum_ub;
            if (r.pilot_dim == block_size)
            {
                ++full_rows;
                full_zero += r.sum_lb == 0.0 && r.sum_ub == 0.0;
            }
        }
    report(ordered == rows && rows > 0 && full_rows > 0 && full_zero == full_rows, "bound-sandwich",
           format("sum_lb <= sum_ub on %zu/%zu rows, T = N_c = %zu rows exactly zero on %zu/%zu",
                  ordered, rows, block_size, full_zero, full_rows));
}

void determinism(const ExperimentSetup &s, const std::string &first)
{
    const std::string second = csv_of(run_experiment(s.spec, s.cfg));
    ExperimentSetup serial = s;
    serial.spec.threads = 1;
    const std::string third = csv_of(run_experiment(serial.spec, serial.cfg));
    report(first == second && first == third, "determinism",
           format("repeated run %s, single-threaded run %s (%zu bytes)",
                  first == second ? "byte-identical" : "differs", first == third ? "byte-identical" : "differs",
                  first.size()));
}

} // namespace

int main(int argc, char **argv)
{
    const std::string csv_path = argc > 1 ? argv[1] : "";
    const auto guard = [](const char *name, auto &&fn)
    {
        try
        {
            fn();
        }
        catch (const std::exception &e)
        {
            report(false, name, std::string("exception: ") + e.what());
        }
    };

    guard("support-fidelity", support_fidelity);
    guard("ilp-exactness", ilp_exactness);
    guard("variance-oracle", variance_oracle);
    guard("noiseless-round-trip", noiseless_round_trip);

    ExperimentReport desk, small;
    const ExperimentSetup sweep = small_sweep();
    guard("ordering", [&] { desk = ordering(csv_path); });
    guard("bound-sandwich", [&]
          {
              small = run_experiment(sweep.spec, sweep.cfg);
              bound_sandwich(desk, small, sweep.cfg.block_size);
          });
    guard("determinism", [&] { determinism(sweep, csv_of(small)); });

    std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}

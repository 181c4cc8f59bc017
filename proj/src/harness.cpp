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

#include "fddmimo/harness.hpp"
#include "fddmimo/jomp.hpp"
#include "fddmimo/precode.hpp"
#include "fddmimo/probe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fddmimo
{

// ---------- scenario ----------

double ScenarioSpec::width(const SystemConfig &cfg) const
{
    return cluster_width > 0.0 ? cluster_width : 2.0 * cfg.theta_max / 10.0;
}

std::size_t ScenarioSpec::s_max(const SystemConfig &cfg) const
{
    const double per_cluster = static_cast<double>(cfg.antennas) * width(cfg) / (2.0 * cfg.theta_max);
    return cluster_count * static_cast<std::size_t>(std::lround(per_cluster));
}

void ScenarioSpec::validate(const SystemConfig &cfg) const
{
    cfg.validate();
    if (cluster_count < 1)
        throw std::invalid_argument("scenario: cluster_count must be >= 1");
    const double w = width(cfg);
    if (!(w > 0.0) || static_cast<double>(cluster_count) * w > 2.0 * cfg.theta_max)
        throw std::invalid_argument("scenario: clusters do not fit inside the angular range");
    if (geometry_seeds < 1 || rate_trials < 1)
        throw std::invalid_argument("scenario: seed and trial counts must be >= 1");
    if (pilot_dims.empty() || dl_snr_db.empty())
        throw std::invalid_argument("scenario: empty sweep list");
    for (auto T : pilot_dims)
        if (T < 1 || T > cfg.block_size)
            throw std::invalid_argument("scenario: pilot dimension outside 1..block_size");
    if (!(threshold_factor > 0.0) || threshold_factor > 1.0)
        throw std::invalid_argument("scenario: threshold factor must lie in (0, 1]");
    if (feedback_noise_var < 0.0)
        throw std::invalid_argument("scenario: negative feedback noise variance");
}

ExperimentSetup ExperimentSetup::full()
{
    ExperimentSetup s;
    s.cfg = SystemConfig::standard();
    return s;
}

ExperimentSetup ExperimentSetup::desk()
{
    ExperimentSetup s;
    s.cfg = SystemConfig::desk();
    s.spec.cluster_count = 2;
    s.spec.pilot_dims = {4, 6, 8, 10, 12, 16, 24};
    return s;
}

// ---------- configuration files ----------

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &v)
{
    std::size_t used = 0;
    double x = 0.0;
    try
    {
        x = std::stod(v, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(x))
        throw std::invalid_argument("setting '" + key + "': expected a number, got '" + v + "'");
    return x;
}

std::size_t to_size(const std::string &key, const std::string &v)
{
    std::size_t used = 0;
    unsigned long long x = 0;
    try
    {
        x = std::stoull(v, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != v.size() || v.front() == '-')
        throw std::invalid_argument("setting '" + key + "': expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(x);
}

bool to_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw std::invalid_argument("setting '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string &v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

} // namespace

void apply_setting(ExperimentSetup &setup, const std::string &key_in, const std::string &value_in)
{
    const std::string key = trim(key_in), v = trim(value_in);
    auto &c = setup.cfg;
    auto &s = setup.spec;

    if (key == "scale")
    {
        if (v == "desk")
            setup = ExperimentSetup::desk();
        else if (v == "full")
            setup = ExperimentSetup::full();
        else
            throw std::invalid_argument("setting 'scale': expected desk or full, got '" + v + "'");
    }
    else if (key == "antennas")
    {
        c.antennas = to_size(key, v);
    }
    else if (key == "users")
        c.users = to_size(key, v);
    else if (key == "block_size")
        c.block_size = to_size(key, v);
    else if (key == "ul_pilots")
        c.ul_pilots = to_size(key, v);
    else if (key == "grid_points")
        c.grid_points = to_size(key, v);
    else if (key == "f_ul")
        c.f_ul = to_double(key, v);
    else if (key == "f_dl")
        c.f_dl = to_double(key, v);
    else if (key == "theta_max")
        c.theta_max = to_double(key, v);
    else if (key == "spacing")
        c.spacing = v == "edge" ? SystemConfig::edge_matched_spacing(c.f_ul, c.speed, c.theta_max) : to_double(key, v);
    else if (key == "ul_snr_db")
    {
        s.ul_snr_db = to_double(key, v);
        c.set_ul_snr_db(s.ul_snr_db);
    }
    else if (key == "cluster_count")
        s.cluster_count = to_size(key, v);
    else if (key == "cluster_width")
        s.cluster_width = to_double(key, v);
    else if (key == "master_seed" || key == "seed")
        s.master_seed = to_size(key, v);
    else if (key == "geometry_seeds")
        s.geometry_seeds = to_size(key, v);
    else if (key == "rate_trials")
        s.rate_trials = to_size(key, v);
    else if (key == "pilot_dims")
    {
        s.pilot_dims.clear();
        for (const auto &item : split_list(v))
            s.pilot_dims.push_back(to_size(key, item));
    }
    else if (key == "dl_snr_db")
    {
        s.dl_snr_db.clear();
        for (const auto &item : split_list(v))
            s.dl_snr_db.push_back(to_double(key, item));
    }
    else if (key == "threshold_factor")
        s.threshold_factor = to_double(key, v);
    else if (key == "joint_atoms")
        s.joint_atoms = to_size(key, v);
    else if (key == "feedback_noise_var")
        s.feedback_noise_var = to_double(key, v);
    else if (key == "threads")
        s.threads = to_size(key, v);
    else if (key == "record_timing")
        s.record_timing = to_bool(key, v);
    else if (key == "run_baseline")
        s.run_baseline = to_bool(key, v);
    else if (key == "ilp_ties")
    {
        if (v != "power" && v != "index")
            throw std::invalid_argument("ilp_ties: expected 'power' or 'index', got '" + v + "'");
        s.power_ties = v == "power";
    }
    else if (key == "ilp_max_nodes")
        s.ilp.max_nodes = to_size(key, v);
    else if (key == "ilp_max_variables")
        s.ilp.max_variables = to_size(key, v);
    else
        throw std::invalid_argument("unknown setting '" + key + "'");
}

ExperimentSetup parse_setup(std::istream &is, ExperimentSetup base, const std::string &origin)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected key = value");
        try
        {
            apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

ExperimentSetup load_setup(const std::filesystem::path &path, ExperimentSetup base)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    return parse_setup(in, std::move(base), path.string());
}

// ---------- geometry ----------

std::uint64_t seed_master(std::uint64_t master, std::size_t seed)
{
    return stream_seed(master, "geometry-seed", 0, seed);
}

Geometry draw_geometry(const SystemConfig &cfg, const ScenarioSpec &spec, std::uint64_t sm)
{
    spec.validate(cfg);
    Rng rng = make_stream(sm, "geometry");
    const double w = spec.width(cfg);
    const double lo_max = cfg.theta_max - w;
    std::uniform_real_distribution<double> place(-cfg.theta_max, lo_max);

    Geometry g;
    // rejection sampling of disjoint cluster positions
    for (int attempt = 0; g.clusters.size() < spec.cluster_count; ++attempt)
    {
        if (attempt > 100000)
            throw std::runtime_error("draw_geometry: could not place disjoint clusters");
        const double lo = place(rng);
        const AngleInterval c{lo, lo + w};
        const bool clash = std::any_of(g.clusters.begin(), g.clusters.end(), [&](const AngleInterval &o)
                                       { return c.lo < o.hi && o.lo < c.hi; });
        if (!clash)
            g.clusters.push_back(c);
    }
    std::sort(g.clusters.begin(), g.clusters.end(), [](const auto &a, const auto &b) { return a.lo < b.lo; });

    std::uniform_int_distribution<std::size_t> how_many(1, spec.cluster_count);
    for (std::size_t k = 0; k < cfg.users; ++k)
    {
        std::vector<std::size_t> all(spec.cluster_count);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(how_many(rng));
        std::sort(all.begin(), all.end());
        AngleSet pieces;
        for (auto i : all)
            pieces.push_back(g.clusters[i]);
        g.user_clusters.push_back(all);
        g.profiles.push_back(ScatteringProfile::uniform_clusters(pieces, cfg.theta_max));
    }
    return g;
}

std::vector<std::size_t> beam_priority(const BeamUserGraph &graph, const std::vector<arma::vec> &dl_power)
{
    if (dl_power.size() != graph.user_count())
        throw std::invalid_argument("beam_priority: one power vector per user expected");
    const std::size_t A = graph.beam_count();
    std::vector<double> weight(A, 0.0);
    for (std::size_t k = 0; k < graph.user_count(); ++k)
    {
        double total = 0.0;
        for (std::size_t a = 0; a < A; ++a)
            if (graph.W(a, k))
                total += dl_power[k](graph.beams[a]);
        if (!(total > 0.0))
            continue;
        for (std::size_t a = 0; a < A; ++a)
            if (graph.W(a, k))
                weight[a] += dl_power[k](graph.beams[a]) / total;
    }
    std::vector<std::size_t> order(A);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
    return order;
}

SupportEstimate estimate_user_support(const SystemConfig &cfg, const ScenarioSpec &spec,
                                      const ScatteringProfile &profile, const arma::cx_mat &F, std::uint64_t sm,
                                      std::size_t user)
{
    const ChannelSampler ul(cfg, profile, Band::uplink);
    Rng rng = make_stream(sm, "uplink", user);
    const UplinkSnapshotBlock block = simulate_uplink(cfg, ul, rng);
    return estimate_dl_support(cfg, block, F, spec.threshold_factor);
}

std::size_t ExperimentReport::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const ReportRow &r) { return r.status.rfind("failed", 0) == 0; }));
}

// ---------- sweep ----------

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is handled exactly
// once; results are written by index, so scheduling never changes the output.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&]()
                          {
                              for (std::size_t i = next++; i < count; i = next++)
                                  body(i);
                          });
    for (auto &t : pool)
        t.join();
}

struct SeedState
{
    Geometry geometry;
    std::vector<ChannelSampler> dl;
    std::vector<SupportSet> estimated;
    std::vector<arma::vec> dl_power;   // estimated per-beam DL power, for the ILP tie order
    std::vector<std::size_t> sparsity; // true DL support size, fed to J-OMP
    std::uint64_t master = 0;
    std::string error;
    double seconds = 0.0;
};

struct PlanState
{
    std::optional<SparsificationPlan> plan;
    bool heuristic = false;
    std::string error;
    double seconds = 0.0;
};

std::string failure(const std::string &stage, const std::exception &e)
{
    std::string what = e.what();
    std::replace(what.begin(), what.end(), ',', ';');
    std::replace(what.begin(), what.end(), '\n', ' ');
    return "failed:" + stage + ": " + what;
}

arma::cx_mat draw_channels(const SeedState &st, std::size_t trial)
{
    arma::cx_mat H(st.dl.front().antennas(), st.dl.size());
    for (std::size_t k = 0; k < st.dl.size(); ++k)
    {
        Rng rng = make_stream(st.master, "dl-channel", k, trial);
        H.col(k) = st.dl[k].draw(rng);
    }
    return H;
}

ReportRow proposed_cell(const SystemConfig &cfg, const ScenarioSpec &spec, const SeedState &st, const PlanState &ps,
                        std::size_t T)
{
    ReportRow row;
    row.method = "proposed";
    row.pilot_dim = T;
    row.feedback_symbols = T;
    if (!ps.error.empty())
    {
        row.status = ps.error;
        return row;
    }
    const SparsificationPlan &plan = *ps.plan;
    row.selected_beams = plan.selected_beams.size();
    const std::uint64_t tm = stream_seed(st.master, "pilot-dim", T);

    std::vector<RateTrial> trials(spec.rate_trials);
    for (std::size_t t = 0; t < spec.rate_trials; ++t)
    {
        RateTrial &tr = trials[t];
        tr.channels = draw_channels(st, t);
        if (plan.served_users.empty())
        {
            tr.precoder.columns.set_size(cfg.antennas, 0);
            continue;
        }
        Rng prng = make_stream(tm, "probing", 0, t);
        const ProbingMatrix probing = generate_probing(T, plan.selected_beams.size(), cfg.dl_power, prng);

        arma::cx_mat est(cfg.antennas, plan.served_users.size());
        for (std::size_t i = 0; i < plan.served_users.size(); ++i)
        {
            const std::size_t k = plan.served_users[i];
            Rng nrng = make_stream(tm, "dl-noise", k, t);
            arma::cx_vec y = receive_pilots(probing, plan.B, tr.channels.col(k), 1.0, nrng);
            if (spec.feedback_noise_var > 0.0)
            {
                Rng frng = make_stream(tm, "feedback", k, t);
                y += std::sqrt(spec.feedback_noise_var) * complex_gaussian(y.n_elem, frng);
            }
            const auto h_eff = estimate_effective(y, probing, plan.omega.at(k), k);
            est.col(i) = plan.B.t() * h_eff.h_eff_hat;
        }
        tr.precoder = greedy_zf(est, plan.served_users);
    }
    const RateBounds rb = evaluate_rates(trials, cfg.dl_power, T, cfg.block_size);
    row.sum_lb = rb.sum_lower;
    row.sum_ub = rb.sum_upper;
    row.served_users = static_cast<std::size_t>(std::lround(rb.mean_served));
    row.status = ps.heuristic ? "heuristic" : "ok";
    return row;
}

ReportRow baseline_cell(const SystemConfig &cfg, const ScenarioSpec &spec, const SeedState &st, std::size_t T,
                        const arma::cx_mat &F)
{
    ReportRow row;
    row.method = "jomp";
    row.pilot_dim = T;
    row.feedback_symbols = T;
    row.selected_beams = cfg.antennas;
    const std::uint64_t tm = stream_seed(st.master, "pilot-dim", T);
    JompOptions jo;
    jo.joint_atoms = spec.joint_atoms;

    std::vector<std::size_t> ids(cfg.users);
    std::iota(ids.begin(), ids.end(), std::size_t{0});

    bool over_sparse = false;
    std::vector<RateTrial> trials(spec.rate_trials);
    for (std::size_t t = 0; t < spec.rate_trials; ++t)
    {
        RateTrial &tr = trials[t];
        tr.channels = draw_channels(st, t);
        Rng srng = make_stream(tm, "sensing", 0, t);
        const ProbingMatrix sensing = generate_probing(T, cfg.antennas, cfg.dl_power, srng);
        arma::cx_mat Y(T, cfg.users);
        for (std::size_t k = 0; k < cfg.users; ++k)
        {
            Rng nrng = make_stream(tm, "cs-noise", k, t);
            arma::cx_vec y = sensing.Psi * tr.channels.col(k) + complex_gaussian(T, nrng);
            if (spec.feedback_noise_var > 0.0)
            {
                Rng frng = make_stream(tm, "cs-feedback", k, t);
                y += std::sqrt(spec.feedback_noise_var) * complex_gaussian(y.n_elem, frng);
            }
            Y.col(k) = y;
        }
        const JompResult jr = jomp_estimate(Y, sensing.Psi, st.sparsity, F, jo);
        over_sparse = over_sparse || std::any_of(jr.over_sparse.begin(), jr.over_sparse.end(), [](char c) { return c; });
        tr.precoder = greedy_zf(jr.H, ids);
    }
    const RateBounds rb = evaluate_rates(trials, cfg.dl_power, T, cfg.block_size);
    row.sum_lb = rb.sum_lower;
    row.sum_ub = rb.sum_upper;
    row.served_users = static_cast<std::size_t>(std::lround(rb.mean_served));
    row.status = over_sparse ? "over-sparse" : "ok";
    return row;
}

} // namespace

ExperimentReport run_experiment(const ScenarioSpec &spec, const SystemConfig &base_cfg)
{
    spec.validate(base_cfg);
    SystemConfig cfg = base_cfg;
    cfg.set_ul_snr_db(spec.ul_snr_db);
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    const std::size_t S = spec.geometry_seeds, nT = spec.pilot_dims.size(), nP = spec.dl_snr_db.size();

    // stage 1: geometry and support estimation per seed
    std::vector<SeedState> seeds(S);
    parallel_for(S, spec.threads, [&](std::size_t s)
                 {
                     SeedState &st = seeds[s];
                     const auto t0 = Clock::now();
                     st.master = seed_master(spec.master_seed, s);
                     try
                     {
                         st.geometry = draw_geometry(cfg, spec, st.master);
                         for (std::size_t k = 0; k < cfg.users; ++k)
                         {
                             const auto &prof = st.geometry.profiles[k];
                             st.dl.emplace_back(cfg, prof, Band::downlink);
                             st.sparsity.push_back(theoretical_support(cfg, prof, Band::downlink).size());
                             SupportEstimate est = estimate_user_support(cfg, spec, prof, F, st.master, k);
                             st.estimated.push_back(std::move(est.dl));
                             st.dl_power.push_back(std::move(est.dl_power));
                         }
                     }
                     catch (const std::exception &e)
                     {
                         st.error = failure("support", e);
                     }
                     st.seconds = seconds_since(t0);
                 });

    // stage 2: sparsification per (seed, T)
    std::vector<PlanState> plans(S * nT);
    parallel_for(S * nT, spec.threads, [&](std::size_t i)
                 {
                     const SeedState &st = seeds[i / nT];
                     PlanState &ps = plans[i];
                     if (!st.error.empty())
                     {
                         ps.error = st.error;
                         return;
                     }
                     const std::size_t T = spec.pilot_dims[i % nT];
                     const auto t0 = Clock::now();
                     try
                     {
                         const BeamUserGraph g = build_graph(st.estimated);
                         IlpOptions opts = spec.ilp;
                         if (spec.power_ties)
                             opts.beam_priority = beam_priority(g, st.dl_power);
                         const IlpSolution sol = solve_ilp(g, T, cfg.antennas, opts);
                         ps.heuristic = sol.heuristic;
                         ps.plan = build_plan(g, sol.z, sol.u, F, T);
                     }
                     catch (const std::exception &e)
                     {
                         ps.error = failure("ilp", e);
                     }
                     ps.seconds = seconds_since(t0);
                 });

    // stage 3: rate cells per (seed, T, SNR), two rows each
    std::vector<ReportRow> rows(S * nT * nP * 2);
    parallel_for(S * nT * nP, spec.threads, [&](std::size_t i)
                 {
                     const std::size_t s = i / (nT * nP), ti = (i / nP) % nT, pi = i % nP;
                     const SeedState &st = seeds[s];
                     const PlanState &ps = plans[s * nT + ti];
                     const std::size_t T = spec.pilot_dims[ti];
                     SystemConfig cell = cfg;
                     cell.set_dl_snr_db(spec.dl_snr_db[pi]);

                     ReportRow &prop = rows[2 * i];
                     ReportRow &base = rows[2 * i + 1];
                     auto t0 = Clock::now();
                     try
                     {
                         if (!st.error.empty())
                             throw std::runtime_error(st.error);
                         prop = proposed_cell(cell, spec, st, ps, T);
                     }
                     catch (const std::exception &e)
                     {
                         prop = ReportRow{"proposed", T};
                         prop.status = st.error.empty() ? failure("proposed", e) : st.error;
                     }
                     prop.wall_time = spec.record_timing ? seconds_since(t0) : 0.0;

                     t0 = Clock::now();
                     try
                     {
                         if (!st.error.empty())
                             throw std::runtime_error(st.error);
                         if (!spec.run_baseline)
                             base = ReportRow{"jomp", T};
                         else
                             base = baseline_cell(cell, spec, st, T, F);
                     }
                     catch (const std::exception &e)
                     {
                         base = ReportRow{"jomp", T};
                         base.status = st.error.empty() ? failure("jomp", e) : st.error;
                     }
                     base.wall_time = spec.record_timing ? seconds_since(t0) : 0.0;

                     for (ReportRow *r : {&prop, &base})
                     {
                         r->pilot_dim = T;
                         r->dl_snr_db = spec.dl_snr_db[pi];
                         r->seed = s;
                         r->feedback_symbols = T;
                     }
                 });

    ExperimentReport report;
    for (auto &r : rows)
        if (spec.run_baseline || r.method == "proposed")
            report.rows.push_back(std::move(r));
    if (spec.record_timing)
    {
        for (std::size_t s = 0; s < S; ++s)
            report.timings.push_back({"support", s, 0, seeds[s].seconds});
        for (std::size_t i = 0; i < S * nT; ++i)
            report.timings.push_back({"ilp", i / nT, spec.pilot_dims[i % nT], plans[i].seconds});
    }
    return report;
}

} // namespace fddmimo

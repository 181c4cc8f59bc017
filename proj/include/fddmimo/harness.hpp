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
#include "fddmimo/config.hpp"
#include "fddmimo/sparsify.hpp"
#include "fddmimo/support.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fddmimo
{

struct ScenarioSpec
{
    std::size_t cluster_count = 3;
    double cluster_width = 0.0;  // radians; 0 selects 2 theta_max / 10
    double ul_snr_db = 15.0;
    std::uint64_t master_seed = 1;
    std::size_t geometry_seeds = 20;
    std::vector<std::size_t> pilot_dims{4, 8, 12, 16, 24, 32, 39, 48, 64};
    std::vector<double> dl_snr_db{0.0, 10.0};
    std::size_t rate_trials = 200;
    double threshold_factor = default_threshold_factor;
    std::size_t joint_atoms = 0;     // J-OMP joint stage, 0 = off
    double feedback_noise_var = 0.0; // analog feedback AWGN, 0 = noiseless transport
    std::size_t threads = 0;         // 0 = hardware concurrency
    bool record_timing = false;      // wall_time column stays 0 otherwise, keeping output reproducible
    bool run_baseline = true;
    // Among optimal sparsifications prefer beams carrying more of their users' estimated
    // power; false keeps the ascending-index rule.
    bool power_ties = true;
    IlpOptions ilp;

    double width(const SystemConfig &cfg) const;
    // cluster_count * round(M * width / (2 theta_max))
    std::size_t s_max(const SystemConfig &cfg) const;
    void validate(const SystemConfig &cfg) const;
};

// Full-scale profile: standard system, 3 clusters, 20 users.
struct ExperimentSetup
{
    SystemConfig cfg;
    ScenarioSpec spec;

    static ExperimentSetup full();
    // 64 antennas, 10 users, 2 clusters.
    static ExperimentSetup desk();
};

// `key = value` lines, '#' starts a comment. Lists are comma separated. The optional `scale`
// key (desk or full) must come first; it resets everything to that profile.
ExperimentSetup load_setup(const std::filesystem::path &path, ExperimentSetup base);
ExperimentSetup parse_setup(std::istream &is, ExperimentSetup base, const std::string &origin = "<input>");
// Applies one setting; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(ExperimentSetup &setup, const std::string &key, const std::string &value);

// One seeded draw of the scattering environment and the per-user profiles.
struct Geometry
{
    AngleSet clusters;
    std::vector<std::vector<std::size_t>> user_clusters; // cluster indices per user
    std::vector<ScatteringProfile> profiles;
};

// Tie order for solve_ilp: beams by decreasing share of their users' estimated power,
// each user's power normalized over its own support. Ties keep ascending position.
std::vector<std::size_t> beam_priority(const BeamUserGraph &graph, const std::vector<arma::vec> &dl_power);

Geometry draw_geometry(const SystemConfig &cfg, const ScenarioSpec &spec, std::uint64_t seed_master);

// Per-seed master from which every other stream of that seed is derived.
std::uint64_t seed_master(std::uint64_t master, std::size_t seed);

struct ReportRow
{
    std::string method; // proposed or jomp
    std::size_t pilot_dim = 0;
    double dl_snr_db = 0.0;
    std::size_t seed = 0;
    double sum_lb = 0.0;
    double sum_ub = 0.0;
    std::size_t served_users = 0;   // mean over trials, rounded
    std::size_t selected_beams = 0; // probed beams (proposed) or dictionary size (jomp)
    std::size_t feedback_symbols = 0;
    double wall_time = 0.0;
    std::string status = "ok";
};

struct StageTiming
{
    std::string stage;
    std::size_t seed = 0;
    std::size_t pilot_dim = 0;
    double seconds = 0.0;
};

struct ExperimentReport
{
    std::vector<ReportRow> rows;
    std::vector<StageTiming> timings;

    std::size_t failures() const;
};

inline constexpr const char *report_header =
    "method,T,dl_snr_db,seed,sum_lb,sum_ub,served_users,selected_beams,feedback_symbols,wall_time,status";

ExperimentReport run_experiment(const ScenarioSpec &spec, const SystemConfig &cfg);

void write_report(const ExperimentReport &report, std::ostream &os);
void write_report(const ExperimentReport &report, const std::filesystem::path &path);
ExperimentReport read_report(std::istream &is);
ExperimentReport read_report(const std::filesystem::path &path);
void write_timings(const ExperimentReport &report, const std::filesystem::path &path);

// ---------- pieces reused by the CLI and the tests ----------

// UL snapshots and DL support estimate for one user of a geometry.
SupportEstimate estimate_user_support(const SystemConfig &cfg, const ScenarioSpec &spec,
                                      const ScatteringProfile &profile, const arma::cx_mat &F,
                                      std::uint64_t seed_master, std::size_t user);

} // namespace fddmimo

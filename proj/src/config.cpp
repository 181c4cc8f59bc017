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

#include "fddmimo/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fddmimo
{

std::string_view to_string(Band band)
{
    return band == Band::uplink ? "UL" : "DL";
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double SystemConfig::edge_matched_spacing(double f_ul, double speed, double theta_max)
{
    const double lambda_ul = speed / f_ul;
    return lambda_ul / (2.0 * std::sin(theta_max));
}

SystemConfig SystemConfig::standard()
{
    SystemConfig cfg;
    cfg.antennas = 128;
    cfg.users = 20;
    cfg.block_size = 128;
    cfg.ul_pilots = 10;
    cfg.f_ul = 2.0e9;
    cfg.f_dl = 1.1 * cfg.f_ul;
    cfg.theta_max = std::numbers::pi / 3.0;
    cfg.spacing = edge_matched_spacing(cfg.f_ul, cfg.speed, cfg.theta_max);
    cfg.set_ul_snr_db(15.0);
    cfg.set_dl_snr_db(10.0);
    return cfg;
}

SystemConfig SystemConfig::desk()
{
    SystemConfig cfg = standard();
    cfg.antennas = 64;
    cfg.users = 10;
    cfg.pilot_dim = 16;
    cfg.set_dl_snr_db(10.0);
    return cfg;
}

void SystemConfig::validate() const
{
    if (antennas < 2)
        throw std::invalid_argument("SystemConfig: antennas must be >= 2");
    if (users < 1)
        throw std::invalid_argument("SystemConfig: users must be >= 1");
    if (pilot_dim < 1 || pilot_dim > block_size)
        throw std::invalid_argument("SystemConfig: pilot dimension must lie in [1, block_size], got " +
                                    std::to_string(pilot_dim));
    if (ul_pilots < 1)
        throw std::invalid_argument("SystemConfig: at least one UL pilot is required");
    if (!(dl_power > 0.0) || !(ul_noise_var > 0.0))
        throw std::invalid_argument("SystemConfig: power and noise variance must be positive");
    if (!(f_ul > 0.0) || !(f_dl > 0.0) || !(speed > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("SystemConfig: carriers, speed and spacing must be positive");
    if (!(theta_max > 0.0) || theta_max > std::numbers::pi / 2.0)
        throw std::invalid_argument("SystemConfig: theta_max must lie in (0, pi/2]");
    if (grid() < 4 * antennas)
        throw std::invalid_argument("SystemConfig: angle grid must have at least 4 x antennas points");
}

void SystemConfig::set_dl_snr_db(double snr_db)
{
    dl_power = static_cast<double>(antennas) * db_to_linear(snr_db);
}

void SystemConfig::set_ul_snr_db(double snr_db)
{
    ul_noise_var = 1.0 / db_to_linear(snr_db);
}

double SystemConfig::dl_snr_db() const
{
    return 10.0 * std::log10(dl_power / static_cast<double>(antennas));
}

} // namespace fddmimo

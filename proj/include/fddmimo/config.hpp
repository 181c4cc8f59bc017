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

#include <cstddef>
#include <numbers>
#include <string_view>

namespace fddmimo
{

enum class Band
{
    uplink,
    downlink
};

std::string_view to_string(Band band);

// Scalar system parameters shared by every stage of the pipeline.
//
// Channels are normalized to unit average power per antenna, so the UL noise variance is the
// inverse UL SNR and the DL transmit power is antennas x DL SNR (DL noise has unit variance).
struct SystemConfig
{
    std::size_t antennas = 128;   // BS array size
    std::size_t users = 20;       // single-antenna users
    std::size_t pilot_dim = 32;   // DL pilot dimension
    std::size_t block_size = 128; // time-frequency tiles per coherence block
    std::size_t ul_pilots = 10;   // UL pilot snapshots per user
    double dl_power = 128.0;      // DL transmit power, linear
    double ul_noise_var = 0.0316227766016838; // UL noise variance, linear (15 dB UL SNR)
    double f_ul = 2.0e9;          // UL carrier [Hz]
    double f_dl = 2.2e9;          // DL carrier [Hz]
    double speed = 299792458.0;   // propagation speed [m/s]
    double spacing = 0.0;         // antenna spacing [m]
    double theta_max = std::numbers::pi / 3.0;
    std::size_t grid_points = 0;  // angle grid resolution; 0 selects 8 x antennas

    // Standard geometry: 128 antennas, 20 users, f_dl = 1.1 f_ul, half-wavelength spacing at the
    // edge of the angular range.
    static SystemConfig standard();

    // Reduced profile used for CI-sized sweeps (64 antennas, 10 users).
    static SystemConfig desk();

    // Antenna spacing that maps [-theta_max, theta_max) onto exactly one period of the UL
    // spatial frequency.
    static double edge_matched_spacing(double f_ul, double speed, double theta_max);

    void validate() const;

    double carrier(Band band) const { return band == Band::uplink ? f_ul : f_dl; }

    // (d / c) * f, the spatial frequency per unit sin(theta).
    double spatial_frequency(Band band) const { return spacing / speed * carrier(band); }

    std::size_t grid() const { return grid_points == 0 ? 8 * antennas : grid_points; }

    void set_dl_snr_db(double snr_db);
    void set_ul_snr_db(double snr_db);
    double dl_snr_db() const;
};

double db_to_linear(double db);

} // namespace fddmimo

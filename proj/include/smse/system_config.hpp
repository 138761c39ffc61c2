// SPDX-License-Identifier: Apache-2.0
//
// smse - spectral efficiency laboratory for massive SC-SM MIMO uplink
// Copyright (C) 2026 The smse authors
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

#ifndef SMSE_SYSTEM_CONFIG_HPP
#define SMSE_SYSTEM_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace smse
{

constexpr double speed_of_light = 299792458.0; // m/s

// How the per-tap decay is applied to the power-delay profile.
enum class PdpExponent
{
    PerDb,   // 10^(-beta l / 10), beta in dB per tap
    Literal, // 10^(-beta l)
};

std::string to_string(PdpExponent mode);
PdpExponent pdp_exponent_from_string(const std::string &name);

double db_to_linear(double db);

// Scalar description of one single-cell uplink scenario. Powers are linear.
// The shared physical constants default to the values used by every preset;
// the four structural counts have no default and must be set.
struct SystemConfig
{
    std::size_t n_rx = 0;      // receive antennas at the base station
    std::size_t n_tx = 0;      // transmit antennas per user (one active per symbol)
    std::size_t n_users = 0;   // scheduled users
    std::size_t n_taps = 0;    // multipath length
    std::size_t frame_len = 2048;

    double rx_power = 10.0;    // effective received power per user
    double noise_power = 1.0;  // AWGN power, zero allowed (noiseless estimation)
    double decay_db = 3.0;     // power-delay profile decay per tap
    double device_size = 0.1;  // m
    double carrier_hz = 5.0e9;
    double cell_radius = 500.0;
    double min_dist = 50.0;
    double pathloss_exp = 3.7;

    std::uint64_t master_seed = 0;
    PdpExponent pdp_exponent_mode = PdpExponent::PerDb;

    // Optional per-user distances in meters; empty means random placement.
    std::vector<double> fixed_distances;

    // Pilot symbols including the zero guard: L - 1 + N_t K L.
    std::size_t pilot_len() const { return n_taps - 1 + n_tx * n_users * n_taps; }

    // Payload symbols per frame: N_a - N_c - (L - 1). Negative when the frame is too short.
    long long payload_len() const
    {
        return static_cast<long long>(frame_len) - static_cast<long long>(pilot_len()) - static_cast<long long>(n_taps) + 1;
    }

    double wavelength() const { return speed_of_light / carrier_hz; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

} // namespace smse

#endif

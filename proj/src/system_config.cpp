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

#include "smse/system_config.hpp"

#include <cmath>
#include <stdexcept>

namespace smse
{

std::string to_string(PdpExponent mode)
{
    return mode == PdpExponent::PerDb ? "per_db" : "literal";
}

PdpExponent pdp_exponent_from_string(const std::string &name)
{
    if (name == "per_db")
        return PdpExponent::PerDb;
    if (name == "literal")
        return PdpExponent::Literal;
    throw std::invalid_argument("pdp_exponent_mode: expected 'per_db' or 'literal', got '" + name + "'");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

void SystemConfig::validate() const
{
    auto require_count = [](std::size_t v, const char *name)
    {
        if (v < 1)
            throw std::invalid_argument(std::string(name) + ": must be at least 1");
    };
    auto require_positive = [](double v, const char *name)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + ": must be a positive finite value");
    };

    require_count(n_rx, "n_rx");
    require_count(n_tx, "n_tx");
    require_count(n_users, "n_users");
    require_count(n_taps, "n_taps");
    require_count(frame_len, "frame_len");

    require_positive(rx_power, "rx_power");
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power))
        throw std::invalid_argument("noise_power: must be a non-negative finite value");
    if (!(decay_db >= 0.0) || !std::isfinite(decay_db))
        throw std::invalid_argument("decay_db: must be a non-negative finite value");
    require_positive(device_size, "device_size");
    require_positive(carrier_hz, "carrier_hz");
    require_positive(cell_radius, "cell_radius");
    require_positive(min_dist, "min_dist");
    require_positive(pathloss_exp, "pathloss_exp");
    if (min_dist > cell_radius)
        throw std::invalid_argument("min_dist: must not exceed cell_radius");

    if (payload_len() < 1)
        throw std::invalid_argument("frame_len: no payload symbols left after " + std::to_string(pilot_len()) +
                                    " pilot and " + std::to_string(n_taps - 1) + " prefix symbols");

    if (!fixed_distances.empty())
    {
        if (fixed_distances.size() != n_users)
            throw std::invalid_argument("fixed_distances: expected " + std::to_string(n_users) + " entries, got " +
                                        std::to_string(fixed_distances.size()));
        for (double v : fixed_distances)
            if (!(v >= min_dist && v <= cell_radius))
                throw std::invalid_argument("fixed_distances: every distance must lie in [min_dist, cell_radius]");
    }
}

} // namespace smse

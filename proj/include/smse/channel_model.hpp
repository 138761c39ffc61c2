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

#ifndef SMSE_CHANNEL_MODEL_HPP
#define SMSE_CHANNEL_MODEL_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "smse/system_config.hpp"

namespace smse
{

// Transmit-antenna correlation R_TX and its symmetric square root.
struct CorrelationMatrix
{
    Eigen::MatrixXd entries;     // N_t x N_t, unit diagonal, symmetric
    Eigen::MatrixXd sqrt_factor; // symmetric, sqrt_factor * sqrt_factor^T == entries after clamping
    double min_eigenvalue = 1.0; // before clamping

    std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }

    // Sum over n' != n of R(n', n)^2: the interference floor seen by antenna n.
    double off_diagonal_energy(std::size_t n) const;
};

// Builds a correlation matrix from explicit entries (unit diagonal, symmetric).
CorrelationMatrix make_correlation(const Eigen::MatrixXd &entries);

// Uniform linear array with Jakes correlation J0(2 pi d |i - j| / (N_t lambda)).
CorrelationMatrix jakes_correlation(std::size_t n_tx, double device_size, double carrier_hz);

struct PowerDelayProfile
{
    std::vector<double> weights; // Omega_0 .. Omega_{L-1}, sum to one

    double dominant() const { return weights.front(); }
    std::size_t size() const { return weights.size(); }
};

PowerDelayProfile power_delay_profile(std::size_t n_taps, double decay_db, PdpExponent mode = PdpExponent::PerDb);

struct UserGeometry
{
    std::vector<double> distances; // meters
    std::vector<double> gains;     // large-scale attenuation alpha_k in (0, 1]
};

double large_scale_gain(double distance, double min_dist, double pathloss_exp);

// Area-uniform placement on the annulus [min_dist, cell_radius] unless config.fixed_distances is set.
UserGeometry place_users(const SystemConfig &config, std::uint64_t seed);

// One coherence frame of multipath taps for every user.
struct ChannelRealization
{
    std::size_t n_users = 0;
    std::size_t n_taps = 0;
    std::vector<Eigen::MatrixXcd> taps;              // [k * L + l] -> H_kl, N_r x N_t
    std::vector<Eigen::MatrixXcd> uncorrelated_taps; // [k * L + l] -> G_kl
    std::vector<double> gains;                       // alpha_k
    std::vector<double> per_user_power;              // P_k = P_u / (alpha_k Omega_0)

    const Eigen::MatrixXcd &tap(std::size_t k, std::size_t l) const { return taps[k * n_taps + l]; }
    Eigen::MatrixXcd &tap(std::size_t k, std::size_t l) { return taps[k * n_taps + l]; }
};

// G_kl with i.i.d. CN(0, alpha_k Omega_l) entries, H_kl = G_kl R^(1/2).
// Each (user, tap) draws from its own stream so the result depends on the seed only.
ChannelRealization sample_channel(const SystemConfig &config, const UserGeometry &geometry,
                                  const PowerDelayProfile &pdp, const CorrelationMatrix &corr, std::uint64_t seed);

// Time-division orthogonal pilots. After an (L - 1)-symbol zero guard, antenna n of every user
// owns the n-th block of K L symbols; inside it, user k sends v = [sqrt(KL), 0, ..., 0] in its
// own L-symbol sub-block. Sequences are stored in units of sqrt(KL) so the Gram matrix is exact.
struct PilotBook
{
    std::size_t n_users = 0;
    std::size_t n_taps = 0;
    std::size_t n_tx = 0;
    double amplitude = 1.0; // sqrt(K L)

    std::vector<std::vector<int>> unit_sequences; // p_k / sqrt(KL), length K L

    std::size_t guard_len() const { return n_taps - 1; }
    std::size_t block_len() const { return n_users * n_taps; }
    std::size_t total_len() const { return guard_len() + n_tx * block_len(); }

    // Head vector v of length L.
    std::vector<double> head() const;

    // p_k^H p_j for all user pairs, computed in integer arithmetic.
    std::vector<std::vector<long long>> gram() const;

    // Full pilot-region symbols radiated by antenna n of user k, in units of sqrt(KL).
    std::vector<int> unit_transmission(std::size_t k, std::size_t n) const;
};

PilotBook build_pilot_book(const SystemConfig &config);

struct ChannelEstimate
{
    std::size_t n_users = 0;
    std::size_t n_taps = 0;
    std::vector<Eigen::MatrixXcd> est_taps; // same layout as ChannelRealization::taps
    std::vector<double> est_noise_var;      // per user, sigma^2 alpha_k Omega_0 / (K L P_u)

    const Eigen::MatrixXcd &tap(std::size_t k, std::size_t l) const { return est_taps[k * n_taps + l]; }
};

// Expected per-component estimation error variance for user k.
std::vector<double> estimation_noise_variance(const SystemConfig &config, const ChannelRealization &realization);

// Transmits the pilot region through the tap channel, adds AWGN and solves the
// zero-forcing (least-squares) problem for every (user, tap, antenna) column.
ChannelEstimate zf_estimate(const SystemConfig &config, const ChannelRealization &realization,
                            const PilotBook &pilot_book, std::uint64_t seed);

// Draws h_hat = h + w directly with w ~ CN(0, est_noise_var I); same law as zf_estimate.
ChannelEstimate shortcut_estimate(const SystemConfig &config, const ChannelRealization &realization,
                                  std::uint64_t seed);

} // namespace smse

#endif

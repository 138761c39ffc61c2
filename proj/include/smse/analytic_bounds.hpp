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

#ifndef SMSE_ANALYTIC_BOUNDS_HPP
#define SMSE_ANALYTIC_BOUNDS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "smse/channel_model.hpp"
#include "smse/system_config.hpp"

namespace smse
{

// Per-(user, transmit antenna) SINR, row-major by user.
struct SinrVector
{
    std::size_t n_users = 0;
    std::size_t n_tx = 0;
    std::vector<double> values;

    SinrVector() = default;
    SinrVector(std::size_t users, std::size_t antennas, double fill = 0.0)
        : n_users(users), n_tx(antennas), values(users * antennas, fill) {}

    double &at(std::size_t k, std::size_t n) { return values[k * n_tx + n]; }
    double at(std::size_t k, std::size_t n) const { return values[k * n_tx + n]; }
    std::span<const double> row(std::size_t k) const { return {values.data() + k * n_tx, n_tx}; }
};

/// Closed-form MR-combining SINR with zero-forcing channel estimates:
///
///   1/SINR_n = sum_{n' != n} R(n', n)^2 + (N_t / N_r)(K / Omega_0 - 1/N_t + sigma^2 / P_u)(1 + sigma^2 / (K L P_u))
///
/// The large-scale gains cancel, so every user gets the same row. This form follows from the
/// generic use-and-forget expression when the whole desired term E|f^H h_k0n|^2 is removed from
/// the interference sum (see SelfInterference::Excluded in monte_carlo.hpp).
SinrVector mr_sinr_closed_form(const SystemConfig &config, const PowerDelayProfile &pdp, const CorrelationMatrix &corr);

/// Same derivation but keeping the beamforming-gain uncertainty of the desired term as noise,
/// i.e. subtracting only |E f^H h_k0n|^2. Differs from mr_sinr_closed_form by (1 + sigma^2/(K L P_u)) / N_r
/// in 1/SINR.
SinrVector mr_sinr_closed_form_with_gain_uncertainty(const SystemConfig &config, const PowerDelayProfile &pdp,
                                                     const CorrelationMatrix &corr);

/// Large-array limit of the MR SINR per transmit antenna: 1 / sum_{n' != n} R(n', n)^2.
/// +infinity when antenna n is uncorrelated with all others.
std::vector<double> mr_sinr_asymptote(const CorrelationMatrix &corr);

// Covariance of the equivalent received vector given active antenna n:
// diag(1/SINR_1, ..., 1/SINR_Nt) + N_t e_n e_n^T.
struct SigmaMatrix
{
    std::vector<double> diag_base; // 1/SINR per antenna
    std::size_t active_index = 0;
    double boost = 0.0; // N_t

    std::size_t size() const { return diag_base.size(); }
    double diag(std::size_t j) const { return diag_base[j] + (j == active_index ? boost : 0.0); }
    double log_det() const; // natural log
};

SigmaMatrix sigma_matrix(std::span<const double> sinr_row, std::size_t active_n);
SigmaMatrix sigma_matrix(const SinrVector &sinr, std::size_t user, std::size_t active_n);

// Data-symbol term given the active antenna: (1/N_t) sum_n log2(1 + N_t SINR_n).
double cmcc_term(std::span<const double> sinr_row);

struct SpatialTerm
{
    double raw = 0.0;     // as evaluated
    double clamped = 0.0; // clipped to [0, log2 N_t]
};

// Closed-form lower estimate of the antenna-index mutual information:
// log2 N_t - N_t - (1/N_t) sum_n log2 sum_m det(S_n) / det(S_n + S_m), in log space.
SpatialTerm spatial_term_bound(std::span<const double> sinr_row);

struct SeBound
{
    std::vector<double> per_user;    // bits/s/Hz
    double total = 0.0;
    double overhead = 0.0;           // N_s / N_a
    std::vector<double> spatial;     // clamped spatial term per user
    std::vector<double> spatial_raw;
    std::vector<double> cmcc;
};

// (N_s / N_a) [spatial + cmcc] per user. Throws std::invalid_argument when N_s < 1.
SeBound se_lower_bound(const SystemConfig &config, const SinrVector &sinr);

} // namespace smse

#endif

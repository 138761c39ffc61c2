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

#include "smse/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace smse
{

namespace
{

SinrVector mr_sinr(const SystemConfig &config, const PowerDelayProfile &pdp, const CorrelationMatrix &corr,
                   double self_offset)
{
    if (corr.size() != config.n_tx)
        throw std::invalid_argument("correlation matrix size must equal n_tx");
    const double nt = static_cast<double>(config.n_tx);
    const double nr = static_cast<double>(config.n_rx);
    const double kl = static_cast<double>(config.n_users * config.n_taps);
    const double snr_inv = config.noise_power / config.rx_power;
    const double estimation = 1.0 + snr_inv / kl;
    const double spread = (nt / nr) * (static_cast<double>(config.n_users) / pdp.dominant() - self_offset + snr_inv) * estimation;

    SinrVector out(config.n_users, config.n_tx);
    for (std::size_t n = 0; n < config.n_tx; ++n)
    {
        const double sinr = 1.0 / (corr.off_diagonal_energy(n) + spread);
        for (std::size_t k = 0; k < config.n_users; ++k)
            out.at(k, n) = sinr;
    }
    return out;
}

double log_sum_exp(std::span<const double> v)
{
    const double top = *std::max_element(v.begin(), v.end());
    double acc = 0.0;
    for (double x : v)
        acc += std::exp(x - top);
    return top + std::log(acc);
}

} // namespace

SinrVector mr_sinr_closed_form(const SystemConfig &config, const PowerDelayProfile &pdp, const CorrelationMatrix &corr)
{
    return mr_sinr(config, pdp, corr, 1.0 / static_cast<double>(config.n_tx));
}

SinrVector mr_sinr_closed_form_with_gain_uncertainty(const SystemConfig &config, const PowerDelayProfile &pdp,
                                                     const CorrelationMatrix &corr)
{
    return mr_sinr(config, pdp, corr, 0.0);
}

std::vector<double> mr_sinr_asymptote(const CorrelationMatrix &corr)
{
    std::vector<double> out(corr.size());
    for (std::size_t n = 0; n < corr.size(); ++n)
    {
        const double floor = corr.off_diagonal_energy(n);
        out[n] = floor > 0.0 ? 1.0 / floor : std::numeric_limits<double>::infinity();
    }
    return out;
}

double SigmaMatrix::log_det() const
{
    double acc = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        acc += std::log(diag(j));
    return acc;
}

SigmaMatrix sigma_matrix(std::span<const double> sinr_row, std::size_t active_n)
{
    if (active_n >= sinr_row.size())
        throw std::out_of_range("sigma_matrix: active antenna index out of range");
    SigmaMatrix s;
    s.diag_base.reserve(sinr_row.size());
    for (double v : sinr_row)
    {
        if (!(v > 0.0))
            throw std::invalid_argument("sigma_matrix: SINR values must be positive");
        s.diag_base.push_back(1.0 / v);
    }
    s.active_index = active_n;
    s.boost = static_cast<double>(sinr_row.size());
    return s;
}

SigmaMatrix sigma_matrix(const SinrVector &sinr, std::size_t user, std::size_t active_n)
{
    return sigma_matrix(sinr.row(user), active_n);
}

double cmcc_term(std::span<const double> sinr_row)
{
    const double nt = static_cast<double>(sinr_row.size());
    double acc = 0.0;
    for (double s : sinr_row)
        acc += std::log2(1.0 + nt * s);
    return acc / nt;
}

SpatialTerm spatial_term_bound(std::span<const double> sinr_row)
{
    const std::size_t nt = sinr_row.size();
    if (nt <= 1)
        return {};

    std::vector<SigmaMatrix> sigmas;
    sigmas.reserve(nt);
    for (std::size_t n = 0; n < nt; ++n)
        sigmas.push_back(sigma_matrix(sinr_row, n));

    // log det(S_n) - log det(S_n + S_m), all matrices diagonal.
    std::vector<double> log_ratio(nt);
    double outer = 0.0;
    for (std::size_t n = 0; n < nt; ++n)
    {
        for (std::size_t m = 0; m < nt; ++m)
        {
            double acc = 0.0;
            for (std::size_t j = 0; j < nt; ++j)
            {
                const double a = sigmas[n].diag(j);
                acc += std::log(a) - std::log(a + sigmas[m].diag(j));
            }
            log_ratio[m] = acc;
        }
        outer += log_sum_exp(log_ratio) / std::numbers::ln2;
    }

    const double ntd = static_cast<double>(nt);
    SpatialTerm out;
    out.raw = std::log2(ntd) - ntd - outer / ntd;
    out.clamped = std::clamp(out.raw, 0.0, std::log2(ntd));
    return out;
}

SeBound se_lower_bound(const SystemConfig &config, const SinrVector &sinr)
{
    if (config.payload_len() < 1)
        throw std::invalid_argument("frame_len: no payload symbols (N_s < 1)");
    if (sinr.n_tx != config.n_tx || sinr.n_users != config.n_users)
        throw std::invalid_argument("se_lower_bound: SINR vector shape does not match the config");

    SeBound out;
    out.overhead = static_cast<double>(config.payload_len()) / static_cast<double>(config.frame_len);
    for (std::size_t k = 0; k < sinr.n_users; ++k)
    {
        const SpatialTerm spatial = spatial_term_bound(sinr.row(k));
        const double data = cmcc_term(sinr.row(k));
        out.spatial.push_back(spatial.clamped);
        out.spatial_raw.push_back(spatial.raw);
        out.cmcc.push_back(data);
        out.per_user.push_back(out.overhead * (spatial.clamped + data));
        out.total += out.per_user.back();
    }
    return out;
}

} // namespace smse

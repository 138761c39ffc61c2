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

#include "smse/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "smse/bessel.hpp"
#include "smse/rng.hpp"

namespace smse
{

double CorrelationMatrix::off_diagonal_energy(std::size_t n) const
{
    double sum = 0.0;
    for (Eigen::Index m = 0; m < entries.rows(); ++m)
        if (static_cast<std::size_t>(m) != n)
            sum += entries(m, static_cast<Eigen::Index>(n)) * entries(m, static_cast<Eigen::Index>(n));
    return sum;
}

CorrelationMatrix make_correlation(const Eigen::MatrixXd &entries)
{
    if (entries.rows() == 0 || entries.rows() != entries.cols())
        throw std::invalid_argument("correlation matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < entries.rows(); ++i)
    {
        if (std::abs(entries(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("correlation matrix must have a unit diagonal");
        for (Eigen::Index j = 0; j < i; ++j)
            if (std::abs(entries(i, j) - entries(j, i)) > 1e-12)
                throw std::invalid_argument("correlation matrix must be symmetric");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition of the correlation matrix failed");

    CorrelationMatrix out;
    out.entries = entries;
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    out.sqrt_factor = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
    return out;
}

CorrelationMatrix jakes_correlation(std::size_t n_tx, double device_size, double carrier_hz)
{
    if (n_tx < 1)
        throw std::invalid_argument("n_tx: must be at least 1");
    const double lambda = speed_of_light / carrier_hz;
    const double step = 2.0 * std::numbers::pi * device_size / (static_cast<double>(n_tx) * lambda);

    const auto n = static_cast<Eigen::Index>(n_tx);
    Eigen::MatrixXd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            r(i, j) = i == j ? 1.0 : bessel_j0(step * static_cast<double>(std::abs(i - j)));
    return make_correlation(r);
}

PowerDelayProfile power_delay_profile(std::size_t n_taps, double decay_db, PdpExponent mode)
{
    if (n_taps < 1)
        throw std::invalid_argument("n_taps: must be at least 1");
    const double per_tap = mode == PdpExponent::PerDb ? decay_db / 10.0 : decay_db;

    PowerDelayProfile pdp;
    pdp.weights.resize(n_taps);
    double total = 0.0;
    for (std::size_t l = 0; l < n_taps; ++l)
    {
        pdp.weights[l] = std::pow(10.0, -per_tap * static_cast<double>(l));
        total += pdp.weights[l];
    }
    for (double &w : pdp.weights)
        w /= total;
    return pdp;
}

double large_scale_gain(double distance, double min_dist, double pathloss_exp)
{
    return std::pow(distance / min_dist, -pathloss_exp);
}

UserGeometry place_users(const SystemConfig &config, std::uint64_t seed)
{
    UserGeometry geometry;
    if (!config.fixed_distances.empty())
    {
        if (config.fixed_distances.size() != config.n_users)
            throw std::invalid_argument("fixed_distances: size must equal n_users");
        geometry.distances = config.fixed_distances;
    }
    else
    {
        Engine engine = make_engine(seed, {key(StreamRole::Geometry)});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double r2 = config.cell_radius * config.cell_radius;
        const double m2 = config.min_dist * config.min_dist;
        geometry.distances.resize(config.n_users);
        for (double &d : geometry.distances)
            d = std::sqrt(m2 + unit(engine) * (r2 - m2));
    }

    geometry.gains.reserve(geometry.distances.size());
    for (double d : geometry.distances)
        geometry.gains.push_back(large_scale_gain(d, config.min_dist, config.pathloss_exp));
    return geometry;
}

ChannelRealization sample_channel(const SystemConfig &config, const UserGeometry &geometry,
                                  const PowerDelayProfile &pdp, const CorrelationMatrix &corr, std::uint64_t seed)
{
    const std::size_t K = config.n_users;
    const std::size_t L = config.n_taps;
    const auto n_rx = static_cast<Eigen::Index>(config.n_rx);
    const auto n_tx = static_cast<Eigen::Index>(config.n_tx);
    if (geometry.gains.size() != K || pdp.size() != L || corr.size() != config.n_tx)
        throw std::invalid_argument("sample_channel: geometry, profile and correlation must match the config");

    ChannelRealization out;
    out.n_users = K;
    out.n_taps = L;
    out.gains = geometry.gains;
    out.per_user_power.resize(K);
    out.taps.resize(K * L);
    out.uncorrelated_taps.resize(K * L);

    const Eigen::MatrixXcd root = corr.sqrt_factor.cast<std::complex<double>>();
    for (std::size_t k = 0; k < K; ++k)
    {
        out.per_user_power[k] = config.rx_power / (geometry.gains[k] * pdp.dominant());
        for (std::size_t l = 0; l < L; ++l)
        {
            Engine engine = make_engine(seed, {key(StreamRole::ChannelTaps), k, l});
            ComplexNormal draw(geometry.gains[k] * pdp.weights[l]);
            Eigen::MatrixXcd g(n_rx, n_tx);
            for (Eigen::Index j = 0; j < n_tx; ++j)
                for (Eigen::Index i = 0; i < n_rx; ++i)
                    g(i, j) = draw(engine);
            out.taps[k * L + l] = g * root;
            out.uncorrelated_taps[k * L + l] = std::move(g);
        }
    }
    return out;
}

std::vector<double> PilotBook::head() const
{
    std::vector<double> v(n_taps, 0.0);
    v[0] = amplitude;
    return v;
}

std::vector<std::vector<long long>> PilotBook::gram() const
{
    const long long scale = static_cast<long long>(block_len()); // amplitude^2 == K L
    std::vector<std::vector<long long>> g(n_users, std::vector<long long>(n_users, 0));
    for (std::size_t a = 0; a < n_users; ++a)
        for (std::size_t b = 0; b < n_users; ++b)
        {
            long long dot = 0;
            for (std::size_t t = 0; t < block_len(); ++t)
                dot += static_cast<long long>(unit_sequences[a][t]) * unit_sequences[b][t];
            g[a][b] = scale * dot;
        }
    return g;
}

std::vector<int> PilotBook::unit_transmission(std::size_t k, std::size_t n) const
{
    std::vector<int> x(total_len(), 0);
    const std::size_t offset = guard_len() + n * block_len();
    for (std::size_t t = 0; t < block_len(); ++t)
        x[offset + t] = unit_sequences[k][t];
    return x;
}

PilotBook build_pilot_book(const SystemConfig &config)
{
    PilotBook book;
    book.n_users = config.n_users;
    book.n_taps = config.n_taps;
    book.n_tx = config.n_tx;
    book.amplitude = std::sqrt(static_cast<double>(config.n_users * config.n_taps));
    book.unit_sequences.assign(config.n_users, std::vector<int>(book.block_len(), 0));
    for (std::size_t k = 0; k < config.n_users; ++k)
        book.unit_sequences[k][k * config.n_taps] = 1;
    return book;
}

std::vector<double> estimation_noise_variance(const SystemConfig &config, const ChannelRealization &realization)
{
    const double kl = static_cast<double>(config.n_users * config.n_taps);
    std::vector<double> var(realization.n_users);
    for (std::size_t k = 0; k < realization.n_users; ++k)
        var[k] = config.noise_power / (realization.per_user_power[k] * kl);
    return var;
}

ChannelEstimate zf_estimate(const SystemConfig &config, const ChannelRealization &realization,
                            const PilotBook &pilot_book, std::uint64_t seed)
{
    if (config.payload_len() < 1)
        throw std::invalid_argument("frame_len: pilot region leaves no payload symbols");

    const std::size_t K = config.n_users;
    const std::size_t L = config.n_taps;
    const std::size_t Nt = config.n_tx;
    const auto n_rx = static_cast<Eigen::Index>(config.n_rx);

    // Observation window: every sample after the guard; earlier samples carry the previous frame's tail.
    const std::size_t guard = pilot_book.guard_len();
    const auto window = static_cast<Eigen::Index>(pilot_book.total_len() - guard);
    const auto unknowns = static_cast<Eigen::Index>(K * Nt * L);
    auto unknown_index = [&](std::size_t k, std::size_t n, std::size_t l)
    { return static_cast<Eigen::Index>((k * Nt + n) * L + l); };

    // Convolution matrix: row (k, n, l), column t -> x_kn(t - l).
    Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(unknowns, window);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < Nt; ++n)
        {
            const std::vector<int> x = pilot_book.unit_transmission(k, n);
            for (std::size_t l = 0; l < L; ++l)
                for (Eigen::Index w = 0; w < window; ++w)
                {
                    const std::size_t t = guard + static_cast<std::size_t>(w);
                    if (t >= l && x[t - l] != 0)
                        conv(unknown_index(k, n, l), w) = pilot_book.amplitude * x[t - l];
                }
        }

    // Effective taps sqrt(P_k) h_kln stacked as columns.
    Eigen::MatrixXcd theta(n_rx, unknowns);
    for (std::size_t k = 0; k < K; ++k)
    {
        const double amp = std::sqrt(realization.per_user_power[k]);
        for (std::size_t l = 0; l < L; ++l)
            for (std::size_t n = 0; n < Nt; ++n)
                theta.col(unknown_index(k, n, l)) = amp * realization.tap(k, l).col(static_cast<Eigen::Index>(n));
    }

    Eigen::MatrixXcd received = theta * conv.cast<std::complex<double>>();
    if (config.noise_power > 0.0)
    {
        Engine engine = make_engine(seed, {key(StreamRole::PilotNoise)});
        ComplexNormal draw(config.noise_power);
        for (Eigen::Index j = 0; j < received.cols(); ++j)
            for (Eigen::Index i = 0; i < received.rows(); ++i)
                received(i, j) += draw(engine);
    }

    // theta_hat = Y X^T (X X^T)^-1
    const Eigen::MatrixXd gram = conv * conv.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::runtime_error("zf_estimate: pilot Gram matrix is singular");
    const Eigen::MatrixXd projector = ldlt.solve(conv).transpose(); // X^T (X X^T)^-1
    const Eigen::MatrixXcd theta_hat = received * projector.cast<std::complex<double>>();

    ChannelEstimate out;
    out.n_users = K;
    out.n_taps = L;
    out.est_noise_var = estimation_noise_variance(config, realization);
    out.est_taps.resize(K * L);
    for (std::size_t k = 0; k < K; ++k)
    {
        const double inv_amp = 1.0 / std::sqrt(realization.per_user_power[k]);
        for (std::size_t l = 0; l < L; ++l)
        {
            Eigen::MatrixXcd h(n_rx, static_cast<Eigen::Index>(Nt));
            for (std::size_t n = 0; n < Nt; ++n)
                h.col(static_cast<Eigen::Index>(n)) = inv_amp * theta_hat.col(unknown_index(k, n, l));
            out.est_taps[k * L + l] = std::move(h);
        }
    }
    return out;
}

ChannelEstimate shortcut_estimate(const SystemConfig &config, const ChannelRealization &realization,
                                  std::uint64_t seed)
{
    ChannelEstimate out;
    out.n_users = realization.n_users;
    out.n_taps = realization.n_taps;
    out.est_noise_var = estimation_noise_variance(config, realization);
    out.est_taps = realization.taps;
    if (config.noise_power == 0.0)
        return out;

    for (std::size_t k = 0; k < out.n_users; ++k)
        for (std::size_t l = 0; l < out.n_taps; ++l)
        {
            Engine engine = make_engine(seed, {key(StreamRole::EstimationNoise), k, l});
            ComplexNormal draw(out.est_noise_var[k]);
            Eigen::MatrixXcd &h = out.est_taps[k * out.n_taps + l];
            for (Eigen::Index j = 0; j < h.cols(); ++j)
                for (Eigen::Index i = 0; i < h.rows(); ++i)
                    h(i, j) += draw(engine);
        }
    return out;
}

} // namespace smse

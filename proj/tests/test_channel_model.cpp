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

#include "doctest.h"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smse/bessel.hpp"
#include "smse/channel_model.hpp"
#include "smse/rng.hpp"
#include "smse/system_config.hpp"

using namespace smse;

namespace
{

using Big = boost::multiprecision::cpp_dec_float_100;

// Power series at 100 decimal digits; the cancellation at x = 60 costs about 26 of them.
double j0_reference(double x)
{
    const Big q = Big(x) * Big(x) / 4;
    Big term = 1;
    Big sum = 1;
    for (int m = 1; m < 400; ++m)
    {
        term *= -q / (Big(m) * Big(m));
        sum += term;
        if (abs(term) < Big("1e-60"))
            break;
    }
    return sum.convert_to<double>();
}

SystemConfig small_config()
{
    SystemConfig cfg;
    cfg.n_rx = 8;
    cfg.n_tx = 2;
    cfg.n_users = 2;
    cfg.n_taps = 2;
    return cfg;
}

} // namespace

TEST_CASE("bessel_j0 matches tabulated values")
{
    struct Point
    {
        double x;
        double value;
    };
    const Point table[] = {
        {0.0, 1.0},
        {0.5, 0.93846980724081290423},
        {3.0, -0.26005195490193343762},
        {7.9, 0.19436184484127823969},
        {8.0, 0.17165080713755390609},
        {8.1, 0.1475174540443776703},
        {12.0, 0.047689310796833536624},
        {15.0, -0.014224472826780773234},
        {25.0, 0.096266783275958116174},
        {60.0, -0.091471804089061869531},
        {200.0, -0.015437439930565091592},
    };
    for (const Point &p : table)
    {
        CAPTURE(p.x);
        CHECK(std::abs(bessel_j0(p.x) - p.value) < 1e-13);
        CHECK(bessel_j0(-p.x) == bessel_j0(p.x));
    }
}

TEST_CASE("bessel_j0 agrees with a high-precision series")
{
    for (double x = 0.0; x <= 60.0; x += 0.37)
    {
        CAPTURE(x);
        CHECK(std::abs(bessel_j0(x) - j0_reference(x)) < 1e-13);
    }
    for (double x : {7.999, 8.0, 8.001, 11.999, 12.0, 12.001})
        CHECK(std::abs(bessel_j0(x) - j0_reference(x)) < 1e-13);
}

TEST_CASE("Jakes correlation for the default two-antenna device")
{
    const CorrelationMatrix r = jakes_correlation(2, 0.1, 5.0e9);
    REQUIRE(r.size() == 2);
    CHECK(r.entries(0, 0) == 1.0);
    CHECK(r.entries(1, 1) == 1.0);
    CHECK(r.entries(0, 1) == doctest::Approx(-0.09666326403116592).epsilon(1e-12));
    CHECK(r.entries(1, 0) == r.entries(0, 1));
    CHECK(r.off_diagonal_energy(0) == doctest::Approx(0.09666326403116592 * 0.09666326403116592).epsilon(1e-12));
}

TEST_CASE("Jakes correlation, four antennas")
{
    const CorrelationMatrix r = jakes_correlation(4, 0.1, 5.0e9);
    const double row[] = {1.0, -0.106075225826933, -0.0966632640311659, 0.203116583331612};
    for (int j = 0; j < 4; ++j)
        CHECK(r.entries(0, j) == doctest::Approx(row[j]).epsilon(1e-12));
    CHECK((r.entries - r.entries.transpose()).norm() == 0.0);
    // Toeplitz: depends on |i - j| only.
    CHECK(r.entries(1, 3) == r.entries(0, 2));
    const Eigen::MatrixXd rebuilt = r.sqrt_factor * r.sqrt_factor.transpose();
    CHECK((rebuilt - r.entries).norm() < 1e-12);
    CHECK(r.min_eigenvalue > 0.0);
}

TEST_CASE("single antenna correlation is the identity")
{
    const CorrelationMatrix r = jakes_correlation(1, 0.1, 5.0e9);
    CHECK(r.entries(0, 0) == 1.0);
    CHECK(r.sqrt_factor(0, 0) == 1.0);
    CHECK(r.off_diagonal_energy(0) == 0.0);
}

TEST_CASE("make_correlation rejects malformed matrices")
{
    Eigen::MatrixXd bad_diag = Eigen::MatrixXd::Identity(2, 2);
    bad_diag(1, 1) = 0.9;
    CHECK_THROWS_AS(make_correlation(bad_diag), std::invalid_argument);

    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(make_correlation(asym), std::invalid_argument);

    CHECK_THROWS_AS(jakes_correlation(0, 0.1, 5e9), std::invalid_argument);
}

TEST_CASE("power-delay profile")
{
    SUBCASE("three taps, 3 dB per tap")
    {
        const PowerDelayProfile p = power_delay_profile(3, 3.0);
        CHECK(p.weights[0] == doctest::Approx(0.570653826757).epsilon(1e-11));
        CHECK(p.weights[1] == doctest::Approx(0.286004412791).epsilon(1e-11));
        CHECK(p.weights[2] == doctest::Approx(0.143341760452).epsilon(1e-11));
    }
    SUBCASE("two taps")
    {
        CHECK(power_delay_profile(2, 3.0).dominant() == doctest::Approx(0.66613942458312206581).epsilon(1e-14));
    }
    SUBCASE("one tap carries all power")
    {
        CHECK(power_delay_profile(1, 3.0).weights == std::vector<double>{1.0});
    }
    SUBCASE("zero decay is flat")
    {
        for (double w : power_delay_profile(4, 0.0).weights)
            CHECK(w == doctest::Approx(0.25));
    }
    SUBCASE("literal exponent")
    {
        const PowerDelayProfile p = power_delay_profile(2, 0.5, PdpExponent::Literal);
        const double r = std::pow(10.0, -0.5);
        CHECK(p.weights[0] == doctest::Approx(1.0 / (1.0 + r)));
        CHECK(p.weights[1] == doctest::Approx(r / (1.0 + r)));
    }
    SUBCASE("normalised and decreasing")
    {
        for (std::size_t L : {1u, 2u, 5u, 8u, 20u})
        {
            const PowerDelayProfile p = power_delay_profile(L, 3.0);
            CHECK(std::accumulate(p.weights.begin(), p.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
            for (std::size_t l = 1; l < L; ++l)
                CHECK(p.weights[l] < p.weights[l - 1]);
        }
    }
    CHECK_THROWS_AS(power_delay_profile(0, 3.0), std::invalid_argument);
}

TEST_CASE("large-scale gain")
{
    CHECK(large_scale_gain(50.0, 50.0, 3.7) == 1.0);
    CHECK(large_scale_gain(500.0, 50.0, 3.7) == doctest::Approx(1.995262314968878785e-4).epsilon(1e-13));
    CHECK(large_scale_gain(100.0, 50.0, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("user placement")
{
    SystemConfig cfg = small_config();
    cfg.n_users = 20000;

    const UserGeometry g = place_users(cfg, 11);
    REQUIRE(g.distances.size() == cfg.n_users);
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < cfg.n_users; ++k)
    {
        CHECK(g.distances[k] >= cfg.min_dist);
        CHECK(g.distances[k] <= cfg.cell_radius);
        CHECK(g.gains[k] == doctest::Approx(large_scale_gain(g.distances[k], cfg.min_dist, cfg.pathloss_exp)));
        sum_sq += g.distances[k] * g.distances[k];
    }
    // Area-uniform on the annulus: v^2 is uniform on [r_m^2, r^2].
    const double lo = cfg.min_dist * cfg.min_dist;
    const double hi = cfg.cell_radius * cfg.cell_radius;
    const double sd_of_mean = (hi - lo) / std::sqrt(12.0 * static_cast<double>(cfg.n_users));
    CHECK(std::abs(sum_sq / static_cast<double>(cfg.n_users) - 0.5 * (lo + hi)) < 4.0 * sd_of_mean);

    const UserGeometry again = place_users(cfg, 11);
    CHECK(again.distances == g.distances);
    CHECK(place_users(cfg, 12).distances != g.distances);
}

TEST_CASE("fixed distances override placement")
{
    SystemConfig cfg = small_config();
    cfg.fixed_distances = {50.0, 200.0};
    const UserGeometry g = place_users(cfg, 99);
    CHECK(g.distances == cfg.fixed_distances);
    CHECK(g.gains[0] == 1.0);
    CHECK(g.gains[1] == doctest::Approx(std::pow(4.0, -3.7)));
}

TEST_CASE("configuration validation names the field")
{
    SystemConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());

    const auto message = [](const SystemConfig &c) {
        try
        {
            c.validate();
        }
        catch (const std::invalid_argument &e)
        {
            return std::string(e.what());
        }
        return std::string();
    };

    SystemConfig c = cfg;
    c.n_rx = 0;
    CHECK(message(c).rfind("n_rx", 0) == 0);
    c = cfg;
    c.rx_power = -1.0;
    CHECK(message(c).rfind("rx_power", 0) == 0);
    c = cfg;
    c.frame_len = 8;
    CHECK(message(c).rfind("frame_len", 0) == 0);
    c = cfg;
    c.min_dist = 600.0;
    CHECK(message(c).rfind("min_dist", 0) == 0);
    c = cfg;
    c.fixed_distances = {60.0};
    CHECK(message(c).rfind("fixed_distances", 0) == 0);
    c = cfg;
    c.noise_power = 0.0;
    CHECK(message(c).empty());
}

TEST_CASE("frame bookkeeping")
{
    SystemConfig cfg = small_config();
    cfg.n_users = 10;
    cfg.n_taps = 3;
    CHECK(cfg.pilot_len() == 2u + 2u * 10u * 3u);
    CHECK(cfg.payload_len() == 2048 - 62 - 2);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(0.0) == 1.0);
}

TEST_CASE("channel taps have the prescribed second-order statistics")
{
    SystemConfig cfg = small_config();
    cfg.n_rx = 64;
    cfg.n_tx = 2;
    cfg.n_users = 1;
    cfg.n_taps = 2;
    cfg.fixed_distances = {80.0};
    const UserGeometry geo = place_users(cfg, 1);
    const PowerDelayProfile pdp = power_delay_profile(cfg.n_taps, cfg.decay_db);
    const CorrelationMatrix corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);

    const int draws = 400;
    double power[2] = {0.0, 0.0};
    std::complex<double> cross = 0.0;
    for (int t = 0; t < draws; ++t)
    {
        const ChannelRealization ch = sample_channel(cfg, geo, pdp, corr, derive_seed(5, {static_cast<std::uint64_t>(t)}));
        for (int l = 0; l < 2; ++l)
            power[l] += ch.tap(0, l).cwiseAbs2().sum();
        cross += ch.tap(0, 0).col(0).dot(ch.tap(0, 0).col(1));
    }
    const double entries = static_cast<double>(draws) * 64.0 * 2.0;
    const double alpha = geo.gains[0];
    for (int l = 0; l < 2; ++l)
    {
        const double expected = alpha * pdp.weights[l];
        // Each |h|^2 entry is exponential, so the relative sd of the mean is 1/sqrt(entries).
        CHECK(std::abs(power[l] / entries / expected - 1.0) < 4.0 / std::sqrt(entries));
    }
    const double rho_hat = cross.real() / (static_cast<double>(draws) * 64.0) / (alpha * pdp.weights[0]);
    CHECK(std::abs(rho_hat - corr.entries(0, 1)) < 4.0 / std::sqrt(static_cast<double>(draws) * 64.0));
}

TEST_CASE("channel sampling is a pure function of the seed")
{
    const SystemConfig cfg = small_config();
    const UserGeometry geo = place_users(cfg, 3);
    const PowerDelayProfile pdp = power_delay_profile(cfg.n_taps, cfg.decay_db);
    const CorrelationMatrix corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    const ChannelRealization a = sample_channel(cfg, geo, pdp, corr, 77);
    const ChannelRealization b = sample_channel(cfg, geo, pdp, corr, 77);
    const ChannelRealization c = sample_channel(cfg, geo, pdp, corr, 78);
    for (std::size_t i = 0; i < a.taps.size(); ++i)
    {
        CHECK(a.taps[i] == b.taps[i]);
        CHECK(a.taps[i] != c.taps[i]);
    }
    CHECK(a.per_user_power[0] == doctest::Approx(cfg.rx_power / (geo.gains[0] * pdp.dominant())));
}

TEST_CASE("pilot book is orthogonal with a zero guard")
{
    SystemConfig cfg = small_config();
    cfg.n_users = 3;
    cfg.n_taps = 3;
    cfg.n_tx = 2;
    const PilotBook book = build_pilot_book(cfg);
    CHECK(book.amplitude == doctest::Approx(3.0));
    CHECK(book.total_len() == cfg.pilot_len());

    const auto gram = book.gram();
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(gram[k][j] == (k == j ? 9 : 0));

    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t n = 0; n < 2; ++n)
        {
            const std::vector<int> tx = book.unit_transmission(k, n);
            REQUIRE(tx.size() == book.total_len());
            for (std::size_t t = 0; t < book.guard_len(); ++t)
                CHECK(tx[t] == 0);
            CHECK(std::accumulate(tx.begin(), tx.end(), 0) == 1);
            CHECK(tx[book.guard_len() + n * book.block_len() + k * cfg.n_taps] == 1);
        }
}

TEST_CASE("estimation error variance formula")
{
    SystemConfig cfg = small_config();
    cfg.n_users = 2;
    cfg.n_taps = 2;
    cfg.rx_power = 10.0;
    cfg.noise_power = 1.0;
    cfg.fixed_distances = {50.0, 50.0};
    const UserGeometry geo = place_users(cfg, 0);
    const PowerDelayProfile pdp = power_delay_profile(2, 3.0);
    const CorrelationMatrix corr = jakes_correlation(2, 0.1, 5e9);
    const ChannelRealization ch = sample_channel(cfg, geo, pdp, corr, 4);
    const std::vector<double> var = estimation_noise_variance(cfg, ch);
    CHECK(var[0] == doctest::Approx(0.0166534856145780516).epsilon(1e-14));
    CHECK(var[1] == var[0]);
}

TEST_CASE("noiseless estimation recovers the channel exactly")
{
    SystemConfig cfg = small_config();
    cfg.noise_power = 0.0;
    cfg.n_users = 2;
    cfg.n_taps = 3;
    const UserGeometry geo = place_users(cfg, 8);
    const PowerDelayProfile pdp = power_delay_profile(cfg.n_taps, cfg.decay_db);
    const CorrelationMatrix corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    const ChannelRealization ch = sample_channel(cfg, geo, pdp, corr, 21);

    const ChannelEstimate zf = zf_estimate(cfg, ch, build_pilot_book(cfg), 22);
    const ChannelEstimate sc = shortcut_estimate(cfg, ch, 23);
    for (std::size_t i = 0; i < ch.taps.size(); ++i)
    {
        CHECK((zf.est_taps[i] - ch.taps[i]).norm() <= 1e-10 * ch.taps[i].norm());
        CHECK(sc.est_taps[i] == ch.taps[i]);
    }
}

TEST_CASE("pilot-path estimation error has the predicted variance per user")
{
    SystemConfig cfg = small_config();
    cfg.n_rx = 16;
    cfg.n_users = 2;
    cfg.n_taps = 2;
    cfg.fixed_distances = {50.0, 120.0};
    const UserGeometry geo = place_users(cfg, 0);
    const PowerDelayProfile pdp = power_delay_profile(cfg.n_taps, cfg.decay_db);
    const CorrelationMatrix corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    const PilotBook book = build_pilot_book(cfg);

    const int trials = 300;
    std::vector<double> err(2, 0.0);
    std::vector<double> predicted;
    for (int t = 0; t < trials; ++t)
    {
        const auto s = static_cast<std::uint64_t>(t);
        const ChannelRealization ch = sample_channel(cfg, geo, pdp, corr, derive_seed(1, {s}));
        const ChannelEstimate est = zf_estimate(cfg, ch, book, derive_seed(2, {s}));
        predicted = estimation_noise_variance(cfg, ch);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l)
                err[k] += (est.tap(k, l) - ch.tap(k, l)).cwiseAbs2().sum();
    }
    const double per_user = static_cast<double>(trials) * 2.0 * 16.0 * 2.0;
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(std::abs(err[k] / per_user / predicted[k] - 1.0) < 4.0 / std::sqrt(per_user));
}

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

#include <cmath>
#include <random>
#include <stdexcept>

#include "smse/analytic_bounds.hpp"
#include "smse/channel_model.hpp"
#include "smse/monte_carlo.hpp"

using namespace smse;

namespace
{

SystemConfig small_config()
{
    SystemConfig cfg;
    cfg.n_rx = 16;
    cfg.n_tx = 2;
    cfg.n_users = 2;
    cfg.n_taps = 2;
    cfg.fixed_distances = {60.0, 150.0};
    return cfg;
}

SinrVector closed_form(const SystemConfig &cfg)
{
    return mr_sinr_closed_form(cfg, power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_exponent_mode),
                               jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz));
}

} // namespace

TEST_CASE("option names round-trip")
{
    for (auto p : {EstimationPath::Shortcut, EstimationPath::PilotZf})
        CHECK(estimation_path_from_string(to_string(p)) == p);
    for (auto r : {SelfInterference::Excluded, SelfInterference::GainUncertainty})
        CHECK(self_interference_from_string(to_string(r)) == r);
    for (auto g : {GeometryMode::Fixed, GeometryMode::Redraw})
        CHECK(geometry_mode_from_string(to_string(g)) == g);
    CHECK_THROWS_AS(estimation_path_from_string("ls"), std::invalid_argument);
}

TEST_CASE("expectation terms need at least two trials")
{
    CHECK_THROWS_AS(eq9_terms_empirical(small_config(), {}, 1, 1), std::invalid_argument);
}

TEST_CASE("exact moments reproduce the closed form")
{
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> small(1, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial)
    {
        SystemConfig cfg;
        cfg.n_rx = static_cast<std::size_t>(8 << small(gen));
        cfg.n_tx = static_cast<std::size_t>(small(gen));
        cfg.n_users = static_cast<std::size_t>(small(gen));
        cfg.n_taps = static_cast<std::size_t>(small(gen));
        cfg.rx_power = std::pow(10.0, -1.0 + 4.0 * unit(gen));
        cfg.noise_power = std::pow(10.0, -1.0 + 2.0 * unit(gen));
        cfg.decay_db = 6.0 * unit(gen);
        const UserGeometry geo = place_users(cfg, gen());
        const ExpectationTerms terms = exact_mr_terms(cfg, geo);

        const SinrVector expected = closed_form(cfg);
        const SinrVector got = sinr_from_terms(terms, cfg).sinr;
        for (std::size_t i = 0; i < expected.values.size(); ++i)
            CHECK(got.values[i] == doctest::Approx(expected.values[i]).epsilon(1e-12));

        const SinrVector alt = mr_sinr_closed_form_with_gain_uncertainty(
            cfg, power_delay_profile(cfg.n_taps, cfg.decay_db),
            jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz));
        const SinrVector got_alt = sinr_from_terms(terms, cfg, SelfInterference::GainUncertainty).sinr;
        for (std::size_t i = 0; i < alt.values.size(); ++i)
            CHECK(got_alt.values[i] == doctest::Approx(alt.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("empirical expectations agree with the exact moments")
{
    const SystemConfig cfg = small_config();
    const ExpectationTerms mc = eq9_terms_empirical(cfg, {}, 4000, 17);
    const ExpectationTerms exact = exact_mr_terms(cfg, mc.geometry);
    for (std::size_t r = 0; r < 4; ++r)
    {
        CAPTURE(r);
        CHECK(std::abs(mc.gain_mean[r].real() - exact.gain_mean[r].real()) < 4.0 * mc.gain_se[r]);
        CHECK(std::abs(mc.gain_mean[r].imag()) < 4.0 * mc.gain_se[r]);
        CHECK(std::abs(mc.combiner_norm[r] - exact.combiner_norm[r]) < 4.0 * mc.combiner_norm_se[r]);
        CHECK(std::abs(mc.self_power[r] - exact.self_power[r]) < 4.0 * mc.self_power_se[r]);
        CHECK(std::abs(mc.interference_sum[r] - exact.interference_sum[r]) < 4.0 * mc.interference_sum_se[r]);
        CHECK(mc.per_user_power[r / 2] == doctest::Approx(exact.per_user_power[r / 2]));
    }
}

TEST_CASE("results do not depend on the thread count")
{
    const SystemConfig cfg = small_config();
    const ExpectationTerms one = eq9_terms_empirical(cfg, {}, 64, 5, 1);
    const ExpectationTerms many = eq9_terms_empirical(cfg, {}, 64, 5, 4);
    CHECK(one.gain_mean == many.gain_mean);
    CHECK(one.interference_sum == many.interference_sum);
    CHECK(one.combiner_norm == many.combiner_norm);
    CHECK(one.signal_se == many.signal_se);
}

TEST_CASE("pilot-path and shortcut estimators give consistent terms")
{
    const SystemConfig cfg = small_config();
    CombinerSpec pilot;
    pilot.estimation = EstimationPath::PilotZf;
    const ExpectationTerms a = eq9_terms_empirical(cfg, pilot, 2000, 9);
    const ExpectationTerms b = eq9_terms_empirical(cfg, {}, 2000, 10);
    REQUIRE(a.geometry.distances == b.geometry.distances);
    for (std::size_t r = 0; r < 4; ++r)
    {
        const double se = std::hypot(a.combiner_norm_se[r], b.combiner_norm_se[r]);
        CHECK(std::abs(a.combiner_norm[r] - b.combiner_norm[r]) < 4.0 * se);
    }
}

TEST_CASE("standard errors shrink as one over root n")
{
    const SystemConfig cfg = small_config();
    const ExpectationTerms a = eq9_terms_empirical(cfg, {}, 1000, 3);
    const ExpectationTerms b = eq9_terms_empirical(cfg, {}, 2000, 3);
    for (std::size_t r = 0; r < 4; ++r)
    {
        const double ratio = b.combiner_norm_se[r] / a.combiner_norm_se[r];
        CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
    }
}

TEST_CASE("sinr assembly rejects a non-positive denominator")
{
    const SystemConfig cfg = small_config();
    ExpectationTerms t = exact_mr_terms(cfg, place_users(cfg, 0));
    t.other_interference[0] = 0.0;
    t.combiner_norm[0] = 0.0;
    CHECK_THROWS_AS(sinr_from_terms(t, cfg), std::domain_error);
}

TEST_CASE("spatial mutual information limits")
{
    for (std::size_t nt : {2u, 4u})
    {
        CAPTURE(nt);
        const std::vector<double> low(nt, 1e-6);
        const MiEstimate zero = spatial_mi_exact(low, 10000, 1);
        CHECK(std::abs(zero.raw) <= 3.0 * zero.std_error + 1e-9);

        const std::vector<double> high(nt, 1e6);
        const MiEstimate full = spatial_mi_exact(high, 10000, 2);
        CHECK(std::abs(full.value - std::log2(static_cast<double>(nt))) < 1e-2 + 3.0 * full.std_error);
    }
    const std::vector<double> single = {4.0};
    CHECK(spatial_mi_exact(single, 100, 1).value == 0.0);
    CHECK_THROWS_AS(spatial_mi_exact(std::vector<double>{}, 100, 1), std::invalid_argument);
}

TEST_CASE("spatial bound sits below the mutual information")
{
    for (std::size_t nt : {2u, 4u})
        for (double s : {0.1, 1.0, 10.0, 100.0})
        {
            CAPTURE(nt);
            CAPTURE(s);
            const std::vector<double> row(nt, s);
            const MiEstimate mi = spatial_mi_exact(row, 20000, 7);
            CHECK(spatial_term_bound(row).clamped <= mi.value + 3.0 * mi.std_error);
            CHECK(mi.value <= std::log2(static_cast<double>(nt)) + 3.0 * mi.std_error);
        }
}

TEST_CASE("single-antenna empirical SE is log2(1 + SINR)")
{
    SystemConfig cfg = small_config();
    cfg.n_tx = 1;
    const SeEstimate se = empirical_se(cfg, {}, 200, 100, 4);
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(se.spatial[k].value == 0.0);
        CHECK(se.per_user[k] == doctest::Approx(se.overhead * std::log2(1.0 + se.sinr.sinr.at(k, 0))));
    }
}

TEST_CASE("empirical SE is deterministic for a fixed seed")
{
    const SystemConfig cfg = small_config();
    const SeEstimate a = empirical_se(cfg, {}, 100, 500, 8);
    const SeEstimate b = empirical_se(cfg, {}, 100, 500, 8);
    CHECK(a.per_user == b.per_user);
    CHECK(a.total_se == b.total_se);
    CHECK(a.total > 0.0);
    CHECK(a.total_se > 0.0);
}

TEST_CASE("redraw mode averages over placements")
{
    SystemConfig cfg = small_config();
    cfg.fixed_distances.clear();
    const ExpectationTerms fixed = eq9_terms_empirical(cfg, {}, 200, 6, 0, GeometryMode::Fixed);
    const ExpectationTerms redraw = eq9_terms_empirical(cfg, {}, 200, 6, 0, GeometryMode::Redraw);
    CHECK(fixed.geometry.gains.size() == 2);
    CHECK(redraw.geometry.gains.empty());
    CHECK(redraw.per_user_power[0] == 2.0);
    const EmpiricalSinr s = sinr_from_terms(redraw, cfg);
    for (double v : s.sinr.values)
        CHECK(v > 0.0);

    // With every user at the same fixed distance the two modes sample identical channels.
    cfg.fixed_distances = {90.0, 90.0};
    const ExpectationTerms a = eq9_terms_empirical(cfg, {}, 50, 6, 0, GeometryMode::Fixed);
    const ExpectationTerms b = eq9_terms_empirical(cfg, {}, 50, 6, 0, GeometryMode::Redraw);
    const EmpiricalSinr sa = sinr_from_terms(a, cfg);
    const EmpiricalSinr sb = sinr_from_terms(b, cfg);
    for (std::size_t i = 0; i < sa.sinr.values.size(); ++i)
        CHECK(sa.sinr.values[i] == doctest::Approx(sb.sinr.values[i]).epsilon(1e-12));
}

TEST_CASE("moment report")
{
    SUBCASE("fourth moment of a two-element unit channel")
    {
        SystemConfig cfg;
        cfg.n_rx = 2;
        cfg.n_tx = 1;
        cfg.n_users = 1;
        cfg.n_taps = 1;
        cfg.fixed_distances = {cfg.min_dist};
        const auto report = moment_report(cfg, 1000, 1);
        bool found = false;
        for (const MomentRow &row : report)
            if (row.name == "channel_fourth_moment")
            {
                CHECK(row.analytic == doctest::Approx(6.0).epsilon(1e-15));
                found = true;
            }
        CHECK(found);
    }
    SUBCASE("uncorrelated cross moment")
    {
        const SystemConfig cfg = small_config();
        const auto report = moment_report(cfg, 1000, 1);
        const UserGeometry g = place_users(cfg, 0);
        const double o0 = power_delay_profile(2, 3.0).dominant();
        const double eps = cfg.noise_power / (4.0 * cfg.rx_power);
        for (const MomentRow &row : report)
            if (row.name == "cross_user")
                CHECK(row.analytic == doctest::Approx(g.gains[1] * o0 * g.gains[0] * o0 * 16.0 * (1.0 + eps)));
    }
    SUBCASE("z-scores")
    {
        const auto report = moment_report(small_config(), 20000, 12);
        CHECK(report.size() == 7);
        for (const MomentRow &row : report)
        {
            CAPTURE(row.name);
            CHECK(std::abs(row.z) <= 4.0);
        }
    }
    CHECK_THROWS_AS(moment_report(small_config(), 999, 1), std::invalid_argument);
}

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

#include "smse/monte_carlo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smse/parallel.hpp"
#include "smse/rng.hpp"

namespace smse
{

std::string to_string(EstimationPath path)
{
    return path == EstimationPath::Shortcut ? "shortcut" : "pilot";
}

EstimationPath estimation_path_from_string(const std::string &name)
{
    if (name == "shortcut")
        return EstimationPath::Shortcut;
    if (name == "pilot")
        return EstimationPath::PilotZf;
    throw std::invalid_argument("estimation: expected 'shortcut' or 'pilot', got '" + name + "'");
}

std::string to_string(SelfInterference rule)
{
    return rule == SelfInterference::Excluded ? "excluded" : "gain_uncertainty";
}

SelfInterference self_interference_from_string(const std::string &name)
{
    if (name == "excluded")
        return SelfInterference::Excluded;
    if (name == "gain_uncertainty")
        return SelfInterference::GainUncertainty;
    throw std::invalid_argument("self_interference: expected 'excluded' or 'gain_uncertainty', got '" + name + "'");
}

std::string to_string(GeometryMode mode)
{
    return mode == GeometryMode::Fixed ? "fixed" : "redraw";
}

GeometryMode geometry_mode_from_string(const std::string &name)
{
    if (name == "fixed")
        return GeometryMode::Fixed;
    if (name == "redraw")
        return GeometryMode::Redraw;
    throw std::invalid_argument("geometry: expected 'fixed' or 'redraw', got '" + name + "'");
}

Eigen::MatrixXcd make_combiners(const CombinerSpec &spec, const ChannelEstimate &estimate)
{
    if (estimate.n_users == 0)
        throw std::invalid_argument("make_combiners: empty channel estimate");
    const Eigen::MatrixXcd &first = estimate.tap(0, 0);
    const Eigen::Index nt = first.cols();
    Eigen::MatrixXcd f(first.rows(), static_cast<Eigen::Index>(estimate.n_users) * nt);
    switch (spec.kind)
    {
    case CombinerKind::MaximumRatio:
        for (std::size_t k = 0; k < estimate.n_users; ++k)
            f.middleCols(static_cast<Eigen::Index>(k) * nt, nt) = estimate.tap(k, 0);
        break;
    }
    return f;
}

namespace
{

struct TrialContext
{
    const SystemConfig &config;
    const CombinerSpec &combiner;
    const UserGeometry &geometry;
    PowerDelayProfile pdp;
    CorrelationMatrix corr;
    PilotBook pilots;
};

struct TrialDraw
{
    ChannelRealization channel;
    ChannelEstimate estimate;
};

TrialDraw draw_trial(const TrialContext &ctx, std::uint64_t seed, std::size_t trial, GeometryMode mode)
{
    const std::uint64_t trial_seed = derive_seed(seed, {key(StreamRole::Trial), trial});
    TrialDraw d;
    if (mode == GeometryMode::Redraw)
    {
        const UserGeometry local = place_users(ctx.config, derive_seed(trial_seed, {key(StreamRole::Geometry)}));
        d.channel = sample_channel(ctx.config, local, ctx.pdp, ctx.corr, trial_seed);
    }
    else
    {
        d.channel = sample_channel(ctx.config, ctx.geometry, ctx.pdp, ctx.corr, trial_seed);
    }
    if (ctx.combiner.estimation == EstimationPath::PilotZf)
        d.estimate = zf_estimate(ctx.config, d.channel, ctx.pilots, derive_seed(trial_seed, {key(StreamRole::PilotNoise)}));
    else
        d.estimate = shortcut_estimate(ctx.config, d.channel, derive_seed(trial_seed, {key(StreamRole::EstimationNoise)}));
    return d;
}

// All taps side by side: column (k' L + l') N_t + n'.
Eigen::MatrixXcd stack_taps(const ChannelRealization &channel)
{
    const Eigen::MatrixXcd &first = channel.taps.front();
    const Eigen::Index nt = first.cols();
    Eigen::MatrixXcd all(first.rows(), static_cast<Eigen::Index>(channel.taps.size()) * nt);
    for (std::size_t c = 0; c < channel.taps.size(); ++c)
        all.middleCols(static_cast<Eigen::Index>(c) * nt, nt) = channel.taps[c];
    return all;
}

struct Eq9Sample
{
    std::complex<double> gain;
    double other = 0.0;
    double self = 0.0;
    double norm = 0.0;
};

double mean_of(std::vector<double> &scratch)
{
    return pairwise_sum(scratch) / static_cast<double>(scratch.size());
}

// Covariance of the sample means for a set of per-trial columns.
Eigen::Matrix4d covariance_of_means(const std::vector<std::vector<double>> &columns, const Eigen::Vector4d &means)
{
    const std::size_t n = columns[0].size();
    Eigen::Matrix4d cov;
    std::vector<double> scratch(n);
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
        {
            for (std::size_t t = 0; t < n; ++t)
                scratch[t] = (columns[a][t] - means[a]) * (columns[b][t] - means[b]);
            const double c = pairwise_sum(scratch) / (static_cast<double>(n) * static_cast<double>(n - 1));
            cov(a, b) = c;
            cov(b, a) = c;
        }
    return cov;
}

} // namespace

ExpectationTerms eq9_terms_empirical(const SystemConfig &config, const CombinerSpec &combiner, std::size_t n_trials,
                                     std::uint64_t seed, unsigned threads, GeometryMode mode)
{
    if (n_trials < 2)
        throw std::invalid_argument("n_trials: at least 2 trials are needed for an error estimate");
    config.validate();

    const std::size_t K = config.n_users;
    const std::size_t L = config.n_taps;
    const std::size_t Nt = config.n_tx;
    const std::size_t rows = K * Nt;

    const UserGeometry geometry = place_users(config, derive_seed(seed, {key(StreamRole::Geometry)}));
    const TrialContext ctx{config, combiner, geometry,
                           power_delay_profile(L, config.decay_db, config.pdp_exponent_mode),
                           jakes_correlation(Nt, config.device_size, config.carrier_hz), build_pilot_book(config)};

    const bool redraw = mode == GeometryMode::Redraw;
    std::vector<double> per_user_power(K, static_cast<double>(Nt));
    if (!redraw)
        for (std::size_t k = 0; k < K; ++k)
            per_user_power[k] = config.rx_power / (geometry.gains[k] * ctx.pdp.dominant());

    std::vector<Eq9Sample> samples(n_trials * rows);
    parallel_for(n_trials, threads, [&](std::size_t t)
                 {
        const TrialDraw d = draw_trial(ctx, seed, t, mode);
        std::vector<double> weights(K * L * Nt);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t c = 0; c < L * Nt; ++c)
                weights[k * L * Nt + c] = d.channel.per_user_power[k] / static_cast<double>(Nt);
        const Eigen::MatrixXcd f = make_combiners(combiner, d.estimate);
        const Eigen::MatrixXcd all = stack_taps(d.channel);
        const Eigen::MatrixXcd g = f.adjoint() * all;
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < Nt; ++n)
            {
                const auto r = static_cast<Eigen::Index>(k * Nt + n);
                const auto self_col = static_cast<Eigen::Index>(k * L * Nt + n);
                Eq9Sample &s = samples[t * rows + static_cast<std::size_t>(r)];
                s.gain = g(r, self_col);
                if (redraw)
                    s.gain *= std::sqrt(weights[static_cast<std::size_t>(self_col)]);
                s.self = std::norm(s.gain);
                double other = 0.0;
                for (Eigen::Index c = 0; c < g.cols(); ++c)
                    if (c != self_col)
                        other += weights[static_cast<std::size_t>(c)] * std::norm(g(r, c));
                s.other = other;
                s.norm = f.col(r).squaredNorm();
            } });

    ExpectationTerms out;
    out.n_users = K;
    out.n_tx = Nt;
    out.n_trials = n_trials;
    out.mode = mode;
    if (!redraw)
        out.geometry = geometry;
    out.per_user_power = per_user_power;
    out.gain_mean.resize(rows);
    out.gain_se.resize(rows);
    out.signal.resize(rows);
    out.signal_se.resize(rows);
    out.interference_sum.resize(rows);
    out.interference_sum_se.resize(rows);
    out.self_power.resize(rows);
    out.self_power_se.resize(rows);
    out.combiner_norm.resize(rows);
    out.combiner_norm_se.resize(rows);
    out.other_interference.resize(rows);
    out.mean_covariance.resize(rows);

    std::vector<double> scratch(n_trials);
    std::vector<std::vector<double>> columns(4, std::vector<double>(n_trials));
    for (std::size_t r = 0; r < rows; ++r)
    {
        const double a = per_user_power[r / Nt] / static_cast<double>(Nt);

        for (std::size_t t = 0; t < n_trials; ++t)
            scratch[t] = samples[t * rows + r].gain.real();
        const double re = mean_of(scratch);
        for (std::size_t t = 0; t < n_trials; ++t)
            scratch[t] = samples[t * rows + r].gain.imag();
        const double im = mean_of(scratch);
        const std::complex<double> m(re, im);
        const std::complex<double> dir = std::abs(m) > 0.0 ? std::conj(m) / std::abs(m) : std::complex<double>(1.0, 0.0);

        for (std::size_t t = 0; t < n_trials; ++t)
        {
            const Eq9Sample &s = samples[t * rows + r];
            columns[0][t] = (dir * s.gain).real();
            columns[1][t] = s.other;
            columns[2][t] = s.self;
            columns[3][t] = s.norm;
        }
        Eigen::Vector4d means;
        for (int c = 0; c < 4; ++c)
        {
            scratch = columns[c];
            means[c] = mean_of(scratch);
        }
        const Eigen::Matrix4d cov = covariance_of_means(columns, means);

        out.gain_mean[r] = m;
        out.gain_se[r] = std::sqrt(cov(0, 0));
        out.signal[r] = std::norm(m);
        out.signal_se[r] = 2.0 * std::abs(m) * std::sqrt(cov(0, 0));
        out.other_interference[r] = means[1];
        out.self_power[r] = means[2];
        out.self_power_se[r] = std::sqrt(cov(2, 2));
        out.interference_sum[r] = means[1] + a * means[2];
        out.interference_sum_se[r] = std::sqrt(cov(1, 1) + 2.0 * a * cov(1, 2) + a * a * cov(2, 2));
        out.combiner_norm[r] = means[3];
        out.combiner_norm_se[r] = std::sqrt(cov(3, 3));
        out.mean_covariance[r] = cov;
    }
    return out;
}

ExpectationTerms exact_mr_terms(const SystemConfig &config, const UserGeometry &geometry)
{
    config.validate();
    const std::size_t K = config.n_users;
    const std::size_t L = config.n_taps;
    const std::size_t Nt = config.n_tx;
    const double nr = static_cast<double>(config.n_rx);
    const double ntd = static_cast<double>(Nt);
    const double eps = config.noise_power / (static_cast<double>(K * L) * config.rx_power);
    const PowerDelayProfile pdp = power_delay_profile(L, config.decay_db, config.pdp_exponent_mode);
    const CorrelationMatrix corr = jakes_correlation(Nt, config.device_size, config.carrier_hz);
    const double o0 = pdp.dominant();

    ExpectationTerms out;
    out.n_users = K;
    out.n_tx = Nt;
    out.geometry = geometry;
    for (double a : geometry.gains)
        out.per_user_power.push_back(config.rx_power / (a * o0));

    const std::size_t rows = K * Nt;
    out.gain_mean.resize(rows);
    out.gain_se.assign(rows, 0.0);
    out.signal.resize(rows);
    out.signal_se.assign(rows, 0.0);
    out.interference_sum.resize(rows);
    out.interference_sum_se.assign(rows, 0.0);
    out.self_power.resize(rows);
    out.self_power_se.assign(rows, 0.0);
    out.combiner_norm.resize(rows);
    out.combiner_norm_se.assign(rows, 0.0);
    out.other_interference.resize(rows);
    out.mean_covariance.assign(rows, Eigen::Matrix4d::Zero());

    for (std::size_t k = 0; k < K; ++k)
    {
        const double ak = geometry.gains[k];
        const double norm = ak * o0 * nr * (1.0 + eps);
        for (std::size_t n = 0; n < Nt; ++n)
        {
            const std::size_t r = k * Nt + n;
            double other = 0.0;
            for (std::size_t kp = 0; kp < K; ++kp)
                for (std::size_t lp = 0; lp < L; ++lp)
                    for (std::size_t np = 0; np < Nt; ++np)
                    {
                        if (kp == k && lp == 0 && np == n)
                            continue;
                        double moment;
                        if (kp == k && lp == 0)
                        {
                            const double rho = corr.entries(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(np));
                            moment = ak * ak * o0 * o0 * nr * (nr * rho * rho + 1.0 + eps);
                        }
                        else
                        {
                            moment = geometry.gains[kp] * pdp.weights[lp] * norm;
                        }
                        other += out.per_user_power[kp] / ntd * moment;
                    }

            out.gain_mean[r] = ak * o0 * nr;
            out.signal[r] = std::norm(out.gain_mean[r]);
            out.self_power[r] = ak * ak * o0 * o0 * nr * (nr + 1.0 + eps);
            out.other_interference[r] = other;
            out.interference_sum[r] = other + out.per_user_power[k] / ntd * out.self_power[r];
            out.combiner_norm[r] = norm;
        }
    }
    return out;
}

EmpiricalSinr sinr_from_terms(const ExpectationTerms &terms, const SystemConfig &config, SelfInterference rule)
{
    EmpiricalSinr out;
    out.sinr = SinrVector(terms.n_users, terms.n_tx);
    out.std_error.assign(terms.n_users * terms.n_tx, 0.0);
    const double noise = config.noise_power;

    for (std::size_t k = 0; k < terms.n_users; ++k)
        for (std::size_t n = 0; n < terms.n_tx; ++n)
        {
            const std::size_t r = terms.index(k, n);
            const double a = terms.per_user_power[k] / static_cast<double>(terms.n_tx);
            const double u = std::abs(terms.gain_mean[r]);
            const double num = a * u * u;

            // Gradient with respect to (projected gain, other interference, self power, norm).
            Eigen::Vector4d grad;
            double den;
            if (rule == SelfInterference::Excluded)
            {
                den = terms.other_interference[r] + noise * terms.combiner_norm[r];
                if (!(den > 0.0))
                    throw std::domain_error("sinr_from_terms: non-positive denominator for user " + std::to_string(k) +
                                            ", antenna " + std::to_string(n));
                grad << 2.0 * a * u / den, -num / (den * den), 0.0, -noise * num / (den * den);
            }
            else
            {
                den = terms.other_interference[r] + a * terms.self_power[r] - num + noise * terms.combiner_norm[r];
                if (!(den > 0.0))
                    throw std::domain_error("sinr_from_terms: non-positive denominator for user " + std::to_string(k) +
                                            ", antenna " + std::to_string(n));
                grad << 2.0 * a * u / den + 2.0 * a * u * num / (den * den), -num / (den * den), -a * num / (den * den),
                    -noise * num / (den * den);
            }
            out.sinr.at(k, n) = num / den;
            out.std_error[r] = std::sqrt(std::max(0.0, grad.dot(terms.mean_covariance[r] * grad)));
        }
    return out;
}

MiEstimate spatial_mi_exact(std::span<const double> sinr_row, std::size_t n_samples, std::uint64_t seed)
{
    const std::size_t nt = sinr_row.size();
    if (nt == 0)
        throw std::invalid_argument("spatial_mi_exact: empty SINR row");
    if (n_samples < 2)
        throw std::invalid_argument("spatial_mi_exact: need at least 2 samples");

    MiEstimate out;
    out.n_samples = n_samples;
    if (nt == 1)
        return out;

    std::vector<SigmaMatrix> sigmas;
    std::vector<double> log_norm(nt); // sum_j log(pi Sigma_m,jj)
    for (std::size_t m = 0; m < nt; ++m)
    {
        sigmas.push_back(sigma_matrix(sinr_row, m));
        log_norm[m] = static_cast<double>(nt) * std::log(std::numbers::pi) + sigmas[m].log_det();
    }

    Engine engine = make_engine(seed, {key(StreamRole::MutualInformation)});
    std::uniform_int_distribution<std::size_t> pick(0, nt - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> values(n_samples);
    std::vector<double> power(nt);
    std::vector<double> log_p(nt);
    const double log_nt = std::log(static_cast<double>(nt));
    for (std::size_t s = 0; s < n_samples; ++s)
    {
        const std::size_t active = pick(engine);
        for (std::size_t j = 0; j < nt; ++j)
        {
            const double half = 0.5 * sigmas[active].diag(j);
            const double re = gauss(engine);
            const double im = gauss(engine);
            power[j] = half * (re * re + im * im);
        }
        double top = -INFINITY;
        for (std::size_t m = 0; m < nt; ++m)
        {
            double quad = 0.0;
            for (std::size_t j = 0; j < nt; ++j)
                quad += power[j] / sigmas[m].diag(j);
            log_p[m] = -log_norm[m] - quad;
            top = std::max(top, log_p[m]);
        }
        double acc = 0.0;
        for (double lp : log_p)
            acc += std::exp(lp - top);
        const double log_mix = top + std::log(acc) - log_nt;
        values[s] = (log_p[active] - log_mix) / std::numbers::ln2;
    }

    const double mean = pairwise_sum(values) / static_cast<double>(n_samples);
    for (double &v : values)
        v = (v - mean) * (v - mean);
    const double var = pairwise_sum(values) / static_cast<double>(n_samples - 1);
    out.raw = mean;
    out.value = std::max(0.0, mean);
    out.std_error = std::sqrt(var / static_cast<double>(n_samples));
    return out;
}

SeEstimate empirical_se(const SystemConfig &config, const CombinerSpec &combiner, std::size_t n_trials,
                        std::size_t n_mi_samples, std::uint64_t seed, const SimulationOptions &options)
{
    const ExpectationTerms terms =
        eq9_terms_empirical(config, combiner, n_trials, seed, options.threads, options.geometry);

    SeEstimate out;
    out.sinr = sinr_from_terms(terms, config, options.rule);
    out.overhead = static_cast<double>(config.payload_len()) / static_cast<double>(config.frame_len);

    const std::size_t Nt = config.n_tx;
    double total_var = 0.0;
    for (std::size_t k = 0; k < config.n_users; ++k)
    {
        const auto row = out.sinr.sinr.row(k);
        const MiEstimate mi = spatial_mi_exact(row, n_mi_samples, derive_seed(seed, {key(StreamRole::MutualInformation), k}));
        const double data = cmcc_term(row);
        out.spatial.push_back(mi);
        out.cmcc.push_back(data);
        out.per_user.push_back(out.overhead * (mi.value + data));

        // SINR uncertainty propagated through cmcc + closed-form spatial term (a smooth proxy for the
        // mixture information); antenna errors treated as independent.
        double var = mi.std_error * mi.std_error;
        std::vector<double> probe(row.begin(), row.end());
        for (std::size_t n = 0; n < Nt; ++n)
        {
            const double s = row[n];
            const double h = 1e-4 * s;
            probe[n] = s + h;
            const double up = cmcc_term(probe) + spatial_term_bound(probe).raw;
            probe[n] = s - h;
            const double down = cmcc_term(probe) + spatial_term_bound(probe).raw;
            probe[n] = s;
            const double slope = (up - down) / (2.0 * h);
            const double se = out.sinr.std_error[k * Nt + n];
            var += slope * slope * se * se;
        }
        out.per_user_se.push_back(out.overhead * std::sqrt(var));
        out.total += out.per_user.back();
        total_var += out.per_user_se.back() * out.per_user_se.back();
    }
    out.total_se = std::sqrt(total_var);
    return out;
}

std::vector<MomentRow> moment_report(const SystemConfig &config, std::size_t n_samples, std::uint64_t seed,
                                     const CombinerSpec &combiner, unsigned threads)
{
    if (n_samples < 1000)
        throw std::invalid_argument("moment_report: n_samples must be at least 1000");
    config.validate();

    const std::size_t K = config.n_users;
    const std::size_t L = config.n_taps;
    const std::size_t Nt = config.n_tx;
    const double nr = static_cast<double>(config.n_rx);
    const double eps = config.noise_power / (static_cast<double>(K * L) * config.rx_power);

    const UserGeometry geometry = place_users(config, derive_seed(seed, {key(StreamRole::Geometry)}));
    const TrialContext ctx{config, combiner, geometry,
                           power_delay_profile(L, config.decay_db, config.pdp_exponent_mode),
                           jakes_correlation(Nt, config.device_size, config.carrier_hz), build_pilot_book(config)};
    const double a0 = geometry.gains[0];
    const double o0 = ctx.pdp.dominant();

    struct Probe
    {
        std::string name;
        std::string description;
        double analytic;
    };
    std::vector<Probe> probes;
    probes.push_back({"combiner_gain", "Re E{f^H h_k0n}", a0 * o0 * nr});
    probes.push_back({"combiner_norm", "E{||f||^2}", a0 * o0 * nr * (1.0 + eps)});
    const bool cross_user = K >= 2;
    const bool cross_tap = L >= 2;
    const bool cross_antenna = Nt >= 2;
    if (cross_user)
        probes.push_back({"cross_user", "E|f^H h_{k+1,0,n}|^2", geometry.gains[1] * o0 * a0 * o0 * nr * (1.0 + eps)});
    if (cross_tap)
        probes.push_back({"cross_tap", "E|f^H h_{k,1,n}|^2", a0 * ctx.pdp.weights[1] * a0 * o0 * nr * (1.0 + eps)});
    probes.push_back({"channel_fourth_moment", "E{||h_k0n||^4}", a0 * a0 * o0 * o0 * nr * (nr + 1.0)});
    if (cross_antenna)
    {
        const double rho = ctx.corr.entries(0, 1);
        probes.push_back({"cross_antenna", "E|f^H h_{k,0,n+1}|^2", a0 * a0 * o0 * o0 * nr * (nr * rho * rho + 1.0 + eps)});
    }
    probes.push_back({"self_power", "E|f^H h_k0n|^2", a0 * a0 * o0 * o0 * nr * (nr + 1.0 + eps)});

    const std::size_t width = probes.size();
    std::vector<double> samples(n_samples * width);
    parallel_for(n_samples, threads, [&](std::size_t t)
                 {
        const TrialDraw d = draw_trial(ctx, seed, t, GeometryMode::Fixed);
        const Eigen::VectorXcd f = d.estimate.tap(0, 0).col(0);
        const Eigen::VectorXcd h = d.channel.tap(0, 0).col(0);
        double *row = samples.data() + t * width;
        std::size_t c = 0;
        const std::complex<double> gain = f.dot(h); // f^H h
        row[c++] = gain.real();
        row[c++] = f.squaredNorm();
        if (cross_user)
            row[c++] = std::norm(f.dot(d.channel.tap(1, 0).col(0)));
        if (cross_tap)
            row[c++] = std::norm(f.dot(d.channel.tap(0, 1).col(0)));
        row[c++] = h.squaredNorm() * h.squaredNorm();
        if (cross_antenna)
            row[c++] = std::norm(f.dot(d.channel.tap(0, 0).col(1)));
        row[c++] = std::norm(gain); });

    std::vector<MomentRow> report;
    std::vector<double> column(n_samples);
    for (std::size_t c = 0; c < width; ++c)
    {
        for (std::size_t t = 0; t < n_samples; ++t)
            column[t] = samples[t * width + c];
        const double mean = pairwise_sum(column) / static_cast<double>(n_samples);
        for (double &v : column)
            v = (v - mean) * (v - mean);
        const double var = pairwise_sum(column) / static_cast<double>(n_samples - 1);
        MomentRow row;
        row.name = probes[c].name;
        row.description = probes[c].description;
        row.analytic = probes[c].analytic;
        row.estimate = mean;
        row.std_error = std::sqrt(var / static_cast<double>(n_samples));
        row.z = row.std_error > 0.0 ? (mean - row.analytic) / row.std_error : 0.0;
        report.push_back(row);
    }
    return report;
}

} // namespace smse

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

#ifndef SMSE_MONTE_CARLO_HPP
#define SMSE_MONTE_CARLO_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smse/analytic_bounds.hpp"
#include "smse/channel_model.hpp"
#include "smse/system_config.hpp"

namespace smse
{

enum class CombinerKind
{
    MaximumRatio, // f_k0n = h_hat_k0n
};

enum class EstimationPath
{
    Shortcut, // h_hat = h + w drawn directly
    PilotZf,  // full pilot transmission and zero-forcing solve
};

std::string to_string(EstimationPath path);
EstimationPath estimation_path_from_string(const std::string &name);

struct CombinerSpec
{
    CombinerKind kind = CombinerKind::MaximumRatio;
    EstimationPath estimation = EstimationPath::Shortcut;
};

// Combining vectors for every (user, antenna), as columns k * N_t + n of an N_r x K N_t matrix.
Eigen::MatrixXcd make_combiners(const CombinerSpec &spec, const ChannelEstimate &estimate);

// How the desired user's own (k, 0, n) term enters the SINR denominator.
enum class SelfInterference
{
    Excluded,        // the whole E|f^H h_k0n|^2 leaves the denominator; matches mr_sinr_closed_form
    GainUncertainty, // only |E f^H h_k0n|^2 leaves it; matches mr_sinr_closed_form_with_gain_uncertainty
};

std::string to_string(SelfInterference rule);
SelfInterference self_interference_from_string(const std::string &name);

// User placement across Monte Carlo trials.
enum class GeometryMode
{
    Fixed,  // one placement per call; the estimates are conditional on it
    Redraw, // a fresh placement in every trial, averaged over
};

std::string to_string(GeometryMode mode);
GeometryMode geometry_mode_from_string(const std::string &name);

// Monte Carlo estimates of the expectations in the use-and-forget SINR, per (user, antenna),
// conditioned on one draw of the user geometry.
struct ExpectationTerms
{
    std::size_t n_users = 0;
    std::size_t n_tx = 0;
    std::size_t n_trials = 0;
    GeometryMode mode = GeometryMode::Fixed;
    UserGeometry geometry;              // empty in Redraw mode
    std::vector<double> per_user_power; // N_t in Redraw mode, where the per-trial powers are folded into the samples

    // Indexed k * N_t + n.
    std::vector<std::complex<double>> gain_mean; // E{f^H h_k0n}
    std::vector<double> gain_se;                 // along the direction of gain_mean
    std::vector<double> signal;                  // |E{f^H h_k0n}|^2
    std::vector<double> signal_se;
    std::vector<double> interference_sum;        // sum_{k'l'n'} (P_k'/N_t) E|f^H h_k'l'n'|^2
    std::vector<double> interference_sum_se;
    std::vector<double> self_power;              // E|f^H h_k0n|^2
    std::vector<double> self_power_se;
    std::vector<double> combiner_norm;           // E||f||^2
    std::vector<double> combiner_norm_se;

    // Covariance of the sample means of (projected gain, interference excluding the self term,
    // self power, combiner norm). Feeds the delta-method SINR error.
    std::vector<Eigen::Matrix4d> mean_covariance;
    std::vector<double> other_interference; // interference_sum minus the (k, 0, n) term

    std::size_t index(std::size_t k, std::size_t n) const { return k * n_tx + n; }
};

// Throws std::invalid_argument for n_trials < 2. threads = 0 uses all cores; the result does not
// depend on the thread count.
//
// In Redraw mode every sample is weighted by its own trial's transmit power: the gain by
// sqrt(P_k/N_t), the self power by P_k/N_t. The SINR assembly then sees unit weights.
ExpectationTerms eq9_terms_empirical(const SystemConfig &config, const CombinerSpec &combiner, std::size_t n_trials,
                                     std::uint64_t seed, unsigned threads = 0,
                                     GeometryMode mode = GeometryMode::Fixed);

// Exact moments of the MR combiner under the model, assembled into ExpectationTerms
// (zero standard errors) for a given geometry.
ExpectationTerms exact_mr_terms(const SystemConfig &config, const UserGeometry &geometry);

struct EmpiricalSinr
{
    SinrVector sinr;
    std::vector<double> std_error; // delta method, same layout as sinr.values
};

// SINR_kin = (P_k/N_t) signal / (interference - (P_k/N_t) removed + sigma^2 norm), where "removed" is
// self_power or signal depending on the rule. Throws std::domain_error on a non-positive denominator.
EmpiricalSinr sinr_from_terms(const ExpectationTerms &terms, const SystemConfig &config,
                              SelfInterference rule = SelfInterference::Excluded);

struct MiEstimate
{
    double value = 0.0; // bits, clipped at 0
    double raw = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

// I(y; e) for the N_t-component diagonal Gaussian mixture y | e_n ~ CN(0, Sigma_n), uniform prior.
MiEstimate spatial_mi_exact(std::span<const double> sinr_row, std::size_t n_samples, std::uint64_t seed);

struct SeEstimate
{
    std::vector<double> per_user;
    std::vector<double> per_user_se;
    double total = 0.0;
    double total_se = 0.0;
    double overhead = 0.0;
    EmpiricalSinr sinr;
    std::vector<MiEstimate> spatial;
    std::vector<double> cmcc;
};

struct SimulationOptions
{
    SelfInterference rule = SelfInterference::Excluded;
    GeometryMode geometry = GeometryMode::Fixed;
    unsigned threads = 0;
};

// S_k = (N_s/N_a) [I(y; e) + cmcc(SINR_k)] with SINR from the empirical expectations.
SeEstimate empirical_se(const SystemConfig &config, const CombinerSpec &combiner, std::size_t n_trials,
                        std::size_t n_mi_samples, std::uint64_t seed, const SimulationOptions &options = {});

struct MomentRow
{
    std::string name;
    std::string description;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z = 0.0;
};

// Analytic vs simulated moments of the MR combiner for user 0, antenna 0. Needs n_samples >= 1000.
std::vector<MomentRow> moment_report(const SystemConfig &config, std::size_t n_samples, std::uint64_t seed,
                                     const CombinerSpec &combiner = {}, unsigned threads = 0);

} // namespace smse

#endif

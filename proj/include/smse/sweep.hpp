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

#ifndef SMSE_SWEEP_HPP
#define SMSE_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smse/monte_carlo.hpp"
#include "smse/system_config.hpp"

namespace smse
{

// Parameters a sweep may vary, by their config-file names.
enum class SweepParam
{
    NRx,
    NTx,
    NUsers,
    NTaps,
    RxPowerDb,
};

std::string to_string(SweepParam param);
SweepParam sweep_param_from_string(const std::string &name);

// Writes one value of the parameter into a configuration. Count parameters must be whole and positive.
void apply_param(SystemConfig &config, SweepParam param, double value);

struct SweepSpec
{
    std::string name = "custom";
    SystemConfig base;
    SweepParam swept_param = SweepParam::NRx;
    std::vector<double> grid;
    std::optional<SweepParam> curve_param;
    std::vector<double> curve_values;

    std::size_t n_trials = 1000;
    std::size_t n_mi_samples = 10000;
    bool simulate = true;
    unsigned threads = 0;
    bool record_runtime = false;
    CombinerSpec combiner;
    SimulationOptions options;
    std::string output_path;

    // Rejects empty or unordered grids, then validates every (curve, grid) configuration.
    void validate() const;
};

struct ResultRow
{
    std::string curve_label;
    double swept_value = 0.0;
    double se_bound_total = 0.0;
    double se_mc_total = 0.0;  // NaN without Monte Carlo
    double se_mc_stderr = 0.0; // NaN without Monte Carlo
    std::uint64_t seed = 0;
    double runtime_ms = 0.0;

    std::vector<double> se_bound_per_user;
    std::vector<double> se_mc_per_user;
    std::vector<double> sinr_closed_form; // per transmit antenna (identical for all users)
    std::string error;                    // non-empty when the point failed
};

// Flat JSON document with configuration and sweep keys. Overrides are "key=value" strings applied
// on top of the file, in order. Unknown keys are errors.
SweepSpec parse_config(const std::string &path, const std::vector<std::string> &overrides = {});
SweepSpec parse_config_text(const std::string &json_text, const std::vector<std::string> &overrides = {});

// The five figure sweeps: fig4 .. fig8.
SweepSpec preset(const std::string &name);
std::vector<std::string> preset_names();

// Configuration of one point; the seed is the one recorded in the row.
SystemConfig point_config(const SweepSpec &spec, std::size_t curve, std::size_t index);
std::uint64_t point_seed(const SweepSpec &spec, std::size_t curve, std::size_t index);

// Rows ordered by (curve, grid index). Failed points carry a message in `error` and NaN values;
// the remaining points still run.
std::vector<ResultRow> run_sweep(const SweepSpec &spec, std::ostream *log = nullptr);

void write_csv(std::ostream &os, const std::vector<ResultRow> &rows);

// Writes the CSV and a companion `<path>.plot.py` script. Throws on empty rows (no file is created)
// and on an unwritable path.
void emit_csv(const std::vector<ResultRow> &rows, const std::string &path);

std::vector<ResultRow> read_csv(std::istream &is);
std::vector<ResultRow> read_csv(const std::string &path);

std::string format_value(double value);

} // namespace smse

#endif

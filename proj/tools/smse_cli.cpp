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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "smse/monte_carlo.hpp"
#include "smse/sweep.hpp"

namespace
{

struct CommonFlags
{
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> mi_samples;
    std::string out;
    std::vector<double> fixed_distances;
    unsigned threads = 0;
    bool timing = false;
    std::string estimation;
    std::string geometry;
    std::string self_interference;
};

void add_common(CLI::App *cmd, CommonFlags &f, bool with_config)
{
    if (with_config)
    {
        cmd->add_option("--config", f.config_path, "flat JSON configuration file");
        cmd->add_option("--set", f.overrides, "override a configuration key, key=value (repeatable)");
    }
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per point");
    cmd->add_option("--mi-samples", f.mi_samples, "samples for the antenna-index mutual information");
    cmd->add_option("--out", f.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--fixed-distances", f.fixed_distances, "comma-separated user distances in meters")
        ->delimiter(',');
    cmd->add_option("--threads", f.threads, "worker threads, 0 for all cores");
    cmd->add_flag("--timing", f.timing, "record wall-clock runtime per point (makes output non-reproducible)");
    cmd->add_option("--estimation", f.estimation, "channel estimation path: shortcut or pilot");
    cmd->add_option("--geometry", f.geometry, "user placement across trials: fixed or redraw");
    cmd->add_option("--self-interference", f.self_interference, "SINR rule: excluded or gain_uncertainty");
}

void apply_common(smse::SweepSpec &spec, const CommonFlags &f)
{
    if (f.seed)
        spec.base.master_seed = *f.seed;
    if (f.trials)
        spec.n_trials = *f.trials;
    if (f.mi_samples)
        spec.n_mi_samples = *f.mi_samples;
    if (!f.out.empty())
        spec.output_path = f.out;
    if (!f.fixed_distances.empty())
        spec.base.fixed_distances = f.fixed_distances;
    spec.threads = f.threads;
    spec.record_runtime = f.timing;
    if (!f.estimation.empty())
        spec.combiner.estimation = smse::estimation_path_from_string(f.estimation);
    if (!f.geometry.empty())
        spec.options.geometry = smse::geometry_mode_from_string(f.geometry);
    if (!f.self_interference.empty())
        spec.options.rule = smse::self_interference_from_string(f.self_interference);
    spec.validate();
}

smse::SweepSpec spec_from_flags(const CommonFlags &f)
{
    if (f.config_path.empty())
        return smse::parse_config_text("", f.overrides);
    return smse::parse_config(f.config_path, f.overrides);
}

int run_and_write(const smse::SweepSpec &spec)
{
    const std::vector<smse::ResultRow> rows = smse::run_sweep(spec, &std::cerr);
    if (spec.output_path.empty())
        smse::write_csv(std::cout, rows);
    else
        smse::emit_csv(rows, spec.output_path);
    for (const smse::ResultRow &r : rows)
        if (!r.error.empty())
            return 2;
    return 0;
}

int run_moments(const smse::SweepSpec &spec, std::size_t samples)
{
    const smse::SystemConfig cfg = smse::point_config(spec, 0, 0);
    const auto report = smse::moment_report(cfg, samples, spec.base.master_seed, spec.combiner, spec.threads);
    std::printf("%-22s %16s %16s %14s %8s  %s\n", "moment", "analytic", "estimate", "std_error", "z", "quantity");
    for (const smse::MomentRow &row : report)
        std::printf("%-22s %16.9g %16.9g %14.6g %8.3f  %s\n", row.name.c_str(), row.analytic, row.estimate,
                    row.std_error, row.z, row.description.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"smse: spectral-efficiency bounds and Monte Carlo checks for massive SC-SM MIMO uplink"};
    app.require_subcommand(1);

    CommonFlags bound_flags;
    CLI::App *bound = app.add_subcommand("bound", "closed-form SE lower bound only");
    add_common(bound, bound_flags, true);

    CommonFlags sim_flags;
    CLI::App *simulate = app.add_subcommand("simulate", "closed-form bound and Monte Carlo SE");
    add_common(simulate, sim_flags, true);

    CommonFlags preset_flags;
    std::string preset_name;
    bool bound_only = false;
    CLI::App *preset = app.add_subcommand("preset", "run one of the figure sweeps (fig4 .. fig8)");
    preset->add_option("name", preset_name, "preset name")->required();
    preset->add_flag("--bound-only", bound_only, "skip the Monte Carlo columns");
    add_common(preset, preset_flags, false);

    CommonFlags moment_flags;
    std::size_t moment_samples = 100000;
    CLI::App *moments = app.add_subcommand("moments", "analytic vs simulated combiner moments (user 0, antenna 0)");
    moments->add_option("--samples", moment_samples, "Monte Carlo samples (at least 1000)");
    add_common(moments, moment_flags, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (bound->parsed())
        {
            smse::SweepSpec spec = spec_from_flags(bound_flags);
            spec.simulate = false;
            apply_common(spec, bound_flags);
            return run_and_write(spec);
        }
        if (simulate->parsed())
        {
            smse::SweepSpec spec = spec_from_flags(sim_flags);
            spec.simulate = true;
            apply_common(spec, sim_flags);
            return run_and_write(spec);
        }
        if (preset->parsed())
        {
            smse::SweepSpec spec = smse::preset(preset_name);
            spec.simulate = !bound_only;
            apply_common(spec, preset_flags);
            return run_and_write(spec);
        }
        if (moments->parsed())
        {
            smse::SweepSpec spec = spec_from_flags(moment_flags);
            spec.simulate = false;
            apply_common(spec, moment_flags);
            return run_moments(spec, moment_samples);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "smse: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

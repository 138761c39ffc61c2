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

#include "smse/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "smse/analytic_bounds.hpp"
#include "smse/channel_model.hpp"
#include "smse/rng.hpp"

namespace smse
{

using nlohmann::json;

std::string to_string(SweepParam param)
{
    switch (param)
    {
    case SweepParam::NRx:
        return "n_rx";
    case SweepParam::NTx:
        return "n_tx";
    case SweepParam::NUsers:
        return "n_users";
    case SweepParam::NTaps:
        return "n_taps";
    case SweepParam::RxPowerDb:
        return "rx_power_db";
    }
    return "unknown";
}

SweepParam sweep_param_from_string(const std::string &name)
{
    for (SweepParam p : {SweepParam::NRx, SweepParam::NTx, SweepParam::NUsers, SweepParam::NTaps, SweepParam::RxPowerDb})
        if (to_string(p) == name)
            return p;
    throw std::invalid_argument("swept_param: '" + name +
                                "' is not sweepable (use n_rx, n_tx, n_users, n_taps or rx_power_db)");
}

namespace
{

std::size_t as_count(const std::string &field, double value)
{
    if (!std::isfinite(value) || value < 1.0 || value != std::floor(value) || value > 1e9)
        throw std::invalid_argument(field + ": expected a whole number of at least 1, got " + format_value(value));
    return static_cast<std::size_t>(value);
}

} // namespace

void apply_param(SystemConfig &config, SweepParam param, double value)
{
    switch (param)
    {
    case SweepParam::NRx:
        config.n_rx = as_count("n_rx", value);
        break;
    case SweepParam::NTx:
        config.n_tx = as_count("n_tx", value);
        break;
    case SweepParam::NUsers:
        config.n_users = as_count("n_users", value);
        break;
    case SweepParam::NTaps:
        config.n_taps = as_count("n_taps", value);
        break;
    case SweepParam::RxPowerDb:
        if (!std::isfinite(value))
            throw std::invalid_argument("rx_power_db: must be finite");
        config.rx_power = db_to_linear(value);
        break;
    }
}

std::string format_value(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

SystemConfig point_config(const SweepSpec &spec, std::size_t curve, std::size_t index)
{
    SystemConfig cfg = spec.base;
    if (spec.curve_param)
        apply_param(cfg, *spec.curve_param, spec.curve_values.at(curve));
    apply_param(cfg, spec.swept_param, spec.grid.at(index));
    return cfg;
}

std::uint64_t point_seed(const SweepSpec &spec, std::size_t curve, std::size_t index)
{
    return derive_seed(spec.base.master_seed, {key(StreamRole::SweepPoint), curve, index});
}

void SweepSpec::validate() const
{
    if (grid.empty())
        throw std::invalid_argument("grid: must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("grid: values must be strictly increasing");
    if (curve_param)
    {
        if (*curve_param == swept_param)
            throw std::invalid_argument("curve_param: must differ from swept_param");
        if (curve_values.empty())
            throw std::invalid_argument("curve_values: must not be empty when curve_param is set");
        for (std::size_t i = 1; i < curve_values.size(); ++i)
            if (!(curve_values[i] > curve_values[i - 1]))
                throw std::invalid_argument("curve_values: values must be strictly increasing");
    }
    else if (!curve_values.empty())
    {
        throw std::invalid_argument("curve_values: given without curve_param");
    }
    if (simulate)
    {
        if (n_trials < 2)
            throw std::invalid_argument("trials: at least 2 are needed for an error estimate");
        if (n_mi_samples < 2)
            throw std::invalid_argument("mi_samples: at least 2 are needed for an error estimate");
    }
    const std::size_t curves = curve_param ? curve_values.size() : 1;
    for (std::size_t c = 0; c < curves; ++c)
        for (std::size_t g = 0; g < grid.size(); ++g)
            point_config(*this, c, g).validate();
}

namespace
{

std::vector<double> number_list(const json &value, const std::string &field)
{
    if (!value.is_array())
        throw std::invalid_argument(field + ": expected an array of numbers");
    std::vector<double> out;
    for (const json &v : value)
    {
        if (!v.is_number())
            throw std::invalid_argument(field + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double number(const json &value, const std::string &field)
{
    if (!value.is_number())
        throw std::invalid_argument(field + ": expected a number");
    return value.get<double>();
}

std::string text(const json &value, const std::string &field)
{
    if (!value.is_string())
        throw std::invalid_argument(field + ": expected a string");
    return value.get<std::string>();
}

double positive(const json &value, const std::string &field)
{
    const double v = number(value, field);
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(field + ": must be a positive finite value");
    return v;
}

std::size_t count(const json &value, const std::string &field)
{
    return as_count(field, number(value, field));
}

std::uint64_t seed_value(const json &value)
{
    if (value.is_number_unsigned())
        return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<long long>() >= 0)
        return static_cast<std::uint64_t>(value.get<long long>());
    throw std::invalid_argument("seed: expected a non-negative integer");
}

// Overrides arrive as text; anything that is not valid JSON is taken as a string.
json override_value(const std::string &raw)
{
    json parsed = json::parse(raw, nullptr, false);
    if (parsed.is_discarded())
        return json(raw);
    return parsed;
}

SweepSpec spec_from_document(const json &doc)
{
    if (!doc.is_object())
        throw std::invalid_argument("config: expected a JSON object");

    SweepSpec spec;
    SystemConfig &cfg = spec.base;
    bool have_swept = false;

    for (const auto &[name, value] : doc.items())
    {
        if (name == "n_rx")
            cfg.n_rx = count(value, name);
        else if (name == "n_tx")
            cfg.n_tx = count(value, name);
        else if (name == "n_users")
            cfg.n_users = count(value, name);
        else if (name == "n_taps")
            cfg.n_taps = count(value, name);
        else if (name == "frame_len")
            cfg.frame_len = count(value, name);
        else if (name == "rx_power_db")
            cfg.rx_power = db_to_linear(number(value, name));
        else if (name == "noise_power_db")
            cfg.noise_power = db_to_linear(number(value, name));
        else if (name == "decay_db")
            cfg.decay_db = number(value, name);
        else if (name == "device_size")
            cfg.device_size = positive(value, name);
        else if (name == "carrier_hz")
            cfg.carrier_hz = positive(value, name);
        else if (name == "cell_radius")
            cfg.cell_radius = positive(value, name);
        else if (name == "min_dist")
            cfg.min_dist = positive(value, name);
        else if (name == "pathloss_exp")
            cfg.pathloss_exp = positive(value, name);
        else if (name == "seed")
            cfg.master_seed = seed_value(value);
        else if (name == "pdp_exponent_mode")
            cfg.pdp_exponent_mode = pdp_exponent_from_string(text(value, name));
        else if (name == "fixed_distances")
            cfg.fixed_distances = number_list(value, name);
        else if (name == "swept_param")
        {
            spec.swept_param = sweep_param_from_string(text(value, name));
            have_swept = true;
        }
        else if (name == "grid")
            spec.grid = number_list(value, name);
        else if (name == "curve_param")
            spec.curve_param = sweep_param_from_string(text(value, name));
        else if (name == "curve_values")
            spec.curve_values = number_list(value, name);
        else if (name == "trials")
            spec.n_trials = count(value, name);
        else if (name == "mi_samples")
            spec.n_mi_samples = count(value, name);
        else if (name == "threads")
            spec.threads = static_cast<unsigned>(number(value, name));
        else if (name == "out")
            spec.output_path = text(value, name);
        else if (name == "estimation")
            spec.combiner.estimation = estimation_path_from_string(text(value, name));
        else if (name == "self_interference")
            spec.options.rule = self_interference_from_string(text(value, name));
        else if (name == "geometry")
            spec.options.geometry = geometry_mode_from_string(text(value, name));
        else
            throw std::invalid_argument("unknown field '" + name + "'");
    }

    if (!have_swept)
    {
        // A plain configuration is a one-point sweep over its own receive-antenna count.
        if (!spec.grid.empty())
            throw std::invalid_argument("grid: given without swept_param");
        if (cfg.n_rx == 0)
            throw std::invalid_argument("n_rx: required");
        spec.swept_param = SweepParam::NRx;
        spec.grid = {static_cast<double>(cfg.n_rx)};
    }

    // Counts not supplied by the swept or curve parameter must come from the document.
    const auto required = [&](SweepParam p, std::size_t value) {
        if (value == 0 && spec.swept_param != p && !(spec.curve_param && *spec.curve_param == p))
            throw std::invalid_argument(to_string(p) + ": required");
    };
    required(SweepParam::NRx, cfg.n_rx);
    required(SweepParam::NTx, cfg.n_tx);
    required(SweepParam::NUsers, cfg.n_users);
    required(SweepParam::NTaps, cfg.n_taps);

    spec.validate();
    return spec;
}

json merge_overrides(json doc, const std::vector<std::string> &overrides)
{
    for (const std::string &item : overrides)
    {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("override '" + item + "': expected key=value");
        doc[item.substr(0, eq)] = override_value(item.substr(eq + 1));
    }
    return doc;
}

} // namespace

SweepSpec parse_config_text(const std::string &json_text, const std::vector<std::string> &overrides)
{
    json doc = json::object();
    if (!json_text.empty())
    {
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
        }
    }
    return spec_from_document(merge_overrides(std::move(doc), overrides));
}

SweepSpec parse_config(const std::string &path, const std::vector<std::string> &overrides)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

std::vector<std::string> preset_names()
{
    return {"fig4", "fig5", "fig6", "fig7", "fig8"};
}

SweepSpec preset(const std::string &name)
{
    SweepSpec spec;
    spec.name = name;
    SystemConfig &cfg = spec.base;
    cfg.frame_len = 2048;
    cfg.rx_power = db_to_linear(10.0);
    cfg.noise_power = db_to_linear(0.0);
    cfg.decay_db = 3.0;
    cfg.device_size = 0.1;
    cfg.carrier_hz = 5.0e9;
    cfg.cell_radius = 500.0;
    cfg.min_dist = 50.0;
    cfg.pathloss_exp = 3.7;

    const std::vector<double> users = {5, 10, 20};
    if (name == "fig4")
    {
        cfg.n_tx = 2;
        cfg.n_taps = 3;
        spec.swept_param = SweepParam::NRx;
        spec.grid = {32, 64, 128, 256, 512, 1024};
        spec.curve_param = SweepParam::NUsers;
        spec.curve_values = users;
    }
    else if (name == "fig5")
    {
        cfg.n_users = 10;
        cfg.n_taps = 3;
        spec.swept_param = SweepParam::NTx;
        spec.grid = {1, 2, 4, 8, 16};
        spec.curve_param = SweepParam::NRx;
        spec.curve_values = {128, 512};
    }
    else if (name == "fig6")
    {
        cfg.n_rx = 512;
        cfg.n_tx = 2;
        cfg.n_taps = 3;
        spec.swept_param = SweepParam::NUsers;
        spec.grid = {2, 5, 10, 20, 40, 80, 120, 160};
    }
    else if (name == "fig7")
    {
        cfg.n_rx = 512;
        cfg.n_tx = 2;
        spec.swept_param = SweepParam::NTaps;
        spec.grid = {1, 2, 3, 5, 8};
        spec.curve_param = SweepParam::NUsers;
        spec.curve_values = users;
    }
    else if (name == "fig8")
    {
        cfg.n_rx = 512;
        cfg.n_tx = 2;
        cfg.n_taps = 3;
        spec.swept_param = SweepParam::RxPowerDb;
        spec.grid = {-10, -5, 0, 5, 10, 20, 30};
        spec.curve_param = SweepParam::NUsers;
        spec.curve_values = users;
    }
    else
    {
        throw std::invalid_argument("preset: unknown name '" + name + "' (expected fig4, fig5, fig6, fig7 or fig8)");
    }
    return spec;
}

namespace
{

std::string curve_label(const SweepSpec &spec, std::size_t curve)
{
    if (!spec.curve_param)
        return "all";
    return to_string(*spec.curve_param) + "=" + format_value(spec.curve_values[curve]);
}

ResultRow run_point(const SweepSpec &spec, std::size_t c, std::size_t g)
{
    ResultRow row;
    row.curve_label = curve_label(spec, c);
    row.swept_value = spec.grid[g];
    row.seed = point_seed(spec, c, g);
    row.se_mc_total = std::numeric_limits<double>::quiet_NaN();
    row.se_mc_stderr = std::numeric_limits<double>::quiet_NaN();

    const auto start = std::chrono::steady_clock::now();
    const SystemConfig cfg = point_config(spec, c, g);
    cfg.validate();

    const PowerDelayProfile pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_exponent_mode);
    const CorrelationMatrix corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    const SinrVector sinr = mr_sinr_closed_form(cfg, pdp, corr);
    const SeBound bound = se_lower_bound(cfg, sinr);
    row.se_bound_total = bound.total;
    row.se_bound_per_user = bound.per_user;
    row.sinr_closed_form.assign(sinr.values.begin(), sinr.values.begin() + static_cast<long>(cfg.n_tx));

    if (spec.simulate)
    {
        SimulationOptions options = spec.options;
        options.threads = spec.threads;
        const SeEstimate mc = empirical_se(cfg, spec.combiner, spec.n_trials, spec.n_mi_samples, row.seed, options);
        row.se_mc_total = mc.total;
        row.se_mc_stderr = mc.total_se;
        row.se_mc_per_user = mc.per_user;
    }

    if (spec.record_runtime)
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

} // namespace

std::vector<ResultRow> run_sweep(const SweepSpec &spec, std::ostream *log)
{
    if (spec.grid.empty())
        throw std::invalid_argument("grid: must not be empty");
    const std::size_t curves = spec.curve_param ? spec.curve_values.size() : 1;
    std::vector<ResultRow> rows;
    rows.reserve(curves * spec.grid.size());
    for (std::size_t c = 0; c < curves; ++c)
        for (std::size_t g = 0; g < spec.grid.size(); ++g)
        {
            try
            {
                rows.push_back(run_point(spec, c, g));
            }
            catch (const std::exception &e)
            {
                ResultRow row;
                row.curve_label = curve_label(spec, c);
                row.swept_value = spec.grid[g];
                row.seed = point_seed(spec, c, g);
                row.se_bound_total = std::numeric_limits<double>::quiet_NaN();
                row.se_mc_total = std::numeric_limits<double>::quiet_NaN();
                row.se_mc_stderr = std::numeric_limits<double>::quiet_NaN();
                row.error = e.what();
                if (log)
                    *log << "point " << row.curve_label << ", " << to_string(spec.swept_param) << "="
                         << format_value(row.swept_value) << " failed: " << row.error << '\n';
                rows.push_back(std::move(row));
            }
        }
    return rows;
}

void write_csv(std::ostream &os, const std::vector<ResultRow> &rows)
{
    os << "curve_label,swept_value,se_bound_total,se_mc_total,se_mc_stderr,seed,runtime_ms\n";
    for (const ResultRow &r : rows)
        os << r.curve_label << ',' << format_value(r.swept_value) << ',' << format_value(r.se_bound_total) << ','
           << format_value(r.se_mc_total) << ',' << format_value(r.se_mc_stderr) << ',' << r.seed << ','
           << format_value(r.runtime_ms) << '\n';
}

namespace
{

std::string plot_script(const std::string &csv_path)
{
    std::string name = csv_path;
    const auto slash = name.find_last_of('/');
    if (slash != std::string::npos)
        name = name.substr(slash + 1);
    std::ostringstream s;
    s << "# Plots " << name << ": se_bound_total (lines) and se_mc_total +/- se_mc_stderr (markers)\n"
      << "# against swept_value, one colour per curve_label.\n"
      << "import csv\n"
      << "import math\n"
      << "import os\n"
      << "import sys\n\n"
      << "import matplotlib\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, \"" << name << "\")\n"
      << "curves = {}\n"
      << "with open(path, newline=\"\") as fh:\n"
      << "    for row in csv.DictReader(fh):\n"
      << "        curves.setdefault(row[\"curve_label\"], []).append(row)\n\n"
      << "fig, ax = plt.subplots()\n"
      << "for label, rows in curves.items():\n"
      << "    x = [float(r[\"swept_value\"]) for r in rows]\n"
      << "    bound = [float(r[\"se_bound_total\"]) for r in rows]\n"
      << "    line, = ax.plot(x, bound, \"-\", label=label + \" bound\")\n"
      << "    mc = [float(r[\"se_mc_total\"]) for r in rows]\n"
      << "    err = [float(r[\"se_mc_stderr\"]) for r in rows]\n"
      << "    if not all(math.isnan(v) for v in mc):\n"
      << "        ax.errorbar(x, mc, yerr=err, fmt=\"o\", color=line.get_color(), label=label + \" simulation\")\n"
      << "ax.set_xlabel(\"swept_value\")\n"
      << "ax.set_ylabel(\"sum SE (bits/s/Hz)\")\n"
      << "ax.grid(True)\n"
      << "ax.legend()\n"
      << "fig.savefig(os.path.splitext(path)[0] + \".png\", dpi=150)\n";
    return s.str();
}

} // namespace

void emit_csv(const std::vector<ResultRow> &rows, const std::string &path)
{
    if (rows.empty())
        throw std::invalid_argument("emit_csv: no rows to write");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("emit_csv: cannot write '" + path + "'");
    write_csv(out, rows);
    out.close();
    if (!out)
        throw std::runtime_error("emit_csv: write to '" + path + "' failed");

    std::ofstream script(path + ".plot.py", std::ios::binary | std::ios::trunc);
    if (!script)
        throw std::runtime_error("emit_csv: cannot write '" + path + ".plot.py'");
    script << plot_script(path);
}

std::vector<ResultRow> read_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("read_csv: empty input");
    std::vector<ResultRow> rows;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 7)
            throw std::invalid_argument("read_csv: expected 7 columns in '" + line + "'");
        ResultRow r;
        r.curve_label = cells[0];
        r.swept_value = std::stod(cells[1]);
        r.se_bound_total = std::stod(cells[2]);
        r.se_mc_total = std::stod(cells[3]);
        r.se_mc_stderr = std::stod(cells[4]);
        r.seed = std::stoull(cells[5]);
        r.runtime_ms = std::stod(cells[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> read_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("read_csv: cannot open '" + path + "'");
    return read_csv(in);
}

} // namespace smse

#include "pbg/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "pbg/dynamics.hpp"
#include "pbg/emission.hpp"
#include "pbg/errors.hpp"
#include "pbg/grid.hpp"
#include "pbg/series_io.hpp"
#include "pbg/susceptibility.hpp"

namespace pbg {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d))
        throw ConfigError("invalid value for " + key + ": '" + v + "'");
    return d;
}

int parse_int(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || n < -2147483647L || n > 2147483647L)
        throw ConfigError("invalid value for " + key + ": '" + v + "'");
    return static_cast<int>(n);
}

std::string fmt_g(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* format_name(OutputFormat f)
{
    return f == OutputFormat::Csv ? "csv" : "json";
}

const char* model_name(ReservoirKind k)
{
    switch (k) {
    case ReservoirKind::None:       return "none";
    case ReservoirKind::SingleBand: return "single";
    case ReservoirKind::DoubleBand: return "double";
    }
    return "none";
}

void apply_key(ScenarioConfig& c, std::set<std::string>& seen, const std::string& key,
               const std::string& value)
{
    if (key == "task") {
        if (value == "emission") c.task = TaskKind::Emission;
        else if (value == "susceptibility") c.task = TaskKind::Susceptibility;
        else if (value == "dynamics") c.task = TaskKind::Dynamics;
        else if (value == "crosscheck") c.task = TaskKind::Crosscheck;
        else throw ConfigError("invalid value for task: '" + value +
                               "' (emission|susceptibility|dynamics|crosscheck)");
    } else if (key == "model") {
        if (value == "none") c.model = ReservoirKind::None;
        else if (value == "single") c.model = ReservoirKind::SingleBand;
        else if (value == "double") c.model = ReservoirKind::DoubleBand;
        else throw ConfigError("invalid value for model: '" + value + "' (none|single|double)");
    } else if (key == "beta") {
        c.beta = parse_double(key, value);
    } else if (key == "gamma") {
        c.gamma = parse_double(key, value);
    } else if (key == "chi0") {
        c.chi0 = parse_double(key, value);
    } else if (key == "omega") {
        c.omega = parse_double(key, value);
    } else if (key == "delta") {
        c.delta = parse_double(key, value);
    } else if (key == "dg") {
        c.dg = parse_double(key, value);
    } else if (key == "dg1") {
        c.dg1 = parse_double(key, value);
    } else if (key == "dg2") {
        c.dg2 = parse_double(key, value);
    } else if (key == "grid") {
        const auto p1 = value.find(':');
        const auto p2 = (p1 == std::string::npos) ? p1 : value.find(':', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw ConfigError("invalid value for grid: '" + value + "' (expected MIN:MAX:N)");
        c.grid_min = parse_double("grid min", trim(value.substr(0, p1)));
        c.grid_max = parse_double("grid max", trim(value.substr(p1 + 1, p2 - p1 - 1)));
        c.grid_points = parse_int("grid points", trim(value.substr(p2 + 1)));
    } else if (key == "tmax") {
        c.t_max = parse_double(key, value);
    } else if (key == "steps") {
        c.steps = parse_int(key, value);
    } else if (key == "format") {
        if (value == "csv") c.format = OutputFormat::Csv;
        else if (value == "json") c.format = OutputFormat::Json;
        else throw ConfigError("invalid value for format: '" + value + "' (csv|json)");
    } else if (key == "out") {
        c.out = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
    seen.insert(key);
}

void validate(ScenarioConfig& c, const std::set<std::string>& seen)
{
    if (!seen.count("task"))
        throw ConfigError("task required");
    if (!seen.count("model"))
        throw ConfigError("model required");

    auto forbid = [&](const char* key, const char* why) {
        if (seen.count(key))
            throw ConfigError(std::string(key) + " is only valid for " + why);
    };
    auto require = [&](const char* key, const char* why) {
        if (!seen.count(key))
            throw ConfigError(std::string(key) + " required for " + why);
    };
    switch (c.model) {
    case ReservoirKind::None:
        forbid("dg", "model=single");
        forbid("dg1", "model=double");
        forbid("dg2", "model=double");
        break;
    case ReservoirKind::SingleBand:
        require("dg", "model=single");
        forbid("dg1", "model=double");
        forbid("dg2", "model=double");
        break;
    case ReservoirKind::DoubleBand:
        require("dg1", "model=double");
        require("dg2", "model=double");
        forbid("dg", "model=single");
        if (!(c.dg1 < c.dg2))
            throw ConfigError("gap width must be positive (dg1 < dg2)");
        break;
    }

    if (!(c.beta >= 0.0))
        throw ConfigError("beta must be non-negative");
    const bool b2_with_reservoir =
        c.task == TaskKind::Dynamics && c.omega == 0.0 && c.model != ReservoirKind::None && c.beta > 0.0;
    if (!(c.gamma > 0.0) && !(b2_with_reservoir && c.gamma == 0.0))
        throw ConfigError("gamma must be positive");
    if (!(c.chi0 > 0.0))
        throw ConfigError("chi0 must be positive");
    if (c.omega < 0.0)
        throw ConfigError("omega must be non-negative");
    if (c.grid_points < 2)
        throw ConfigError("grid must have at least 2 points");
    if (!(c.grid_min < c.grid_max))
        throw ConfigError("grid range must satisfy min < max");
    if (!seen.count("tmax"))
        c.t_max = (c.gamma > 0.0) ? 40.0 / c.gamma : 40.0;
    if (!(c.t_max > 0.0))
        throw ConfigError("tmax must be positive");
    if (c.steps < 2)
        throw ConfigError("steps must be at least 2");
}

ordered_json config_json(const ScenarioConfig& c)
{
    ordered_json j;
    j["task"] = task_name(c.task);
    j["model"] = model_name(c.model);
    if (c.model == ReservoirKind::SingleBand)
        j["dg"] = c.dg;
    if (c.model == ReservoirKind::DoubleBand) {
        j["dg1"] = c.dg1;
        j["dg2"] = c.dg2;
    }
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    j["chi0"] = c.chi0;
    j["omega"] = c.omega;
    j["delta"] = c.delta;
    j["grid"] = fmt_g(c.grid_min) + ":" + fmt_g(c.grid_max) + ":" + std::to_string(c.grid_points);
    j["tmax"] = c.t_max;
    j["steps"] = c.steps;
    j["format"] = format_name(c.format);
    if (!c.out.empty())
        j["out"] = c.out;
    return j;
}

ordered_json rows_json(const std::vector<const Eigen::ArrayXd*>& cols)
{
    ordered_json rows = ordered_json::array();
    const Eigen::Index n = cols[0]->size();
    for (Eigen::Index i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (const auto* c : cols)
            row.push_back((*c)[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

const char* task_name(TaskKind t)
{
    switch (t) {
    case TaskKind::Emission:       return "emission";
    case TaskKind::Susceptibility: return "susceptibility";
    case TaskKind::Dynamics:       return "dynamics";
    case TaskKind::Crosscheck:     return "crosscheck";
    }
    return "emission";
}

ScenarioConfig parse_config(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides)
{
    ScenarioConfig c;
    std::set<std::string> seen;

    int lineno = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = (eol == std::string::npos) ? text.size() : eol + 1;
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": missing key");
        apply_key(c, seen, key, value);
    }
    for (const auto& [key, value] : overrides)
        apply_key(c, seen, key, value);

    validate(c, seen);
    return c;
}

std::string emit_config(const ScenarioConfig& c)
{
    std::string out;
    auto put = [&](const char* key, const std::string& v) {
        out += key;
        out += " = ";
        out += v;
        out += '\n';
    };
    put("task", task_name(c.task));
    put("model", model_name(c.model));
    if (c.model == ReservoirKind::SingleBand)
        put("dg", fmt_g(c.dg));
    if (c.model == ReservoirKind::DoubleBand) {
        put("dg1", fmt_g(c.dg1));
        put("dg2", fmt_g(c.dg2));
    }
    put("beta", fmt_g(c.beta));
    put("gamma", fmt_g(c.gamma));
    put("chi0", fmt_g(c.chi0));
    put("omega", fmt_g(c.omega));
    put("delta", fmt_g(c.delta));
    put("grid", fmt_g(c.grid_min) + ":" + fmt_g(c.grid_max) + ":" + std::to_string(c.grid_points));
    put("tmax", fmt_g(c.t_max));
    put("steps", std::to_string(c.steps));
    put("format", format_name(c.format));
    if (!c.out.empty())
        put("out", c.out);
    return out;
}

ReservoirModel make_reservoir(const ScenarioConfig& c)
{
    switch (c.model) {
    case ReservoirKind::None:       return ReservoirModel::none();
    case ReservoirKind::SingleBand: return ReservoirModel::single_band(c.beta, c.dg);
    case ReservoirKind::DoubleBand: return ReservoirModel::double_band(c.beta, c.dg1, c.dg2);
    }
    return ReservoirModel::none();
}

std::string run_scenario(const ScenarioConfig& c)
{
    const ReservoirModel res = make_reservoir(c);
    const std::string path =
        c.out.empty() ? std::string(task_name(c.task)) + "." + format_name(c.format) : c.out;
    Eigen::ArrayXd grid = uniform_grid(c.grid_min, c.grid_max, c.grid_points);

    std::string text;
    switch (c.task) {
    case TaskKind::Emission: {
        const EmissionParams p{res, c.gamma};
        const EmissionSpectrum s = spectrum_eval(p, std::move(grid));
        if (c.format == OutputFormat::Csv) {
            text = csv_table({"delta", "S"}, {&s.grid, &s.values});
        } else {
            ordered_json j;
            j["task"] = "emission";
            j["config"] = config_json(c);
            j["columns"] = {"delta", "S"};
            j["rows"] = rows_json({&s.grid, &s.values});
            j["dark_lines"] = s.dark_lines;
            ordered_json pk = ordered_json::array();
            for (const auto& p2 : s.peaks)
                pk.push_back({p2.delta, p2.height});
            j["peaks"] = std::move(pk);
            text = j.dump(1) + "\n";
        }
        break;
    }
    case TaskKind::Susceptibility: {
        const ProbeParams p{res, c.gamma, c.chi0};
        const ProbeResponse r = chi_eval(p, std::move(grid));
        const Eigen::ArrayXd re = r.chi.real(), im = r.chi.imag();
        if (c.format == OutputFormat::Csv) {
            text = csv_table({"delta", "re_chi", "im_chi", "absorption", "dispersion", "slope"},
                             {&r.grid, &re, &im, &r.absorption, &r.dispersion, &r.slope});
        } else {
            ordered_json j;
            j["task"] = "susceptibility";
            j["config"] = config_json(c);
            j["columns"] = {"delta", "re_chi", "im_chi", "absorption", "dispersion", "slope"};
            j["rows"] = rows_json({&r.grid, &re, &im, &r.absorption, &r.dispersion, &r.slope});
            j["transparency_points"] = r.transparency_points;
            ordered_json gs = ordered_json::array();
            for (const auto& [pt, sl] : group_slope_report(r))
                gs.push_back({pt, sl});
            j["group_slopes"] = std::move(gs);
            text = j.dump(1) + "\n";
        }
        break;
    }
    case TaskKind::Dynamics: {
        const SolverGrid sg{c.t_max, c.steps};
        AmplitudeTrajectory traj;
        if (c.omega > 0.0)
            traj = solve_c2(ProbeParams{res, c.gamma, c.chi0}, c.omega, c.delta, sg);
        else
            traj = solve_b2(EmissionParams{res, c.gamma}, sg);
        const Eigen::ArrayXd re = traj.values.real(), im = traj.values.imag(),
                             mag = traj.values.abs();
        if (c.format == OutputFormat::Csv) {
            std::vector<std::string> comments = {traj.params_echo};
            if (!traj.note.empty())
                comments.push_back("note = " + traj.note);
            text = csv_table({"t", "re", "im", "abs"}, {&traj.times, &re, &im, &mag}, comments);
        } else {
            ordered_json j;
            j["task"] = "dynamics";
            j["config"] = config_json(c);
            j["kind"] = traj.kind == TrajectoryKind::B2Emission ? "b2_emission" : "c2_probe";
            j["columns"] = {"t", "re", "im", "abs"};
            j["rows"] = rows_json({&traj.times, &re, &im, &mag});
            j["params_echo"] = traj.params_echo;
            j["note"] = traj.note;
            text = j.dump(1) + "\n";
        }
        break;
    }
    case TaskKind::Crosscheck: {
        const EmissionParams p{res, c.gamma};
        const AmplitudeTrajectory traj = solve_b2(p, SolverGrid{c.t_max, c.steps});
        const EmissionSpectrum sf = spectrum_eval(p, std::move(grid));
        const EmissionSpectrum st = spectrum_from_trajectory(traj, p, sf.grid);
        const double dev =
            (st.values - sf.values).abs().maxCoeff() / sf.values.maxCoeff();
        if (c.format == OutputFormat::Csv) {
            text = csv_table({"delta", "S_freq", "S_time"}, {&sf.grid, &sf.values, &st.values},
                             {"max_rel_dev = " + format_double(dev)});
        } else {
            ordered_json j;
            j["task"] = "crosscheck";
            j["config"] = config_json(c);
            j["columns"] = {"delta", "S_freq", "S_time"};
            j["rows"] = rows_json({&sf.grid, &sf.values, &st.values});
            j["max_rel_dev"] = dev;
            text = j.dump(1) + "\n";
        }
        break;
    }
    }
    write_text_atomic(path, text);
    return path;
}

const std::vector<FigurePreset>& figure_presets()
{
    static const std::vector<FigurePreset> presets = [] {
        std::vector<FigurePreset> v;
        auto base = [](TaskKind task) {
            ScenarioConfig c;
            c.task = task;
            return c;
        };
        auto dbl = [&](const char* name, TaskKind task, double dg1, double dg2, const char* what) {
            ScenarioConfig c = base(task);
            c.model = ReservoirKind::DoubleBand;
            c.dg1 = dg1;
            c.dg2 = dg2;
            char desc[96];
            std::snprintf(desc, sizeof desc, "%s, double band, edges %g and %g", what, dg1, dg2);
            v.push_back({name, desc, c});
        };
        auto sgl = [&](const char* name, TaskKind task, double dg, const char* what) {
            ScenarioConfig c = base(task);
            c.model = ReservoirKind::SingleBand;
            c.dg = dg;
            char desc[96];
            std::snprintf(desc, sizeof desc, "%s, single band, edge %g", what, dg);
            v.push_back({name, desc, c});
        };
        dbl("fig2a_1", TaskKind::Emission, -1.0, 0.0, "emission spectrum");
        dbl("fig2a_2", TaskKind::Emission, -2.0, 0.0, "emission spectrum");
        dbl("fig2a_3", TaskKind::Emission, -3.0, 0.0, "emission spectrum");
        dbl("fig2b_1", TaskKind::Emission, -1.0, 1.0, "emission spectrum");
        dbl("fig2b_2", TaskKind::Emission, -2.0, 2.0, "emission spectrum");
        dbl("fig2b_3", TaskKind::Emission, -3.0, 3.0, "emission spectrum");
        sgl("fig3_1", TaskKind::Emission, 0.0, "emission spectrum");
        sgl("fig3_2", TaskKind::Emission, 1.0, "emission spectrum");
        sgl("fig3_3", TaskKind::Emission, -1.0, "emission spectrum");
        dbl("fig4a", TaskKind::Susceptibility, -1.0, 0.0, "probe absorption/dispersion");
        dbl("fig4b", TaskKind::Susceptibility, -2.0, 0.0, "probe absorption/dispersion");
        dbl("fig4c", TaskKind::Susceptibility, -3.0, 0.0, "probe absorption/dispersion");
        sgl("fig5", TaskKind::Susceptibility, 0.0, "probe absorption/dispersion");
        dbl("fig6a", TaskKind::Susceptibility, -1.0, 1.0, "probe absorption/dispersion");
        dbl("fig6b", TaskKind::Susceptibility, -2.0, 2.0, "probe absorption/dispersion");
        dbl("fig6c", TaskKind::Susceptibility, -3.0, 3.0, "probe absorption/dispersion");
        return v;
    }();
    return presets;
}

std::vector<std::string> reproduce_figure(const std::string& name, const std::string& out_dir,
                                          int max_threads)
{
    const auto& all = figure_presets();
    std::vector<const FigurePreset*> sel;
    for (const auto& p : all)
        if (name == "all" || p.name == name || p.name.rfind(name, 0) == 0)
            sel.push_back(&p);
    if (sel.empty()) {
        std::string names = "all";
        for (const auto& p : all)
            names += ", " + p.name;
        throw ConfigError("unknown preset '" + name + "'; valid names: " + names);
    }

    int threads = max_threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("SPECTRA_THREADS"))
            threads = std::atoi(env);
        if (threads <= 0)
            threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    threads = std::max(1, std::min<int>(threads, static_cast<int>(sel.size())));

    std::vector<std::string> paths(sel.size());
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;

    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < sel.size();) {
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (err)
                    return;
            }
            try {
                ScenarioConfig cfg = sel[i]->config;
                cfg.out = (std::filesystem::path(out_dir.empty() ? "." : out_dir) /
                           (sel[i]->name + ".csv"))
                              .string();
                paths[i] = run_scenario(cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err)
                    err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
    return paths;
}

} // namespace pbg

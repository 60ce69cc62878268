#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbg/reservoir.hpp"

namespace pbg {

enum class TaskKind { Emission, Susceptibility, Dynamics, Crosscheck };
enum class OutputFormat { Csv, Json };

struct ScenarioConfig {
    TaskKind task = TaskKind::Emission;
    ReservoirKind model = ReservoirKind::None;
    double beta = 1.0;
    double gamma = 1.0;
    double chi0 = 1.0;
    double omega = 0.0; // probe Rabi frequency; dynamics solves c2 when > 0, b2 otherwise
    double delta = 0.0; // probe detuning (c2 dynamics only)
    double dg = 0.0;    // band edge (model=single)
    double dg1 = 0.0;   // lower band edge (model=double)
    double dg2 = 0.0;   // upper band edge (model=double)
    double grid_min = -5.0;
    double grid_max = 5.0;
    int grid_points = 2001;
    double t_max = 40.0;
    int steps = 20000;
    OutputFormat format = OutputFormat::Csv;
    std::string out; // output path; "<task>.<format>" when empty

    bool operator==(const ScenarioConfig&) const = default;
};

const char* task_name(TaskKind t);

// Parses line-oriented `key = value` text (# comments, blank lines ok),
// then applies overrides (e.g. CLI flags) in order, then validates.
// Defaults echoed into the result: beta=gamma=chi0=1, grid -5:5:2001,
// tmax=40/gamma, steps=20000, format=csv. Throws ConfigError naming the
// offending key and constraint.
ScenarioConfig parse_config(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Inverse of parse_config: parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& c);

ReservoirModel make_reservoir(const ScenarioConfig& c);

// Executes the configured task and writes its series (CSV or JSON,
// atomically); returns the path written. Output is byte-identical across
// runs with an identical config.
std::string run_scenario(const ScenarioConfig& c);

struct FigurePreset {
    std::string name;
    std::string description;
    ScenarioConfig config;
};

const std::vector<FigurePreset>& figure_presets();

// Runs every preset matching `name` ("all", an exact name like "fig4a", or
// a group prefix like "fig2b") and writes <out_dir>/<preset>.csv per curve.
// Curves run in parallel; max_threads <= 0 means use SPECTRA_THREADS or the
// hardware concurrency. Returns the paths written.
std::vector<std::string> reproduce_figure(const std::string& name, const std::string& out_dir,
                                          int max_threads = 0);

} // namespace pbg

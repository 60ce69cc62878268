#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbg/errors.hpp"
#include "pbg/scenario.hpp"

namespace {

struct Flags {
    std::string config;
    std::map<std::string, std::string> values;      // key -> raw flag value
    std::map<std::string, CLI::Option*> opts;       // key -> option (for count())
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "config file with `key = value` lines");
    auto opt = [&](const char* key, const char* help) {
        f.opts[key] = cmd->add_option(std::string("--") + key, f.values[key], help);
    };
    opt("model", "reservoir model: none|single|double");
    opt("beta", "coupling scale (default 1; all rates in units of beta)");
    opt("gamma", "Markovian decay rate (default 1)");
    opt("dg1", "lower band edge (model=double)");
    opt("dg2", "upper band edge (model=double)");
    opt("dg", "band edge (model=single)");
    opt("chi0", "susceptibility prefactor (default 1)");
    opt("omega", "probe Rabi frequency (default 0; dynamics solves c2 when > 0)");
    opt("delta", "probe detuning for c2 dynamics (default 0)");
    opt("grid", "detuning grid MIN:MAX:N (default -5:5:2001)");
    opt("tmax", "solver time horizon (default 40/gamma)");
    opt("steps", "solver steps (default 20000)");
    opt("format", "output format: csv|json (default csv)");
    opt("out", "output path (default <task>.<format>)");
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw pbg::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void error_record(const char* type, const std::string& msg)
{
    nlohmann::ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = msg;
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spectra: emission spectrum, probe susceptibility and amplitude dynamics of a\n"
                 "three-level atom with one transition coupled to a photonic-band-gap reservoir"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> tasks = {
        {"emission", "spontaneous-emission spectrum S(delta)"},
        {"susceptibility", "probe susceptibility chi(delta): absorption, dispersion, slope"},
        {"dynamics", "time-domain amplitude: b2(t) when omega=0, c2(t) when omega>0"},
        {"crosscheck", "frequency-domain vs time-domain emission spectrum deviation"},
    };
    std::map<std::string, Flags> flags;
    for (const auto& [name, desc] : tasks)
        add_common(app.add_subcommand(name, desc), flags[name]);

    std::string preset_name, out_dir = ".";
    CLI::App* rep = app.add_subcommand(
        "reproduce", "run bundled parameter presets (fig2a_1..fig6c, a group like fig2b, or all)");
    rep->add_option("name", preset_name, "preset or group name")->required();
    rep->add_option("--out-dir", out_dir, "directory for the series files (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        if (rc == 0)
            return 0;
        error_record("config", e.what());
        return 2;
    }

    try {
        if (rep->parsed()) {
            for (const auto& path : pbg::reproduce_figure(preset_name, out_dir))
                std::cout << path << "\n";
            return 0;
        }
        for (const auto& [name, desc] : tasks) {
            (void)desc;
            if (!app.got_subcommand(name))
                continue;
            Flags& f = flags[name];
            std::string text;
            if (!f.config.empty())
                text = read_file(f.config);
            std::vector<std::pair<std::string, std::string>> overrides;
            overrides.emplace_back("task", name);
            for (const auto& [key, opt] : f.opts)
                if (opt->count() > 0)
                    overrides.emplace_back(key, f.values[key]);
            const pbg::ScenarioConfig cfg = pbg::parse_config(text, overrides);
            std::cout << pbg::run_scenario(cfg) << "\n";
            return 0;
        }
        throw pbg::ConfigError("no task selected");
    } catch (const pbg::ConfigError& e) {
        error_record("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        error_record("contract", e.what());
        return 3;
    }
}

// poa_arena command-line front end.
//
//   poa_arena run --config poa.json [--seed N] [--format json|csv] [--out FILE] [--event-log FILE]
//   poa_arena compare --config a.json --config b.json [--repetitions R] ...
//   poa_arena attack <preset> [--seed N] ...
//   poa_arena validate --config poa.json
//   poa_arena presets
//
// Exit status: 0 success, 1 invalid configuration or invocation, 2 internal error.
// Nothing is written to the report or event-log destinations unless the
// command succeeds.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poa_arena/catalog.hpp"
#include "poa_arena/config_io.hpp"
#include "poa_arena/report.hpp"
#include "poa_arena/scenario.hpp"

namespace {

using namespace poa_arena;

struct Options {
    std::vector<std::string> configs;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string out;
    std::string event_log;
    std::uint32_t repetitions = 1;
    std::string preset;
};

struct Output {
    std::string report;
    std::string event_log;
};

void add_common(CLI::App* cmd, Options& o, bool with_log) {
    cmd->add_option("--seed", o.seed, "override the config seed");
    cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "write the report here instead of standard output");
    if (with_log) cmd->add_option("--event-log", o.event_log, "write the per-event log to this file");
}

Output single_run(ScenarioConfig config, const Options& o) {
    if (o.seed) config.seed = *o.seed;
    std::ostringstream log;
    const RunOutput r = run_scenario_full(config, o.event_log.empty() ? nullptr : &log);
    Output out;
    out.report = o.format == "csv" ? csv_header() + csv_row(r.metrics) : report_json(r.metrics);
    out.event_log = log.str();
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic consensus simulator"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "run one scenario");
    run->add_option("--config", o.configs, "scenario file")->required()->expected(1);
    add_common(run, o, true);

    auto* cmp = app.add_subcommand("compare", "run several scenarios with repetitions");
    cmp->add_option("--config", o.configs, "scenario files (two or more)")->required()->expected(2, -1);
    cmp->add_option("--repetitions", o.repetitions, "runs per config")->check(CLI::PositiveNumber);
    add_common(cmp, o, false);

    auto* attack = app.add_subcommand("attack", "run a named attack preset");
    attack->add_option("preset", o.preset, "preset name")->required();
    add_common(attack, o, true);

    auto* validate = app.add_subcommand("validate", "check a scenario file without running it");
    validate->add_option("--config", o.configs, "scenario file")->required()->expected(1);

    auto* presets = app.add_subcommand("presets", "list attack presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Output out;
        if (*run) {
            out = single_run(load_config(o.configs.front()), o);
        } else if (*cmp) {
            if (o.configs.size() < 2) throw ConfigError("--config: compare needs at least two configs");
            std::vector<ScenarioConfig> configs;
            for (const auto& p : o.configs) {
                configs.push_back(load_config(p));
                if (o.seed) configs.back().seed = *o.seed;
            }
            const auto rows = compare(configs, o.repetitions);
            out.report = o.format == "csv" ? comparison_csv(rows) : comparison_json(rows);
        } else if (*attack) {
            auto preset = find_preset(o.preset);
            if (!preset) throw ConfigError("preset: unknown attack preset '" + o.preset + "'");
            out = single_run(preset->config, o);
        } else if (*validate) {
            (void)load_config(o.configs.front());
            out.report = "valid: " + o.configs.front() + "\n";
        } else if (*presets) {
            for (const auto& p : attack_catalog()) out.report += p.name + "\n";
        }

        if (!o.event_log.empty()) write_file(o.event_log, out.event_log);
        if (o.out.empty()) {
            std::cout << out.report << std::flush;
        } else {
            write_file(o.out, out.report);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    } catch (...) {
        std::cerr << "internal error\n";
        return 2;
    }
}

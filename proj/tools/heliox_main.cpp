// heliox: electron-bubble simulation toolkit command line.
//
//   heliox <scenario> [--config FILE] [--key value ...] [--out DIR] [--workers N]
//
// Exit codes: 0 success, 2 validation error, 3 solver non-convergence,
// 4 integrator guard abort.

#include "heliox/errors.hpp"
#include "heliox/io/config.hpp"
#include "heliox/io/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

std::string kebab(const std::string& key) {
    std::string out = key;
    for (char& c : out)
        if (c == '_') c = '-';
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"electron bubbles in condensed helium-4: density-functional "
                 "structure and open-system quantum dynamics"};
    app.require_subcommand(1);

    struct ScenarioCli {
        CLI::App* cmd = nullptr;
        std::string config_path, out_dir, defaults_path;
        int workers = 0;
        std::map<std::string, std::string> values; // raw override text per key
    };
    std::map<std::string, ScenarioCli> clis;

    for (const std::string& name : heliox::io::scenario_names()) {
        ScenarioCli& sc = clis[name];
        sc.cmd = app.add_subcommand(name, name + " scenario");
        sc.cmd->add_option("--config", sc.config_path, "JSON config file");
        sc.cmd->add_option("--out", sc.out_dir, "output directory");
        sc.cmd->add_option("--workers", sc.workers, "parallel sweep workers");
        sc.cmd->add_option("--defaults", sc.defaults_path,
                           "calibrated-coefficients file (overrides HELIOX_DEFAULTS)");
        for (const auto& [key, spec] : heliox::io::schema_for(name)) {
            std::string names = "--" + kebab(key);
            // short forms the docs use for the pulse options
            if (key == "pulse_W_fs") names += ",--W-fs";
            if (key == "pulse_E_VperNm") names += ",--E-VperNm";
            sc.cmd->add_option(names, sc.values[key], spec.help);
        }
    }

    CLI11_PARSE(app, argc, argv);

    const std::string scenario = app.get_subcommands().front()->get_name();
    const ScenarioCli& sc = clis.at(scenario);

    std::string out_dir = sc.out_dir.empty() ? "heliox_out/" + scenario : sc.out_dir;

    heliox::io::json resolved;
    try {
        heliox::io::json file_cfg;
        if (!sc.config_path.empty())
            file_cfg = heliox::io::load_config_file(sc.config_path);
        std::vector<std::pair<std::string, std::string>> overrides;
        for (const auto& [key, text] : sc.values)
            if (sc.cmd->count("--" + kebab(key)) > 0) overrides.emplace_back(key, text);
        resolved = heliox::io::resolve_config(scenario, file_cfg, overrides);
    } catch (const heliox::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    }

    try {
        heliox::io::json summary = heliox::io::run_scenario(scenario, resolved, out_dir,
                                                            sc.workers, sc.defaults_path);
        std::cout << "ok: " << scenario << " -> " << out_dir << " ("
                  << summary["wall_time_s"].dump() << " s)\n";
        for (const auto& [key, value] : summary["results"].items())
            if (value.is_number()) std::cout << "  " << key << " = " << value.dump() << '\n';
        return 0;
    } catch (const std::exception& e) {
        int code = 1;
        std::string kind = "error";
        if (dynamic_cast<const heliox::ValidationError*>(&e)) {
            code = 2;
            kind = "validation error";
        } else if (dynamic_cast<const heliox::SolverError*>(&e)) {
            code = 3;
            kind = "solver error";
        } else if (dynamic_cast<const heliox::GuardError*>(&e)) {
            code = 4;
            kind = "integrator guard";
        }
        std::cerr << kind << ": " << e.what() << '\n';
        if (code == 3 || code == 4) {
            // machine-readable reason lands in the summary for triage
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (!ec) {
                heliox::io::json summary;
                summary["schema_version"] = 1;
                summary["scenario"] = scenario;
                summary["status"] = "error";
                summary["reason"] = e.what();
                summary["config"] = resolved;
                std::ofstream out(out_dir + "/summary.json");
                if (out) out << summary.dump(2) << '\n';
            }
        }
        return code;
    }
}

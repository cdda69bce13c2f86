// SPDX-License-Identifier: Apache-2.0
//
// irsnet - simulation and optimization library for multi-IRS aided wireless networks
// Copyright (C) 2026 The irsnet authors
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

#include "irsnet/experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace irsnet;
using nlohmann::json;

namespace
{

json read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

bool is_scene(const json &j) { return j.is_object() && j.contains("bs"); }

std::string parent_dir(const std::string &path)
{
    std::filesystem::path p(path);
    return p.has_parent_path() ? p.parent_path().string() : ".";
}

Scene scene_from_file(const std::string &path)
{
    json j = read_file(path);
    if (is_scene(j))
        return build_scene(j);
    ExperimentConfig cfg = config_from_json(j, parent_dir(path));
    return build_scene(cfg.scene ? *cfg.scene : builtin_scene(cfg.scenario));
}

void write_text(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << text;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"irsnet: multi-IRS network simulator"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_path, routes_path;
    std::uint64_t seed = 0;
    int trials = 0;
    int threads = 0;
    bool full_scale = false;

    auto *run = app.add_subcommand("run", "run a scenario and write its CSV results");
    run->add_option("--scenario", scenario, "fig6 | fig7 | fig8 | fig9 | fig11 | fig13 | custom");
    run->add_option("--config", config_path, "experiment config (JSON)");
    auto *seed_opt = run->add_option("--seed", seed, "RNG seed");
    auto *trials_opt = run->add_option("--trials", trials, "Monte-Carlo trials");
    run->add_option("--out", out_path, "CSV output file (default: stdout)");
    auto *threads_opt = run->add_option("--threads", threads, "worker threads (capped by IRS_SIM_THREADS)");
    run->add_option("--routes", routes_path, "route dump output for fig9/fig11");
    run->add_flag("--full-scale", full_scale, "full-scale parameters");

    auto *validate = app.add_subcommand("validate", "check a scene or experiment config");
    validate->add_option("--config", config_path, "scene or experiment config (JSON)")->required();

    auto *routes = app.add_subcommand("routes", "print optimal routes of a scene as JSON");
    routes->add_option("--config", config_path, "scene or experiment config (JSON)")->required();
    routes->add_option("--out", out_path, "output file (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (run->parsed())
        {
            ExperimentConfig cfg;
            if (!config_path.empty())
                cfg = load_config(config_path);
            if (!scenario.empty())
                cfg.scenario = scenario;
            else if (config_path.empty())
                throw ConfigError("run needs --scenario or --config");
            const auto &names = scenario_names();
            if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
            {
                std::cerr << "unknown scenario \"" << cfg.scenario << "\"\n" << run->help();
                return 2;
            }
            if (*seed_opt)
                cfg.seed = seed;
            if (*trials_opt)
                cfg.trials = trials;
            if (*threads_opt)
                cfg.threads = threads;
            if (full_scale)
                cfg.full_scale = true;
            if (!out_path.empty())
                cfg.output = out_path;
            validate_config(cfg);

            ResultTable table;
            if (cfg.scenario == "fig9" || cfg.scenario == "fig11")
            {
                RouteReport rep = run_fig9_11(cfg);
                table = std::move(rep.table);
                if (!routes_path.empty())
                    write_text(routes_path, rep.routes.dump(2) + "\n");
            }
            else
                table = run_experiment(cfg);
            write_text(cfg.output, table.to_csv());
        }
        else if (validate->parsed())
        {
            json j = read_file(config_path);
            if (is_scene(j))
            {
                Scene s = build_scene(j);
                std::cout << "scene ok: " << s.num_irs() << " IRSs, " << s.num_users() << " users\n";
            }
            else
            {
                ExperimentConfig cfg = config_from_json(j, parent_dir(config_path));
                std::cout << "config ok: scenario " << cfg.scenario << ", " << cfg.trials << " trials\n";
            }
        }
        else if (routes->parsed())
        {
            write_text(out_path, route_dump(scene_from_file(config_path)).dump(2) + "\n");
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const NoFeasiblePath &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    }
    catch (const Infeasible &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    }
    catch (const NotTrainable &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

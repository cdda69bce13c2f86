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

#ifndef IRSNET_EXPERIMENTS_HPP
#define IRSNET_EXPERIMENTS_HPP

#include "irsnet/estimation.hpp"
#include "irsnet/training.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace irsnet
{

struct Sweep
{
    std::string name;
    std::vector<double> values;
};

struct ExperimentConfig
{
    std::string scenario = "fig6";           // fig6 | fig7 | fig8 | fig9 | fig11 | fig13 | custom
    std::optional<nlohmann::json> scene;     // inline scene; default is the scenario's built-in scene
    Sweep sweep;                             // empty: scenario default
    int trials = 100;
    std::uint64_t seed = 1;
    std::string output;
    int threads = 0;                         // 0: hardware concurrency
    bool full_scale = false;
    nlohmann::json params = nlohmann::json::object();
};

struct ResultRow
{
    std::string scenario;
    std::string sweep_name;
    double sweep_value = 0.0;
    std::string metric;
    double mean = 0.0;
    double stderr_ = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct ResultTable
{
    std::vector<ResultRow> rows;

    void add(const ResultRow &r) { rows.push_back(r); }
    void append(const ResultTable &t);
    // Sorted by (scenario, sweep name, sweep value, metric).
    void sort();
    const ResultRow *find(const std::string &metric, double sweep_value) const;
    double value(const std::string &metric, double sweep_value) const; // throws if absent
    std::string to_csv() const;
};

inline constexpr const char *csv_header = "scenario,sweep_name,sweep_value,metric,mean,stderr,trials,seed";

// Scenario names accepted by run_experiment.
const std::vector<std::string> &scenario_names();

// Built-in scenes, also shipped as scenes/<name>.json: "fig4" (double-IRS layout), "fig7", "fig9".
nlohmann::json builtin_scene(const std::string &name);

// Parse a config file body. `scene` may be an inline object or a path (relative to base_dir).
ExperimentConfig config_from_json(const nlohmann::json &j, const std::string &base_dir = ".");
ExperimentConfig load_config(const std::string &path);
void validate_config(const ExperimentConfig &cfg); // ConfigError

// Worker count: requested (or hardware concurrency when 0), capped by IRS_SIM_THREADS.
int worker_count(int requested);

// Runs fn(0..n-1) on up to `threads` workers; results are stored by index.
void parallel_for(int n, int threads, const std::function<void(int)> &fn);

// Mean and standard error, accumulated in index order.
struct Summary
{
    double mean = 0.0;
    double stderr_ = 0.0;
};
Summary summarize(const std::vector<double> &x);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

double rate_bps(double snr);

ResultTable run_fig6(const ExperimentConfig &cfg);
ResultTable run_fig7(const ExperimentConfig &cfg);
ResultTable run_fig8(const ExperimentConfig &cfg);

struct RouteReport
{
    ResultTable table;
    nlohmann::json routes;
};

// fig9: user 1 alone over an M0 sweep. fig11: users 1-2 with and without separation, interference audit.
RouteReport run_fig9_11(const ExperimentConfig &cfg);

ResultTable run_fig13(const ExperimentConfig &cfg);

// Single-user (P1) routing and closed-form beams on an arbitrary scene, swept over transmit power.
ResultTable run_custom(const ExperimentConfig &cfg);

ResultTable run_experiment(const ExperimentConfig &cfg);

// Route dump of a scene: per-user (P1) routes, plus joint routes with and without separation when K > 1.
nlohmann::json route_dump(const Scene &scene);

} // namespace irsnet

#endif

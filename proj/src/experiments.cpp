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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace irsnet
{

using nlohmann::json;

namespace
{

// Keep in sync with scenes/*.json (checked by the unit tests).
const char *const fig4_scene = R"json({"name":"fig4","bs":{"position":[0,0,0],"antennas":1,"normal":[1,0,0]},"irs":[{"position":[1,3,0],"pointing_normal":[0,-1,0],"cols":20,"rows":10},{"position":[50,-1,0],"pointing_normal":[0,1,0],"cols":20,"rows":10}],"users":[[48,2,0]],"constants":{"beta_dB":-30,"alpha":2,"kappa_dB":"inf","carrier_freq_Hz":5000000000.0,"noise_power_dBm":-90,"tx_power_dBm":0,"direct_links":false}})json";
const char *const fig7_scene = R"json({"name":"fig7","bs":{"position":[0,0,0],"antennas":40,"normal":[1,0,0]},"irs":[{"position":[1,3,0],"pointing_normal":[0,-1,0],"m0":20},{"position":[50,-1,0],"pointing_normal":[0,1,0],"m0":20}],"users":[[44,1,0],[46,2.5,0],[48,1.5,0],[50,2.5,0],[52,1,0]],"obstacles":[{"min":[24,-1.5,-1],"max":[26,0.2,1]}],"constants":{"beta_dB":-30,"alpha":2,"kappa_dB":"inf","carrier_freq_Hz":5000000000.0,"noise_power_dBm":-90,"tx_power_dBm":0,"direct_links":false}})json";
const char *const fig9_scene = R"json({"name":"fig9","bs":{"position":[0,15,0],"antennas":32,"normal":[1,0,0]},"irs":[{"position":[22.5,22.5,0],"pointing_normal":[0.5,-0.866,0],"m0":24},{"position":[10,10.5,0],"pointing_normal":[0.0872,0.9962,0],"m0":24},{"position":[36,3,0],"pointing_normal":[0.5736,0.8192,0],"m0":24},{"position":[11.5,26,0],"pointing_normal":[1,0,0],"m0":24},{"position":[27.5,3.5,0],"pointing_normal":[-0.5,0.866,0],"m0":24},{"position":[4,26.5,0],"pointing_normal":[0.0872,-0.9962,0],"m0":24},{"position":[29,10,0],"pointing_normal":[-0.766,0.6428,0],"m0":24},{"position":[12,27.5,0],"pointing_normal":[-0.2588,-0.9659,0],"m0":24}],"users":[[38,4,0],[37,26,0]],"obstacles":[{"min":[12,0,-1.5],"max":[14,18,1.5]},{"min":[26,12,-1.5],"max":[28,30,1.5]}],"constants":{"beta_dB":-30,"alpha":2,"kappa_dB":20,"carrier_freq_Hz":5000000000.0,"noise_power_dBm":-90,"tx_power_dBm":0,"direct_links":false}})json";

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

double sweep_number(const json &v, const std::string &what)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
    {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf")
            return infinity;
        if (s == "-inf")
            return -infinity;
    }
    throw ConfigError(what + ": expected a number or \"inf\"");
}

Sweep sweep_or(const ExperimentConfig &cfg, Sweep def)
{
    if (!cfg.sweep.name.empty() && cfg.sweep.name != def.name)
        throw ConfigError("scenario " + cfg.scenario + " sweeps \"" + def.name + "\", not \"" + cfg.sweep.name + "\"");
    if (!cfg.sweep.values.empty())
        def.values = cfg.sweep.values;
    return def;
}

double param_number(const ExperimentConfig &cfg, const char *key, double def)
{
    if (!cfg.params.contains(key))
        return def;
    const json &v = cfg.params.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("params.") + key + " must be a number");
    return v.get<double>();
}

int param_int(const ExperimentConfig &cfg, const char *key, int def)
{
    if (!cfg.params.contains(key))
        return def;
    const json &v = cfg.params.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string("params.") + key + " must be an integer");
    return v.get<int>();
}

int param_positive(const ExperimentConfig &cfg, const char *key, int def)
{
    int v = param_int(cfg, key, def);
    if (v < 1)
        throw ConfigError(std::string("params.") + key + " must be at least 1");
    return v;
}

Scene scenario_scene(const ExperimentConfig &cfg, const std::string &builtin)
{
    return build_scene(cfg.scene ? *cfg.scene : builtin_scene(builtin));
}

void resize_irs(Scene &s, int cols, int rows)
{
    for (auto &irs : s.irs)
        irs.array = make_array(cols, rows, irs.array.spacing_wl, irs.normal());
}

Scene remove_irs(const Scene &s, int node)
{
    Scene out = s;
    out.irs.erase(out.irs.begin() + (node - 1));
    for (auto &region : out.effective_regions)
    {
        std::vector<int> kept;
        for (int j : region)
            if (j != node)
                kept.push_back(j > node ? j - 1 : j);
        region = kept;
    }
    return out;
}

std::uint64_t trial_seed(const ExperimentConfig &cfg, std::uint64_t tag, size_t point, int trial)
{
    return substream_seed(cfg.seed, tag, point, static_cast<std::uint64_t>(trial));
}

struct Emitter
{
    const ExperimentConfig &cfg;
    ResultTable &table;
    std::string sweep_name;

    void samples(double x, const std::string &metric, const std::vector<double> &v) const
    {
        Summary s = summarize(v);
        table.add({cfg.scenario, sweep_name, x, metric, s.mean, s.stderr_, static_cast<int>(v.size()), cfg.seed});
    }
    void value(double x, const std::string &metric, double v) const
    {
        table.add({cfg.scenario, sweep_name, x, metric, v, 0.0, 1, cfg.seed});
    }
    void summary(const std::string &metric, double v) const
    {
        table.add({cfg.scenario, "summary", 0.0, metric, v, 0.0, 1, cfg.seed});
    }
};

// Per-trial metric vectors: out[trial][metric].
using TrialMatrix = std::vector<std::vector<double>>;

std::vector<double> column(const TrialMatrix &m, size_t c)
{
    std::vector<double> v;
    v.reserve(m.size());
    for (const auto &row : m)
        v.push_back(row.at(c));
    return v;
}

double db(double x) { return linear_to_db(x); }

std::string user_tag(int k) { return "u" + std::to_string(k); }

} // namespace

// ---- result table --------------------------------------------------------------------------

void ResultTable::append(const ResultTable &t) { rows.insert(rows.end(), t.rows.begin(), t.rows.end()); }

void ResultTable::sort()
{
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
        return std::tie(a.scenario, a.sweep_name, a.sweep_value, a.metric) <
               std::tie(b.scenario, b.sweep_name, b.sweep_value, b.metric);
    });
}

const ResultRow *ResultTable::find(const std::string &metric, double sweep_value) const
{
    for (const auto &r : rows)
        if (r.metric == metric && same_value(r.sweep_value, sweep_value))
            return &r;
    return nullptr;
}

double ResultTable::value(const std::string &metric, double sweep_value) const
{
    const ResultRow *r = find(metric, sweep_value);
    if (!r)
        throw std::out_of_range("result table has no row " + metric + " @ " + format_double(sweep_value));
    return r->mean;
}

std::string ResultTable::to_csv() const
{
    std::ostringstream os;
    os << csv_header << '\n';
    for (const auto &r : rows)
        os << r.scenario << ',' << r.sweep_name << ',' << format_double(r.sweep_value) << ',' << r.metric << ','
           << format_double(r.mean) << ',' << format_double(r.stderr_) << ',' << r.trials << ',' << r.seed << '\n';
    return os.str();
}

// ---- configuration -------------------------------------------------------------------------

const std::vector<std::string> &scenario_names()
{
    static const std::vector<std::string> names{"fig6", "fig7", "fig8", "fig9", "fig11", "fig13", "custom"};
    return names;
}

json builtin_scene(const std::string &name)
{
    if (name == "fig4" || name == "fig6")
        return json::parse(fig4_scene);
    if (name == "fig7")
        return json::parse(fig7_scene);
    if (name == "fig9" || name == "fig11" || name == "fig13")
        return json::parse(fig9_scene);
    throw ConfigError("no built-in scene named \"" + name + "\"");
}

namespace
{

json read_json_file(const std::filesystem::path &p)
{
    std::ifstream in(p);
    if (!in)
        throw ConfigError("cannot open " + p.string());
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(p.string() + ": " + e.what());
    }
}

} // namespace

ExperimentConfig config_from_json(const json &j, const std::string &base_dir)
{
    static const std::vector<std::string> known{"scenario", "scene",  "sweep",      "trials", "seed",
                                                "output",   "threads", "full_scale", "params"};
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    for (const auto &item : j.items())
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw ConfigError("config: unknown key \"" + item.key() + "\"");

    ExperimentConfig c;
    try
    {
        if (j.contains("scenario"))
            c.scenario = j.at("scenario").get<std::string>();
        if (j.contains("scene"))
        {
            const json &s = j.at("scene");
            if (s.is_string())
                c.scene = read_json_file(std::filesystem::path(base_dir) / s.get<std::string>());
            else if (s.is_object())
                c.scene = s;
            else
                throw ConfigError("config.scene: expected an object or a file path");
        }
        if (j.contains("sweep"))
        {
            const json &s = j.at("sweep");
            if (!s.is_object())
                throw ConfigError("config.sweep: expected an object");
            c.sweep.name = s.value("name", std::string());
            if (s.contains("values"))
            {
                if (!s.at("values").is_array())
                    throw ConfigError("config.sweep.values: expected an array");
                for (const auto &v : s.at("values"))
                    c.sweep.values.push_back(sweep_number(v, "config.sweep.values"));
                if (c.sweep.values.empty())
                    throw ConfigError("config.sweep.values: empty sweep");
            }
            else if (s.contains("from") || s.contains("to") || s.contains("step"))
            {
                double from = s.at("from").get<double>();
                double to = s.at("to").get<double>();
                double step = s.at("step").get<double>();
                if (!(step > 0.0) || to < from)
                    throw ConfigError("config.sweep: need from <= to and step > 0");
                const long n = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
                if (n > 100000)
                    throw ConfigError("config.sweep: too many points");
                for (long i = 0; i < n; ++i)
                    c.sweep.values.push_back(from + static_cast<double>(i) * step);
            }
        }
        c.full_scale = j.value("full_scale", false);
        if (j.contains("trials"))
            c.trials = j.at("trials").get<int>();
        else if (c.full_scale)
            c.trials = 1000;
        if (j.contains("seed"))
            c.seed = j.at("seed").get<std::uint64_t>();
        c.output = j.value("output", std::string());
        c.threads = j.value("threads", 0);
        if (j.contains("params"))
        {
            if (!j.at("params").is_object())
                throw ConfigError("config.params: expected an object");
            c.params = j.at("params");
        }
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::string &path)
{
    std::filesystem::path p(path);
    return config_from_json(read_json_file(p), p.has_parent_path() ? p.parent_path().string() : ".");
}

void validate_config(const ExperimentConfig &cfg)
{
    const auto &names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
        throw ConfigError("unknown scenario \"" + cfg.scenario + "\"");
    if (cfg.trials < 1)
        throw ConfigError("trials must be at least 1");
    if (cfg.threads < 0)
        throw ConfigError("threads must be non-negative");
    if (!cfg.sweep.name.empty() && cfg.sweep.values.empty())
        throw ConfigError("sweep \"" + cfg.sweep.name + "\" has no values");
    for (double v : cfg.sweep.values)
        if (std::isnan(v))
            throw ConfigError("sweep values must not be NaN");
    if (cfg.scenario == "custom" && !cfg.scene)
        throw ConfigError("scenario custom needs a scene");
    if (cfg.scene)
        build_scene(*cfg.scene);
}

// ---- execution helpers ---------------------------------------------------------------------

int worker_count(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char *env = std::getenv("IRS_SIM_THREADS"))
    {
        char *end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1)
            n = std::min(n, static_cast<int>(cap));
    }
    return n;
}

void parallel_for(int n, int threads, const std::function<void(int)> &fn)
{
    if (n <= 0)
        return;
    const int workers = std::min(std::max(threads, 1), n);
    if (workers == 1)
    {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex mu;
    int failed_at = n;
    std::exception_ptr failure;
    auto work = [&] {
        for (int i = next++; i < n; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(mu);
                if (i < failed_at)
                {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

Summary summarize(const std::vector<double> &x)
{
    Summary s;
    if (x.empty())
        return {std::nan(""), std::nan("")};
    double sum = 0.0;
    for (double v : x)
        sum += v;
    s.mean = sum / static_cast<double>(x.size());
    if (x.size() > 1)
    {
        double ss = 0.0;
        for (double v : x)
            ss += (v - s.mean) * (v - s.mean);
        s.stderr_ = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
    }
    return s;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
    {
        double lx = std::log(x[i]);
        double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rate_bps(double snr) { return std::log2(1.0 + snr); }

// ---- fig6 ----------------------------------------------------------------------------------

ResultTable run_fig6(const ExperimentConfig &cfg)
{
    const Sweep sw = sweep_or(cfg, {"total_elements", {200, 400, 600, 800, 1000, 1200, 1400, 1600}});
    const int rows = param_positive(cfg, "rows", 10);
    const double alpha_rayleigh = param_number(cfg, "alpha_inter_irs_rayleigh", 2.5);
    const double ao_tol = param_number(cfg, "ao_tol", 1e-4);
    const Scene base = scenario_scene(cfg, "fig4");
    if (base.num_irs() != 2 || base.num_users() < 1)
        throw ConfigError("fig6 needs a scene with two IRSs and a user");
    const double p = base.constants.tx_mw();
    const double sigma2 = base.constants.noise_mw();
    const int user = base.user_node(1);

    ResultTable table;
    Emitter out{cfg, table, sw.name};
    std::vector<double> m_values, g_double, g_single, g_rayleigh;
    const int workers = worker_count(cfg.threads);

    for (size_t i = 0; i < sw.values.size(); ++i)
    {
        const double n_total = sw.values[i];
        const long M = std::lround(n_total / 2.0);
        if (M < rows || std::abs(n_total - 2.0 * static_cast<double>(M)) > 1e-9 || M % rows != 0)
            throw ConfigError("fig6: total_elements must be a positive multiple of 2*rows");
        Scene s = base;
        resize_irs(s, static_cast<int>(M / rows), rows);
        const std::map<std::pair<int, int>, LinkModel> rayleigh{{{1, 2}, LinkModel{alpha_rayleigh, 0.0, false, true}}};
        const std::vector<std::pair<int, int>> double_links{{0, 1}, {1, 2}, {2, user}};
        const LoSGraph double_path = path_graph(s, 1, {1, 2});

        TrialMatrix m(static_cast<size_t>(cfg.trials));
        parallel_for(cfg.trials, workers, [&](int t) {
            const std::uint64_t seed = trial_seed(cfg, 6, i, t);
            ChannelSet ch = synthesize_links(s, seed, {{0, 1}, {1, 2}, {2, user}, {1, user}, {0, 2}});
            const PhaseConfig ones = PhaseConfig::ones(s);

            PhaseConfig pd = multi_hop_phases(ch, s, 1, {1, 2}, ones);
            const double gd = cascaded_path_channel(ch, s, 1, {1, 2}, pd).squaredNorm();

            PhaseConfig ps = multi_hop_phases(ch, s, 1, {1}, ones);
            ps = multi_hop_phases(ch, s, 1, {2}, ps);
            const cvec h1 = cascaded_path_channel(ch, s, 1, {1}, ps);
            const cvec h2 = cascaded_path_channel(ch, s, 1, {2}, ps);
            const cplx c = unit_phase(h1.dot(h2));
            ps.at(2) *= std::conj(c);
            const double gs = (h1 + h2 * std::conj(c)).squaredNorm();

            ChannelSet chr = synthesize_links(s, substream_seed(seed, 0x52), double_links, rayleigh);
            AoOptions ao;
            ao.include_direct = false;
            ao.tol = ao_tol;
            ao.seed = seed;
            const double gr = ao_joint_beamforming(chr, s, double_path, ones, ao).solution.gains.at(0);

            m[static_cast<size_t>(t)] = {gd, gs, gr, rate_bps(p * gd / sigma2), rate_bps(p * gs / sigma2),
                                         rate_bps(p * gr / sigma2)};
        });
        const double x = n_total;
        const char *names[] = {"gain_double_los", "gain_single", "gain_double_rayleigh",
                               "rate_double_los", "rate_single", "rate_double_rayleigh"};
        for (size_t c = 0; c < 6; ++c)
            out.samples(x, names[c], column(m, c));
        m_values.push_back(static_cast<double>(M));
        g_double.push_back(summarize(column(m, 0)).mean);
        g_single.push_back(summarize(column(m, 1)).mean);
        g_rayleigh.push_back(summarize(column(m, 2)).mean);
    }
    if (m_values.size() >= 2)
    {
        out.summary("slope_double_los", loglog_slope(m_values, g_double));
        out.summary("slope_single", loglog_slope(m_values, g_single));
        out.summary("slope_double_rayleigh", loglog_slope(m_values, g_rayleigh));
    }
    table.sort();
    return table;
}

// ---- fig7 ----------------------------------------------------------------------------------

namespace
{

cvec steer_phases(const Scene &s, int irs_node, const vec3 &from, const vec3 &to)
{
    const Irs &irs = s.irs_at(irs_node);
    const cvec a_in = array_response(irs.array, (from - irs.position).normalized());
    const cvec a_out = array_response(irs.array, (to - irs.position).normalized());
    return (a_in.array() * a_out.array()).conjugate().matrix();
}

vec3 user_centroid(const Scene &s)
{
    vec3 c = vec3::Zero();
    for (const auto &u : s.users)
        c += u;
    return c / static_cast<double>(s.num_users());
}

cmat user_matrix(const ChannelSet &ch, const Scene &s, const PhaseConfig &ph)
{
    cmat H(s.bs.array.size(), s.num_users());
    for (int k = 1; k <= s.num_users(); ++k)
        H.col(k - 1) = effective_channel(ch, s, k, ph, false);
    return H;
}

double min_rate(const std::vector<double> &sinr)
{
    double r = infinity;
    for (double v : sinr)
        r = std::min(r, rate_bps(v));
    return r;
}

} // namespace

ResultTable run_fig7(const ExperimentConfig &cfg)
{
    std::vector<double> def;
    for (int d = -70; d <= 20; d += 5)
        def.push_back(d);
    const Sweep sw = sweep_or(cfg, {"tx_power_dBm", def});
    const Scene s2 = scenario_scene(cfg, "fig7");
    if (s2.num_irs() != 2)
        throw ConfigError("fig7 needs a scene with two IRSs");
    const Scene s1 = remove_irs(s2, 2);
    const double sigma2 = s2.constants.noise_mw();
    const vec3 centroid = user_centroid(s2);
    const int K = s2.num_users();

    // Double-IRS: IRS 1 focuses the BS beam onto IRS 2, which spreads it towards the user cluster.
    // The single-IRS baseline steers IRS 1 from the BS to the cluster.
    auto double_phases = [&](const ChannelSet &ch) {
        PhaseConfig ph = multi_hop_phases(ch, s2, 1, {1, 2}, PhaseConfig::ones(s2));
        ph.at(2) = steer_phases(s2, 2, s2.irs_at(1).position, centroid);
        return ph;
    };
    PhaseConfig single_phases = PhaseConfig::ones(s1);
    single_phases.at(1) = steer_phases(s1, 1, s1.bs.position, centroid);

    const size_t P = sw.values.size();
    TrialMatrix m(static_cast<size_t>(cfg.trials));
    parallel_for(cfg.trials, worker_count(cfg.threads), [&](int t) {
        const std::uint64_t seed = trial_seed(cfg, 7, 0, t);
        ChannelSet ch2 = synthesize_channels(s2, seed, ChannelScope::Admissible);
        ChannelSet ch1 = synthesize_channels(s1, seed, ChannelScope::Admissible);
        const cmat H2 = user_matrix(ch2, s2, double_phases(ch2));
        const cmat H1 = user_matrix(ch1, s1, single_phases);
        std::vector<double> row;
        for (double p_dbm : sw.values)
        {
            const double p = dbm_to_mw(p_dbm);
            row.push_back(min_rate(linear_receivers(H2, p, sigma2, Receiver::ZF).sinr));
            row.push_back(min_rate(linear_receivers(H2, p, sigma2, Receiver::MMSE).sinr));
            row.push_back(min_rate(linear_receivers(H1, p, sigma2, Receiver::ZF).sinr));
            row.push_back(min_rate(linear_receivers(H1, p, sigma2, Receiver::MMSE).sinr));
        }
        row.push_back(numerical_rank(H2));
        row.push_back(numerical_rank(H1));
        m[static_cast<size_t>(t)] = std::move(row);
    });

    ResultTable table;
    Emitter out{cfg, table, sw.name};
    const char *names[] = {"minrate_double_zf", "minrate_double_mmse", "minrate_single_zf", "minrate_single_mmse"};
    for (size_t i = 0; i < P; ++i)
        for (size_t c = 0; c < 4; ++c)
            out.samples(sw.values[i], names[c], column(m, 4 * i + c));
    out.summary("rank_double", summarize(column(m, 4 * P)).mean);
    out.summary("rank_single", summarize(column(m, 4 * P + 1)).mean);
    out.summary("users", K);
    table.sort();
    return table;
}

// ---- fig8 ----------------------------------------------------------------------------------

ResultTable run_fig8(const ExperimentConfig &cfg)
{
    std::vector<double> def;
    for (int n = 40; n <= 1000; n += 40)
        def.push_back(n);
    const Sweep sw = sweep_or(cfg, {"n_b", def});
    const long long M = param_positive(cfg, "M", 400);
    const long long K = param_positive(cfg, "K", 5);

    ResultTable table;
    Emitter out{cfg, table, sw.name};
    for (double x : sw.values)
    {
        if (x < 1.0 || x != std::floor(x))
            throw ConfigError("fig8: n_b values must be positive integers");
        const long long n_b = static_cast<long long>(x);
        const long long single = overhead_double_irs_single_user(M, n_b);
        out.value(x, "overhead_proposed_single", static_cast<double>(single));
        out.value(x, "overhead_benchmark_single", static_cast<double>(overhead_benchmark_siso_general(M)));
        out.value(x, "overhead_proposed_multi",
                  static_cast<double>(single + overhead_multi_user_extra(M, n_b, K)));
        out.value(x, "overhead_benchmark_multi", static_cast<double>(K * overhead_benchmark_siso_general(M)));
    }
    table.sort();
    return table;
}

// ---- fig9 / fig11 --------------------------------------------------------------------------

namespace
{

json path_json(const ReflectionPath &p)
{
    return {{"user", p.user}, {"route", p.irs}, {"hops", p.hops()}, {"gain_dB", db(p.gain)}};
}

std::vector<LoSGraph> user_graphs(const Scene &s)
{
    std::vector<LoSGraph> g;
    for (int k = 1; k <= s.num_users(); ++k)
        g.push_back(build_los_graph(s, k));
    return g;
}

} // namespace

json route_dump(const Scene &scene)
{
    json out;
    out["users"] = json::array();
    const auto graphs = user_graphs(scene);
    for (const auto &g : graphs)
        out["users"].push_back(path_json(optimal_single_route(scene, g)));
    if (scene.num_users() > 1)
    {
        out["unconstrained"] = routes_to_json(unconstrained_multi_route(scene, graphs));
        out["separated"] = routes_to_json(optimal_multi_route(scene, graphs));
    }
    return out;
}

RouteReport run_fig9_11(const ExperimentConfig &cfg)
{
    RouteReport rep;
    Emitter out{cfg, rep.table, "m0"};
    const Scene base = scenario_scene(cfg, "fig9");
    rep.routes = {{"scenario", cfg.scenario}, {"points", json::array()}};

    if (cfg.scenario == "fig9")
    {
        std::vector<double> def;
        for (int m0 = 12; m0 <= 32; m0 += 2)
            def.push_back(m0);
        const Sweep sw = sweep_or(cfg, {"m0", def});
        for (double x : sw.values)
        {
            if (x < 1.0 || x != std::floor(x))
                throw ConfigError("fig9: m0 values must be positive integers");
            Scene s = base;
            resize_irs(s, static_cast<int>(x), static_cast<int>(x));
            const ReflectionPath p = optimal_single_route(s, build_los_graph(s, 1));
            out.value(x, "hops_u1", p.hops());
            out.value(x, "gain_dB_u1", db(p.gain));
            json e = path_json(p);
            e["m0"] = x;
            rep.routes["points"].push_back(e);
        }
        rep.table.sort();
        return rep;
    }
    if (cfg.scenario != "fig11")
        throw ConfigError("run_fig9_11: scenario must be fig9 or fig11");

    const Sweep sw = sweep_or(cfg, {"m0", {24}});
    if (base.num_users() < 2)
        throw ConfigError("fig11 needs at least two users");
    const int K = base.num_users();
    const int workers = worker_count(cfg.threads);
    for (size_t i = 0; i < sw.values.size(); ++i)
    {
        const double x = sw.values[i];
        if (x < 1.0 || x != std::floor(x))
            throw ConfigError("fig11: m0 values must be positive integers");
        Scene s = base;
        resize_irs(s, static_cast<int>(x), static_cast<int>(x));
        const auto graphs = user_graphs(s);
        const RoutingSolution un = unconstrained_multi_route(s, graphs);
        const RoutingSolution sep = optimal_multi_route(s, graphs);

        out.value(x, "min_gain_dB_unconstrained", db(un.objective));
        out.value(x, "min_gain_dB_separated", db(sep.objective));
        out.value(x, "separation_ok_unconstrained", un.separation_ok ? 1.0 : 0.0);
        out.value(x, "separation_ok_separated", sep.separation_ok ? 1.0 : 0.0);
        for (int k = 0; k < K; ++k)
            out.value(x, "route_changed_" + user_tag(k + 1),
                      un.paths[static_cast<size_t>(k)].irs != sep.paths[static_cast<size_t>(k)].irs ? 1.0 : 0.0);

        // Per trial and user: interference (dBm) and SINR (dB) for both assignments.
        TrialMatrix m(static_cast<size_t>(cfg.trials));
        parallel_for(cfg.trials, workers, [&](int t) {
            ChannelSet ch = synthesize_channels(s, trial_seed(cfg, 11, i, t), ChannelScope::Admissible);
            const InterferenceReport a = interference_audit(s, ch, un, route_beams(ch, s, un));
            const InterferenceReport b = interference_audit(s, ch, sep, route_beams(ch, s, sep));
            std::vector<double> row;
            for (size_t k = 0; k < static_cast<size_t>(K); ++k)
            {
                row.push_back(db(a.interference[k]));
                row.push_back(db(b.interference[k]));
                row.push_back(a.interference_to_noise_dB[k]);
                row.push_back(b.interference_to_noise_dB[k]);
                row.push_back(db(a.sinr[k]));
                row.push_back(db(b.sinr[k]));
                row.push_back(db(a.interference[k]) - db(b.interference[k]));
            }
            m[static_cast<size_t>(t)] = std::move(row);
        });
        const char *names[] = {"interference_dBm_unconstrained", "interference_dBm_separated",
                               "inr_dB_unconstrained",           "inr_dB_separated",
                               "sinr_dB_unconstrained",          "sinr_dB_separated",
                               "interference_reduction_dB"};
        for (int k = 0; k < K; ++k)
        {
            for (size_t c = 0; c < 7; ++c)
                out.samples(x, std::string(names[c]) + "_" + user_tag(k + 1), column(m, 7 * static_cast<size_t>(k) + c));
            const auto red = column(m, 7 * static_cast<size_t>(k) + 6);
            out.value(x, "interference_reduction_min_dB_" + user_tag(k + 1), *std::min_element(red.begin(), red.end()));
        }
        json e = route_dump(s);
        e["m0"] = x;
        rep.routes["points"].push_back(e);
    }
    rep.table.sort();
    return rep;
}

// ---- fig13 ---------------------------------------------------------------------------------

ResultTable run_fig13(const ExperimentConfig &cfg)
{
    const Sweep sw = sweep_or(cfg, {"kappa_dB", {5, 10, 15, 20, 25, 30, infinity}});
    const int m0 = param_positive(cfg, "m0", 24);
    if (m0 > 24 && !cfg.full_scale)
        throw ConfigError("fig13: m0 above 24 needs full_scale");
    const int points = param_positive(cfg, "codebook_points", 32);
    const int slots = param_positive(cfg, "slots", 10);
    const int max_sweeps = param_positive(cfg, "max_sweeps", 20);
    const int user_index = param_positive(cfg, "user", 1);

    Scene base = scenario_scene(cfg, "fig9");
    resize_irs(base, m0, m0);
    if (user_index > base.num_users())
        throw ConfigError("fig13: params.user out of range");
    const ReflectionPath route = optimal_single_route(base, build_los_graph(base, user_index));
    const int user = base.user_node(user_index);
    const Codebook active = dft_codebook(points, base.bs.array.size(), true);
    const Codebook passive = passive_3d_codebook(points, points, m0, m0);
    for (int j : route.irs)
        if (base.irs_at(j).array.cols != m0 || base.irs_at(j).array.rows != m0)
            throw ConfigError("fig13: IRSs must be square");

    std::vector<std::pair<int, int>> links;
    std::vector<int> nodes{0};
    nodes.insert(nodes.end(), route.irs.begin(), route.irs.end());
    nodes.push_back(user);
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        links.emplace_back(nodes[i], nodes[i + 1]);

    ResultTable table;
    Emitter out{cfg, table, sw.name};
    const int workers = worker_count(cfg.threads);
    for (size_t i = 0; i < sw.values.size(); ++i)
    {
        Scene s = base;
        s.constants.kappa_dB = sw.values[i];
        // Single-user problem on the path graph of the chosen route.
        Scene single = s;
        single.users = {s.users.at(static_cast<size_t>(user_index - 1))};
        single.effective_regions = {s.effective_regions.at(static_cast<size_t>(user_index - 1))};
        const int su = single.user_node(1);
        std::vector<std::pair<int, int>> slinks = links;
        slinks.back().second = su;
        const LoSGraph pg = path_graph(single, 1, route.irs);

        TrialMatrix m(static_cast<size_t>(cfg.trials));
        parallel_for(cfg.trials, workers, [&](int t) {
            const std::uint64_t seed = trial_seed(cfg, 13, i, t);
            ChannelSet ch = synthesize_links(single, seed, slinks);
            TrainingConfig tc;
            tc.slots = slots;
            tc.seed = substream_seed(seed, 0x7A);
            const Btt bs = build_bs_btt(single, ch, {pg}, active, tc);
            std::vector<Btt> tables;
            for (int j : route.irs)
                tables.push_back(build_irs_btt(single, ch, {pg}, j, passive, active, bs, {1}, tc));
            const GlobalBtt global = assemble_global_btt(single, bs, tables);
            const PathBeams pb = best_path_beams(global, route.irs, su);

            SearchProblem prob;
            prob.scene = &single;
            prob.channels = &ch;
            prob.graphs = {pg};
            prob.irs = route.irs;
            prob.active = &active;
            prob.passive = &passive;
            prob.include_direct = false;
            const BeamChoice init{{pb.bs_beam}, pb.irs_beams};
            const double g_dist = evaluate_choice(prob, init).solution.gains.at(0);
            const double g_seq = sequential_search(prob, max_sweeps, init).solution.gains.at(0);
            m[static_cast<size_t>(t)] = {g_dist, g_seq, db(g_dist), db(g_seq), (g_seq - g_dist) / g_seq};
        });
        const double x = sw.values[i];
        const Summary d = summarize(column(m, 0));
        const Summary q = summarize(column(m, 1));
        out.samples(x, "gain_distributed", column(m, 0));
        out.samples(x, "gain_sequential", column(m, 1));
        out.samples(x, "gain_dB_distributed", column(m, 2));
        out.samples(x, "gain_dB_sequential", column(m, 3));
        out.samples(x, "gap_relative", column(m, 4));
        out.value(x, "gap_dB", db(q.mean) - db(d.mean));
    }
    table.sort();
    return table;
}

// ---- custom --------------------------------------------------------------------------------

ResultTable run_custom(const ExperimentConfig &cfg)
{
    if (!cfg.scene)
        throw ConfigError("scenario custom needs a scene");
    const Scene s = build_scene(*cfg.scene);
    const Sweep sw = sweep_or(cfg, {"tx_power_dBm", {s.constants.tx_power_dBm}});
    const double sigma2 = s.constants.noise_mw();
    const int K = s.num_users();

    std::vector<ReflectionPath> routes;
    for (const auto &g : user_graphs(s))
        routes.push_back(optimal_single_route(s, g));

    // Gain of every user on its own route with closed-form beams, one fading draw per trial.
    TrialMatrix m(static_cast<size_t>(cfg.trials));
    parallel_for(cfg.trials, worker_count(cfg.threads), [&](int t) {
        ChannelSet ch = synthesize_channels(s, trial_seed(cfg, 0xC0, 0, t));
        std::vector<double> row;
        for (const auto &r : routes)
        {
            const PhaseConfig ph = multi_hop_phases(ch, s, r.user, r.irs, PhaseConfig::ones(s));
            const cvec h = cascaded_path_channel(ch, s, r.user, r.irs, ph);
            const cvec w = bs_mrt_to_first_irs(ch, r.irs.front());
            row.push_back(std::norm(w.dot(h)));
        }
        m[static_cast<size_t>(t)] = std::move(row);
    });

    ResultTable table;
    Emitter out{cfg, table, sw.name};
    for (int k = 0; k < K; ++k)
    {
        const auto gains = column(m, static_cast<size_t>(k));
        for (double x : sw.values)
        {
            std::vector<double> rates;
            for (double g : gains)
                rates.push_back(rate_bps(dbm_to_mw(x) * g / sigma2));
            out.samples(x, "rate_" + user_tag(k + 1), rates);
            out.samples(x, "gain_" + user_tag(k + 1), gains);
            out.value(x, "hops_" + user_tag(k + 1), routes[static_cast<size_t>(k)].hops());
        }
    }
    table.sort();
    return table;
}

ResultTable run_experiment(const ExperimentConfig &cfg)
{
    validate_config(cfg);
    if (cfg.scenario == "fig6")
        return run_fig6(cfg);
    if (cfg.scenario == "fig7")
        return run_fig7(cfg);
    if (cfg.scenario == "fig8")
        return run_fig8(cfg);
    if (cfg.scenario == "fig9" || cfg.scenario == "fig11")
        return run_fig9_11(cfg).table;
    if (cfg.scenario == "fig13")
        return run_fig13(cfg);
    return run_custom(cfg);
}

} // namespace irsnet

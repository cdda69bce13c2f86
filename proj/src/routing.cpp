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

#include "irsnet/routing.hpp"

#include <algorithm>
#include <sstream>

namespace irsnet
{

using nlohmann::json;

double edge_weight(double d, double M, double beta, bool into_irs)
{
    double w = 2.0 * std::log(d) - std::log(beta);
    if (into_irs)
        w -= 2.0 * std::log(M);
    return w;
}

double edge_weight(const Scene &scene, int i, int j)
{
    const auto &c = scene.constants;
    double alpha;
    if (scene.is_bs(i))
        alpha = scene.is_user(j) ? c.alpha_bs_user : c.alpha_bs_irs;
    else
        alpha = scene.is_user(j) ? c.alpha_irs_user : c.alpha_irs_irs;
    double w = -std::log(path_loss(scene.distance(i, j), alpha, c.beta()));
    if (scene.is_irs(j))
        w -= 2.0 * std::log(static_cast<double>(scene.elements(j)));
    return w;
}

double path_weight(const Scene &scene, int k, const std::vector<int> &path)
{
    double w = 0.0;
    int prev = 0;
    for (int a : path)
    {
        w += edge_weight(scene, prev, a);
        prev = a;
    }
    return w + edge_weight(scene, prev, scene.user_node(k));
}

namespace
{

struct Label
{
    bool valid = false;
    double weight = 0.0;
    std::vector<int> seq;
};

bool nearly_equal(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0});
}

bool label_better(const Label &a, const Label &b)
{
    if (!b.valid)
        return a.valid;
    if (!a.valid)
        return false;
    if (!nearly_equal(a.weight, b.weight))
        return a.weight < b.weight;
    if (a.seq.size() != b.seq.size())
        return a.seq.size() < b.seq.size();
    return a.seq < b.seq;
}

} // namespace

bool route_better(const ReflectionPath &a, const ReflectionPath &b)
{
    if (!(std::abs(a.gain - b.gain) <= 1e-12 * std::max(std::abs(a.gain), std::abs(b.gain))))
        return a.gain > b.gain;
    if (a.irs.size() != b.irs.size())
        return a.irs.size() < b.irs.size();
    return a.irs < b.irs;
}

ReflectionPath optimal_single_route(const Scene &scene, const LoSGraph &g)
{
    std::vector<Label> label(g.out.size());
    label[0].valid = true;
    const size_t rounds = g.vertices.size() > 0 ? g.vertices.size() - 1 : 0;
    for (size_t r = 0; r < rounds; ++r)
    {
        bool changed = false;
        for (const auto &e : g.edges)
        {
            const Label &li = label[static_cast<size_t>(e.from)];
            if (!li.valid)
                continue;
            Label cand;
            cand.valid = true;
            cand.weight = li.weight + edge_weight(scene, e.from, e.to);
            cand.seq = li.seq;
            if (e.to != g.user_node)
                cand.seq.push_back(e.to);
            if (label_better(cand, label[static_cast<size_t>(e.to)]))
            {
                label[static_cast<size_t>(e.to)] = std::move(cand);
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    const Label &best = label[static_cast<size_t>(g.user_node)];
    if (!best.valid)
        throw NoFeasiblePath("no reflection path from the BS to user " + std::to_string(g.user));
    ReflectionPath p;
    p.user = g.user;
    p.irs = best.seq;
    p.gain = path_gain(scene, g.user, p.irs);
    return p;
}

std::vector<ReflectionPath> enumerate_routes(const Scene &scene, const LoSGraph &g, size_t max_paths)
{
    std::vector<ReflectionPath> out;
    for (auto &seq : enumerate_paths(g, max_paths))
    {
        ReflectionPath p;
        p.user = g.user;
        p.gain = path_gain(scene, g.user, seq);
        p.irs = std::move(seq);
        out.push_back(std::move(p));
    }
    return out;
}

ReflectionPath optimal_single_route_with_direct(const Scene &scene, const LoSGraph &g, const ChannelSet &channels)
{
    const cvec f = channels.direct(g.user_node);
    auto routes = enumerate_routes(scene, g);
    if (routes.empty())
    {
        if (f.squaredNorm() == 0.0)
            throw NoFeasiblePath("no reflection path and no direct link for user " + std::to_string(g.user));
        ReflectionPath direct_only;
        direct_only.user = g.user;
        direct_only.gain = f.squaredNorm();
        return direct_only;
    }
    for (auto &r : routes)
        r.gain = path_gain_with_direct(r.gain, f, channels.link(0, r.irs.front()).resp_from);
    return *std::min_element(routes.begin(), routes.end(), route_better);
}

namespace
{

std::vector<int> path_nodes(const Scene &scene, const ReflectionPath &p)
{
    std::vector<int> nodes = p.irs;
    nodes.push_back(scene.user_node(p.user));
    return nodes;
}

bool coupled(const LosTable &u, int x, int y) { return x == y || u(x, y) || u(y, x); }

} // namespace

bool check_path_separation(const Scene &scene, const LosTable &u, const std::vector<ReflectionPath> &paths)
{
    for (size_t a = 0; a < paths.size(); ++a)
        for (size_t b = a + 1; b < paths.size(); ++b)
            for (int x : path_nodes(scene, paths[a]))
                for (int y : path_nodes(scene, paths[b]))
                    if (coupled(u, x, y))
                        return false;
    return true;
}

// ---- multi-user routing --------------------------------------------------------------------

namespace
{

struct MultiSearch
{
    const Scene &scene;
    const std::vector<LoSGraph> &graphs;
    const LosTable &u;
    const RouteGain &gain;
    size_t budget;

    std::vector<int> order;
    std::vector<ReflectionPath> chosen;
    std::vector<ReflectionPath> best;
    double best_obj = -1.0;

    std::vector<ReflectionPath> candidates(int k, const std::vector<int> &blocked) const
    {
        const LoSGraph &g = graphs[static_cast<size_t>(k - 1)];
        LoSGraph pruned = blocked.empty() ? g : without_vertices(g, blocked);
        std::vector<ReflectionPath> c;
        for (auto &seq : enumerate_paths(pruned))
        {
            ReflectionPath p;
            p.user = k;
            p.gain = gain(k, seq);
            p.irs = std::move(seq);
            if (p.gain > 0.0)
                c.push_back(std::move(p));
        }
        std::sort(c.begin(), c.end(), route_better);
        if (c.size() > budget)
            c.resize(budget);
        return c;
    }

    void recurse(size_t level, double cur_min)
    {
        if (level == order.size())
        {
            if (cur_min > best_obj)
            {
                best_obj = cur_min;
                best = chosen;
            }
            return;
        }
        const int k = order[level];
        const int user = scene.user_node(k);

        std::vector<int> taken;
        for (const auto &p : chosen)
            for (int x : path_nodes(scene, p))
                taken.push_back(x);
        for (int x : taken)
            if (coupled(u, user, x))
                return;
        std::vector<int> blocked;
        for (int v : graphs[static_cast<size_t>(k - 1)].vertices)
        {
            if (!scene.is_irs(v))
                continue;
            for (int x : taken)
                if (coupled(u, v, x))
                {
                    blocked.push_back(v);
                    break;
                }
        }

        for (auto &c : candidates(k, blocked))
        {
            double m = std::min(cur_min, c.gain);
            if (m <= best_obj)
                break;
            chosen.push_back(std::move(c));
            recurse(level + 1, m);
            chosen.pop_back();
        }
    }
};

RouteGain default_gain(const Scene &scene)
{
    return [&scene](int k, const std::vector<int> &p) { return path_gain(scene, k, p); };
}

} // namespace

RoutingSolution optimal_multi_route(const Scene &scene, const std::vector<LoSGraph> &graphs,
                                    const MultiRouteOptions &opt)
{
    const int K = static_cast<int>(graphs.size());
    if (K == 0)
        throw std::invalid_argument("optimal_multi_route: no users");
    if (opt.budget == 0)
        throw std::invalid_argument("optimal_multi_route: budget must be at least 1");
    LosTable u(scene);
    RouteGain gain = opt.gain ? opt.gain : default_gain(scene);
    MultiSearch s{scene, graphs, u, gain, opt.budget, {}, {}, {}, -1.0};

    std::vector<std::pair<double, int>> best_single;
    std::ostringstream diag;
    bool any_missing = false;
    for (int k = 1; k <= K; ++k)
    {
        auto c = s.candidates(k, {});
        if (c.empty())
        {
            any_missing = true;
            diag << " user " << k << ": no reflection path;";
        }
        else
        {
            best_single.emplace_back(c.front().gain, k);
            diag << " user " << k << ": " << c.size() << " candidate paths;";
        }
    }
    if (any_missing)
        throw Infeasible("multi-user routing infeasible:" + diag.str());
    std::stable_sort(best_single.begin(), best_single.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (const auto &bs : best_single)
        s.order.push_back(bs.second);

    s.recurse(0, std::numeric_limits<double>::infinity());
    if (s.best.empty())
        throw Infeasible("no path-separated route assignment exists:" + diag.str());

    RoutingSolution sol;
    sol.paths.resize(static_cast<size_t>(K));
    for (auto &p : s.best)
        sol.paths[static_cast<size_t>(p.user - 1)] = p;
    sol.objective = s.best_obj;
    sol.separation_ok = check_path_separation(scene, u, sol.paths);
    if (!sol.separation_ok)
        throw std::logic_error("optimal_multi_route produced a non-separated assignment");
    return sol;
}

RoutingSolution unconstrained_multi_route(const Scene &scene, const std::vector<LoSGraph> &graphs,
                                          const RouteGain &gain)
{
    RoutingSolution sol;
    sol.objective = std::numeric_limits<double>::infinity();
    for (const auto &g : graphs)
    {
        ReflectionPath p;
        if (gain)
        {
            std::vector<ReflectionPath> routes;
            for (auto &r : enumerate_routes(scene, g))
            {
                r.gain = gain(g.user, r.irs);
                if (r.gain > 0.0)
                    routes.push_back(std::move(r));
            }
            if (routes.empty())
                throw NoFeasiblePath("no usable reflection path from the BS to user " + std::to_string(g.user));
            p = *std::min_element(routes.begin(), routes.end(), route_better);
        }
        else
            p = optimal_single_route(scene, g);
        sol.objective = std::min(sol.objective, p.gain);
        sol.paths.push_back(std::move(p));
    }
    sol.separation_ok = check_path_separation(scene, LosTable(scene), sol.paths);
    return sol;
}

BeamSolution route_beams(const ChannelSet &channels, const Scene &scene, const RoutingSolution &sol)
{
    BeamSolution b;
    b.phases = PhaseConfig::ones(scene);
    for (auto it = sol.paths.rbegin(); it != sol.paths.rend(); ++it)
        if (!it->irs.empty())
            b.phases = multi_hop_phases(channels, scene, it->user, it->irs, b.phases);
    for (const auto &p : sol.paths)
    {
        if (!p.irs.empty())
            b.bs_beams.push_back(bs_mrt_to_first_irs(channels, p.irs.front()));
        else
            b.bs_beams.push_back(bs_mrt(channels.direct(scene.user_node(p.user))));
    }
    return b;
}

InterferenceReport interference_audit(const Scene &scene, const ChannelSet &full_channels,
                                      const RoutingSolution &sol, const BeamSolution &beams)
{
    const double p = scene.constants.tx_mw();
    const double sigma2 = scene.constants.noise_mw();
    const size_t K = sol.paths.size();
    std::vector<cvec> h;
    for (const auto &path : sol.paths)
        h.push_back(effective_channel(full_channels, scene, path.user, beams.phases, false));

    InterferenceReport r;
    for (size_t k = 0; k < K; ++k)
    {
        double interf = 0.0;
        for (size_t j = 0; j < K; ++j)
            if (j != k)
                interf += p * std::norm(beams.bs_beams[j].dot(h[k]));
        double sig = p * std::norm(beams.bs_beams[k].dot(h[k]));
        r.signal.push_back(sig);
        r.interference.push_back(interf);
        r.interference_to_noise_dB.push_back(interf > 0.0 ? linear_to_db(interf / sigma2) : -infinity);
        r.sinr.push_back(sig / (interf + sigma2));
    }
    return r;
}

json routes_to_json(const RoutingSolution &sol)
{
    json users = json::array();
    for (const auto &p : sol.paths)
        users.push_back({{"user", p.user}, {"path", p.irs}, {"gain_dB", linear_to_db(p.gain)}});
    return {{"routes", users}, {"objective_dB", linear_to_db(sol.objective)}, {"separation_ok", sol.separation_ok}};
}

} // namespace irsnet

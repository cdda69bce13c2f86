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

#include "generators.hpp"

#include <doctest.h>

using namespace irsnet;
using nlohmann::json;

namespace
{

std::vector<LoSGraph> all_graphs(const Scene &s)
{
    std::vector<LoSGraph> g;
    for (int k = 1; k <= s.num_users(); ++k)
        g.push_back(build_los_graph(s, k));
    return g;
}

json with_m0(json j, int m0)
{
    for (auto &e : j["irs"])
    {
        e["cols"] = m0;
        e["rows"] = m0;
    }
    return j;
}

} // namespace

TEST_CASE("edge weights are negative log gains")
{
    CHECK(edge_weight(10.0, 16.0, 1e-3, true) == doctest::Approx(2 * std::log(10.0) - std::log(1e-3) - 2 * std::log(16.0)));
    CHECK(edge_weight(10.0, 16.0, 1e-3, false) == doctest::Approx(2 * std::log(10.0) - std::log(1e-3)));
}

TEST_CASE("Bellman-Ford (P1) matches the brute-force DFS argmax")
{
    Rng rng(101);
    int feasible = 0;
    for (int t = 0; t < 200; ++t)
    {
        Scene s = gen::p1_instance(rng);
        auto oracle = gen::oracle_p1(s, 1);
        LoSGraph g = build_los_graph(s, 1);
        if (!oracle.feasible)
        {
            CHECK_THROWS_AS(optimal_single_route(s, g), NoFeasiblePath);
            continue;
        }
        ++feasible;
        ReflectionPath r = optimal_single_route(s, g);
        CHECK(r.irs == oracle.path);
        CHECK(gen::rel_err(r.gain, oracle.gain) < 1e-9);
    }
    CHECK(feasible > 100);
}

TEST_CASE("(P2) with unlimited budget matches joint brute force")
{
    Rng rng(103);
    int feasible = 0, infeasible = 0;
    while (feasible < 50)
    {
        Scene s = gen::p2_instance(rng);
        double oracle = gen::oracle_p2(s);
        auto graphs = all_graphs(s);
        if (oracle < 0.0)
        {
            CHECK_THROWS_AS(optimal_multi_route(s, graphs), Infeasible);
            ++infeasible;
            continue;
        }
        ++feasible;
        RoutingSolution sol = optimal_multi_route(s, graphs);
        CHECK(gen::rel_err(sol.objective, oracle) < 1e-9);
        CHECK(sol.separation_ok);
        LosTable u(s);
        CHECK(gen::oracle_separated(s, u, 1, sol.paths[0].irs, 2, sol.paths[1].irs));

        RoutingSolution free = unconstrained_multi_route(s, graphs);
        CHECK(sol.objective <= free.objective * (1 + 1e-12));

        MultiRouteOptions small;
        small.budget = 2;
        try
        {
            RoutingSolution b = optimal_multi_route(s, graphs, small);
            CHECK(b.separation_ok);
            CHECK(b.objective <= sol.objective * (1 + 1e-12));
        }
        catch (const Infeasible &)
        {
        }
    }
    CHECK(infeasible > 0);
}

TEST_CASE("optimal hop count is nondecreasing in the IRS size")
{
    Rng rng(107);
    gen::SceneShape shape;
    shape.irs_max = 8;
    shape.obstacles_max = 2;
    int changed = 0;
    for (int t = 0; t < 60; ++t)
    {
        json base = gen::random_scene(rng, shape);
        int last = -1;
        bool any = false;
        for (int m0 = 1; m0 <= 64; m0 += 3)
        {
            Scene s = build_scene(with_m0(base, m0));
            LoSGraph g = build_los_graph(s, 1);
            if (enumerate_paths(g).empty())
                break;
            int hops = optimal_single_route(s, g).hops();
            CHECK(hops >= last);
            any = any || (last >= 0 && hops > last);
            last = hops;
        }
        changed += any;
    }
    CHECK(changed > 0);
}

TEST_CASE("separation check")
{
    json j = json::parse(R"({
      "bs": {"position": [0, 0, 0], "antennas": 2},
      "irs": [{"position": [5, 4, 0], "pointing_normal": [0, -1, 0], "m0": 4},
              {"position": [5, -4, 0], "pointing_normal": [0, 1, 0], "m0": 4}],
      "users": [[10, 2, 0], [10, -2, 0]],
      "obstacles": [{"min": [2, -0.5, -1], "max": [12, 0.5, 1]}],
      "constants": {"kappa_dB": "inf", "direct_links": false}})");
    Scene s = build_scene(j);
    LosTable u(s);
    ReflectionPath a{1, {1}, 0.0}, b{2, {2}, 0.0}, c{2, {1}, 0.0};
    CHECK(check_path_separation(s, u, {a, b}));
    CHECK_FALSE(check_path_separation(s, u, {a, c})); // shared IRS
    RoutingSolution sol = optimal_multi_route(s, all_graphs(s));
    CHECK(sol.paths[0].irs == std::vector<int>{1});
    CHECK(sol.paths[1].irs == std::vector<int>{2});

    // Without the wall every IRS sees both users.
    j.erase("obstacles");
    Scene open = build_scene(j);
    CHECK_FALSE(check_path_separation(open, LosTable(open), {a, b}));
    CHECK_THROWS_AS(optimal_multi_route(open, all_graphs(open)), Infeasible);

    json r = routes_to_json(sol);
    CHECK(r.is_object());
}

TEST_CASE("route beams and the interference audit")
{
    Rng rng(109);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 10; ++t)
    {
        Scene s = gen::p2_instance(rng);
        if (gen::oracle_p2(s) < 0.0)
            continue;
        auto graphs = all_graphs(s);
        RoutingSolution sol = optimal_multi_route(s, graphs);
        ChannelSet full = synthesize_channels(s, t, ChannelScope::Admissible);
        BeamSolution beams = route_beams(full, s, sol);
        CHECK(beams.phases.unit_modulus());
        for (int k = 0; k < 2; ++k)
        {
            CHECK(beams.bs_beams[static_cast<size_t>(k)].norm() == doctest::Approx(1.0));
            // Pure LoS: the realized gain on the route is the closed form.
            double g = std::norm(beams.bs_beams[static_cast<size_t>(k)].dot(
                cascaded_path_channel(full, s, k + 1, sol.paths[static_cast<size_t>(k)].irs, beams.phases)));
            CHECK(gen::rel_err(g, sol.paths[static_cast<size_t>(k)].gain) < 1e-9);
        }
        InterferenceReport rep = interference_audit(s, full, sol, beams);
        REQUIRE(rep.sinr.size() == 2);
        for (int k = 0; k < 2; ++k)
        {
            double sig = rep.signal[static_cast<size_t>(k)], intf = rep.interference[static_cast<size_t>(k)];
            CHECK(rep.sinr[static_cast<size_t>(k)] ==
                  doctest::Approx(sig / (intf + s.constants.noise_mw())).epsilon(1e-9));
        }
        ++checked;
    }
    CHECK(checked == 10);

    Scene one = gen::chain_scene(rng, 2, 4, 4, 4);
    auto g1 = all_graphs(one);
    RoutingSolution sol = unconstrained_multi_route(one, g1);
    ChannelSet full = synthesize_channels(one, 1, ChannelScope::Admissible);
    InterferenceReport rep = interference_audit(one, full, sol, route_beams(full, one, sol));
    CHECK(rep.interference[0] == 0.0);
}

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

// Q Φ S Φ ... g written out hop by hop.
cvec oracle_path(const ChannelSet &c, const Scene &s, int k, const std::vector<int> &path, const PhaseConfig &ph)
{
    cvec v = c.H(path.back(), s.user_node(k));
    for (size_t i = path.size(); i-- > 0;)
    {
        int prev = i == 0 ? 0 : path[i - 1];
        v = c.H(prev, path[i]) * (ph.at(path[i]).asDiagonal() * v);
    }
    return v;
}

PhaseConfig random_config(Rng &rng, const Scene &s)
{
    PhaseConfig p = PhaseConfig::ones(s);
    for (int j = 1; j <= s.num_irs(); ++j)
        p.at(j) = gen::random_phases(rng, s.elements(j));
    return p;
}

Scene random_scene(Rng &rng, double kappa_dB, bool direct, int max_irs = 5)
{
    gen::SceneShape shape;
    shape.irs_max = max_irs;
    shape.obstacles_max = 2;
    shape.planar = false;
    shape.kappa_dB = kappa_dB;
    shape.direct_links = direct;
    shape.cols = 3;
    shape.rows = 2;
    return build_scene(gen::random_scene(rng, shape));
}

} // namespace

TEST_CASE("array response entries follow the element grid")
{
    ArraySpec a = make_array(4, 3, 0.5, vec3(1, 0, 0));
    vec3 dir = vec3(1, 2, 0.5).normalized();
    cvec r = array_response(a, dir);
    REQUIRE(r.size() == 12);
    for (int h = 0; h < 4; ++h)
        for (int v = 0; v < 3; ++v)
        {
            double phase = 2 * pi * 0.5 * (h * a.axis_h.dot(dir) + v * a.axis_v.dot(dir));
            CHECK(std::abs(r(h * 3 + v) - std::polar(1.0, phase)) < 1e-12);
        }
    CHECK((array_response(a, vec3(1, 0, 0)) - cvec::Ones(12)).norm() < 1e-12);
    CHECK_THROWS(array_response(a, vec3(2, 0, 0)));
}

TEST_CASE("path loss is beta d^-alpha")
{
    CHECK(path_loss(10.0, 2.0, 1e-3) == doctest::Approx(1e-5));
    CHECK(path_loss(4.0, 2.5, 1e-3) == doctest::Approx(1e-3 / 32.0));
}

TEST_CASE("unobstructed links at infinite kappa are rank one with path-loss magnitude")
{
    Rng rng(3);
    for (int t = 0; t < 30; ++t)
    {
        Scene s = random_scene(rng, infinity, true);
        ChannelSet c = synthesize_channels(s, 100 + t);
        for (const auto &[key, link] : c.links())
        {
            CHECK(link.matrix.rows() == s.elements(key.first));
            CHECK(link.matrix.cols() == s.elements(key.second));
            if (!link.has_los)
                continue; // blocked direct link, pure NLoS
            CHECK((link.matrix - link.los_component()).norm() < 1e-12 * link.matrix.norm() + 1e-300);
            CHECK(std::norm(link.rho) == doctest::Approx(link.path_loss).epsilon(1e-12));
            CHECK(numerical_rank(link.matrix) <= 1);
        }
    }
}

TEST_CASE("Rayleigh links have per-entry power equal to the path loss")
{
    Scene s = build_scene(json::parse(R"({
      "bs": {"position": [0, 0, 0], "antennas": 1},
      "irs": [{"position": [5, 2, 0], "pointing_normal": [0, -1, 0], "m0": 10},
              {"position": [25, -2, 0], "pointing_normal": [0, 1, 0], "m0": 10}],
      "users": [[30, 0, 0]], "constants": {"kappa_dB": "inf"}})"));
    LinkModel rayleigh{2.5, 0.0, false, true};
    double power = 0.0;
    const int draws = 40;
    for (int t = 0; t < draws; ++t)
    {
        ChannelSet c = synthesize_links(s, 7 + t, {{1, 2}}, {{{1, 2}, rayleigh}});
        power += c.H(1, 2).squaredNorm() / 10000.0;
        CHECK_FALSE(c.link(1, 2).has_los);
    }
    double pl = path_loss(s.distance(1, 2), 2.5, s.constants.beta());
    CHECK(power / draws == doctest::Approx(pl).epsilon(0.02));
}

TEST_CASE("cascaded path channel equals the explicit product")
{
    Rng rng(17);
    for (int t = 0; t < 60; ++t)
    {
        Scene s = random_scene(rng, 6.0, false);
        ChannelSet c = synthesize_channels(s, t);
        PhaseConfig ph = random_config(rng, s);
        for (const auto &p : enumerate_paths(build_los_graph(s, 1)))
        {
            cvec h = cascaded_path_channel(c, s, 1, p, ph);
            cvec o = oracle_path(c, s, 1, p, ph);
            CHECK((h - o).norm() <= 1e-12 * o.norm());
        }
    }
}

TEST_CASE("graph channel equals the direct link plus the brute-force path sum")
{
    Rng rng(19);
    int checked = 0;
    for (int t = 0; t < 60; ++t)
    {
        Scene s = random_scene(rng, 3.0, true, 6);
        for (ChannelScope scope : {ChannelScope::LosGraph, ChannelScope::Admissible})
        {
            ChannelSet c = synthesize_channels(s, 1000 + t, scope);
            LoSGraph g = scope == ChannelScope::LosGraph ? build_los_graph(s, 1) : build_admissible_graph(s, 1);
            PhaseConfig ph = random_config(rng, s);
            cvec sum = c.direct(s.user_node(1));
            for (const auto &p : enumerate_paths(g))
                sum += oracle_path(c, s, 1, p, ph);
            cvec h = graph_channel(c, s, g, ph);
            CHECK((h - sum).norm() <= 1e-10 * sum.norm());
            ++checked;
        }
        ChannelSet c = synthesize_channels(s, 1000 + t);
        PhaseConfig ph = random_config(rng, s);
        cvec e = effective_channel(c, s, 1, ph, true);
        CHECK((e - graph_channel(c, s, build_los_graph(s, 1), ph)).norm() <= 1e-12 * e.norm());
    }
    CHECK(checked == 120);
}

TEST_CASE("affine form reproduces the graph channel for any phase of the chosen IRS")
{
    Rng rng(23);
    for (int t = 0; t < 40; ++t)
    {
        Scene s = random_scene(rng, 10.0, true, 5);
        ChannelSet c = synthesize_channels(s, 50 + t);
        LoSGraph g = build_los_graph(s, 1);
        PhaseConfig ph = random_config(rng, s);
        for (int j = 1; j <= s.num_irs(); ++j)
        {
            AffineForm f = irs_affine_form(c, s, g, ph, j);
            PhaseConfig q = ph;
            q.at(j) = gen::random_phases(rng, s.elements(j));
            cvec h = graph_channel(c, s, g, q);
            CHECK((f.h_rest + f.A * q.at(j) - h).norm() <= 1e-10 * (h.norm() + 1e-300));
        }
    }
}

TEST_CASE("link substreams: same seed same channel, independent of the other links")
{
    Rng rng(29);
    Scene s = random_scene(rng, 5.0, true, 6);
    ChannelSet a = synthesize_channels(s, 77);
    ChannelSet b = synthesize_channels(s, 77);
    ChannelSet d = synthesize_channels(s, 78);
    std::vector<std::pair<int, int>> some;
    for (const auto &[key, link] : a.links())
    {
        CHECK(link.matrix == b.H(key.first, key.second));
        if (some.size() < 2)
            some.push_back(key);
    }
    REQUIRE_FALSE(some.empty());
    ChannelSet sub = synthesize_links(s, 77, some);
    for (const auto &key : some)
    {
        CHECK(sub.H(key.first, key.second) == a.H(key.first, key.second));
        CHECK(d.H(key.first, key.second) != a.H(key.first, key.second));
    }
}

TEST_CASE("channel JSON round trip")
{
    Rng rng(31);
    Scene s = random_scene(rng, 7.0, true);
    ChannelSet c = synthesize_channels(s, 5);
    ChannelSet r = channels_from_json(channels_to_json(c));
    CHECK(r.links().size() == c.links().size());
    CHECK(r.num_bs_antennas() == c.num_bs_antennas());
    for (const auto &[key, link] : c.links())
        CHECK((r.H(key.first, key.second) - link.matrix).norm() <= 1e-15 * link.matrix.norm());
}

TEST_CASE("phase configurations start at unit modulus")
{
    Rng rng(37);
    Scene s = random_scene(rng, 7.0, true);
    PhaseConfig p = PhaseConfig::ones(s);
    CHECK(p.unit_modulus());
    p.at(1)(0) = 0.5;
    CHECK_FALSE(p.unit_modulus());
}

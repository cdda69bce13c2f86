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

// p h_k^H (p Σ_{j≠k} h_j h_j^H + σ² I)^{-1} h_k
double oracle_mmse_sinr(const cmat &H, int k, double p, double s2)
{
    cmat R = s2 * cmat::Identity(H.rows(), H.rows());
    for (int j = 0; j < H.cols(); ++j)
        if (j != k)
            R += p * H.col(j) * H.col(j).adjoint();
    return std::real(p * H.col(k).dot(R.ldlt().solve(H.col(k))));
}

double uplink_sinr(const cmat &H, const cvec &w, int k, double p, double s2)
{
    double sig = p * std::norm(w.dot(H.col(k)));
    double intf = 0.0;
    for (int j = 0; j < H.cols(); ++j)
        if (j != k)
            intf += p * std::norm(w.dot(H.col(j)));
    return sig / (intf + s2 * w.squaredNorm());
}

} // namespace

TEST_CASE("closed-form multi-hop gain equals the numerical |w^H h|^2")
{
    Rng rng(41);
    for (int n = 1; n <= 3; ++n)
        for (int t = 0; t < 100; ++t)
        {
            auto c = gen::closed_form_case(rng, n);
            CHECK(gen::rel_err(c.numeric, c.closed) < 1e-9);
        }
}

TEST_CASE("per-link path gain matches the oracle and routing weights")
{
    Rng rng(43);
    for (int t = 0; t < 50; ++t)
    {
        int n = gen::uniform_int(rng, 1, 4);
        Scene s = gen::chain_scene(rng, n, 3, 4, 2);
        auto path = gen::iota_path(n);
        CHECK(gen::rel_err(path_gain(s, 1, path), gen::oracle_gain(s, 1, path)) < 1e-12);
        CHECK(gen::rel_err(std::exp(-path_weight(s, 1, path)) * s.bs.array.size(), path_gain(s, 1, path)) < 1e-9);
    }
}

TEST_CASE("double-reflection phases reach the l1 bound and beat random phases")
{
    Rng rng(47);
    for (int t = 0; t < 50; ++t)
    {
        int m = gen::uniform_int(rng, 1, 16);
        cvec v1 = complex_gaussian(rng, m, 1), v2 = complex_gaussian(rng, m, 1);
        cplx rho = std::polar(0.01, 1.3);
        auto [p1, p2] = optimal_double_reflection_phases(v1, v2);
        double g = std::norm(rho * (v1.array() * p1.array()).sum() * (v2.array() * p2.array()).sum());
        double bound = double_reflection_gain(rho, v1, v2);
        CHECK(gen::rel_err(g, bound) < 1e-12);
        CHECK(bound == doctest::Approx(std::norm(rho) * std::pow(v1.cwiseAbs().sum() * v2.cwiseAbs().sum(), 2)));
        for (int r = 0; r < 20; ++r)
        {
            cvec q1 = gen::random_phases(rng, m), q2 = gen::random_phases(rng, m);
            CHECK(std::norm(rho * (v1.array() * q1.array()).sum() * (v2.array() * q2.array()).sum()) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("common phase shift adds the magnitudes")
{
    Rng rng(53);
    for (int t = 0; t < 50; ++t)
    {
        cplx as(gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1));
        cplx ad(gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1));
        double th0 = common_phase_combine(as, ad);
        double v = std::abs(std::polar(1.0, th0) * as + std::polar(1.0, 2 * th0) * ad);
        CHECK(v == doctest::Approx(std::abs(as) + std::abs(ad)));
        double grid = 0.0;
        for (int i = 0; i < 4096; ++i)
        {
            double th = 2 * pi * i / 4096;
            grid = std::max(grid, std::abs(std::polar(1.0, th) * as + std::polar(1.0, 2 * th) * ad));
        }
        CHECK(grid <= v * (1 + 1e-12));
        CHECK(grid >= v * (1 - 1e-5));
    }
}

TEST_CASE("path plus direct link: closed form equals the numerical combination")
{
    Rng rng(59);
    int checked = 0;
    for (int t = 0; t < 40; ++t)
    {
        int n = gen::uniform_int(rng, 1, 3);
        Scene s = gen::chain_scene(rng, n, gen::uniform_int(rng, 1, 6), 4, 3);
        s.constants.direct_links = true;
        if (los_indicator(s, 0, s.user_node(1)) == 0)
            continue;
        ChannelSet c = synthesize_channels(s, t);
        auto path = gen::iota_path(n);
        DirectCombining d = combine_path_with_direct(c, s, 1, path, PhaseConfig::ones(s));
        double closed = path_gain_with_direct(path_gain(s, 1, path), c.direct(s.user_node(1)), c.link(0, 1).resp_from);
        CHECK(gen::rel_err(d.gain, closed) < 1e-9);
        cvec h = c.direct(s.user_node(1)) + cascaded_path_channel(c, s, 1, path, d.phases);
        CHECK(gen::rel_err(std::norm(d.w.dot(h)), d.gain) < 1e-9);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("AO on a single IRS reaches the coherent optimum")
{
    Rng rng(61);
    for (int t = 0; t < 20; ++t)
    {
        Scene s = gen::chain_scene(rng, 1, 1, 4, 4);
        s.constants.kappa_dB = 0.0;
        ChannelSet c = synthesize_channels(s, 300 + t);
        LoSGraph g = build_los_graph(s, 1);
        PhaseConfig init = PhaseConfig::ones(s);
        init.at(1) = gen::random_phases(rng, 16);
        AoResult r = ao_joint_beamforming(c, s, g, init);
        double oracle = std::pow((c.H(0, 1).row(0).transpose().cwiseProduct(c.H(1, 2).col(0))).cwiseAbs().sum(), 2);
        CHECK(gen::rel_err(r.solution.gains[0], oracle) < 1e-9);
    }
}

TEST_CASE("AO objective is monotone and beats random phase samples")
{
    Rng rng(67);
    gen::SceneShape shape;
    shape.irs_min = 2;
    shape.irs_max = 4;
    shape.cols = 3;
    shape.rows = 3;
    shape.kappa_dB = 3.0;
    shape.direct_links = true;
    int checked = 0;
    for (int t = 0; t < 40 && checked < 15; ++t)
    {
        Scene s = build_scene(gen::random_scene(rng, shape));
        LoSGraph g = build_los_graph(s, 1);
        if (enumerate_paths(g).empty())
            continue;
        ChannelSet c = synthesize_channels(s, t);
        AoResult r = ao_joint_beamforming(c, s, g, PhaseConfig::ones(s));
        for (size_t i = 1; i < r.history.size(); ++i)
            CHECK(r.history[i] >= r.history[i - 1] * (1 - 1e-12));
        CHECK(r.solution.phases.unit_modulus());
        double best_random = 0.0;
        for (int i = 0; i < 1000; ++i)
        {
            PhaseConfig p = PhaseConfig::ones(s);
            for (int j = 1; j <= s.num_irs(); ++j)
                p.at(j) = gen::random_phases(rng, s.elements(j));
            best_random = std::max(best_random, graph_channel(c, s, g, p).squaredNorm());
        }
        CHECK(r.solution.gains[0] >= best_random);
        CHECK(gen::rel_err(r.solution.gains[0], graph_channel(c, s, g, r.solution.phases).squaredNorm()) < 1e-9);
        ++checked;
    }
    CHECK(checked == 15);
}

TEST_CASE("ZF and MMSE receivers")
{
    Rng rng(71);
    const double p = 1.0, s2 = 0.1;
    for (int t = 0; t < 50; ++t)
    {
        int nb = gen::uniform_int(rng, 2, 8);
        int K = gen::uniform_int(rng, 1, nb);
        cmat H = complex_gaussian(rng, nb, K);
        ReceiverResult zf = linear_receivers(H, p, s2, Receiver::ZF);
        ReceiverResult mm = linear_receivers(H, p, s2, Receiver::MMSE);
        CHECK_FALSE(zf.rank_deficient);
        for (int k = 0; k < K; ++k)
        {
            CHECK(zf.W.col(k).norm() == doctest::Approx(1.0));
            for (int j = 0; j < K; ++j)
                if (j != k)
                    CHECK(std::abs(zf.W.col(k).dot(H.col(j))) < 1e-9 * H.norm());
            CHECK(gen::rel_err(zf.sinr[k], uplink_sinr(H, zf.W.col(k), k, p, s2)) < 1e-9);
            CHECK(gen::rel_err(mm.sinr[k], oracle_mmse_sinr(H, k, p, s2)) < 1e-9);
            CHECK(mm.sinr[k] >= zf.sinr[k] * (1 - 1e-9));
        }
    }

    // One user: all three receivers reduce to MRT.
    cmat h = complex_gaussian(rng, 4, 1);
    for (Receiver r : {Receiver::ZF, Receiver::MMSE, Receiver::MRT})
        CHECK(linear_receivers(h, p, s2, r).sinr[0] == doctest::Approx(p * h.squaredNorm() / s2));

    // Rank-one channel of three users: ZF is flagged, MMSE still works.
    cmat a = complex_gaussian(rng, 4, 1);
    cmat r1 = a * complex_gaussian(rng, 1, 3);
    CHECK(linear_receivers(r1, p, s2, Receiver::ZF).rank_deficient);
    ReceiverResult m1 = linear_receivers(r1, p, s2, Receiver::MMSE);
    for (int k = 0; k < 3; ++k)
        CHECK(std::isfinite(m1.sinr[k]));
}

TEST_CASE("downlink SINR formula")
{
    Rng rng(73);
    std::vector<cvec> h, w;
    for (int k = 0; k < 3; ++k)
    {
        h.push_back(complex_gaussian(rng, 4, 1));
        w.push_back(bs_mrt(complex_gaussian(rng, 4, 1)));
    }
    auto s = downlink_sinrs(h, w, 2.0, 0.5);
    for (int k = 0; k < 3; ++k)
    {
        double intf = 0.0;
        for (int j = 0; j < 3; ++j)
            if (j != k)
                intf += 2.0 * std::norm(w[j].dot(h[k]));
        CHECK(s[k] == doctest::Approx(2.0 * std::norm(w[k].dot(h[k])) / (intf + 0.5)));
    }
}

TEST_CASE("second IRS with a rich BS link raises the channel rank")
{
    Rng rng(79);
    const int nb = 8, m = 16, K = 4;
    cmat q01 = complex_gaussian(rng, nb, 1) * complex_gaussian(rng, 1, m); // LoS: rank one
    cmat q02 = complex_gaussian(rng, nb, m);                               // Rayleigh
    cmat g1 = complex_gaussian(rng, m, K), g2 = complex_gaussian(rng, m, K);
    cvec th1 = gen::random_phases(rng, m), th2 = gen::random_phases(rng, m);
    cmat single = q01 * th1.asDiagonal() * g1;
    cmat dbl = single + q02 * th2.asDiagonal() * g2;
    RankReport r = channel_rank_gain_check(g2, q02, single, dbl);
    CHECK(r.rank_single == 1);
    CHECK(r.rank_double == K);
    CHECK(r.holds);
    CHECK(numerical_rank(cmat::Zero(3, 3)) == 0);
}

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

TEST_CASE("pilot overhead formulas")
{
    for (long long nb : {400LL, 401LL, 800LL, 4000LL})
        CHECK(overhead_double_irs_single_user(400, nb) == 1200);
    CHECK(overhead_double_irs_single_user(400, 40) == 4800);
    CHECK(overhead_double_irs_single_user(400, 399) == 800 + 402);
    CHECK(overhead_double_irs_single_user(10, 3) == 20 + 34);
    for (long long nb = 800; nb <= 2000; nb += 40)
        CHECK(overhead_multi_user_extra(400, nb, 5) == 4);
    CHECK(overhead_multi_user_extra(400, 40, 5) == 80);
    CHECK(overhead_multi_user_extra(400, 40, 1) == 0);
    CHECK(overhead_benchmark_siso_general(400) == 160000);

    long long last = overhead_double_irs_single_user(400, 1);
    for (long long nb = 2; nb <= 1000; ++nb)
    {
        long long v = overhead_double_irs_single_user(400, nb);
        CHECK(v <= last);
        last = v;
    }
}

TEST_CASE("DFT training design")
{
    const int M = 5;
    auto d = dft_training_design(M);
    REQUIRE(d.size() == 25);
    for (int t = 0; t < 25; ++t)
    {
        CHECK((d[static_cast<size_t>(t)].phi1 - dft_row(M, t % M)).norm() < 1e-14);
        CHECK((d[static_cast<size_t>(t)].phi2 - dft_row(M, t / M)).norm() < 1e-14);
    }
    for (int m = 0; m < M; ++m)
        CHECK(std::abs(dft_row(M, 2)(m) - std::polar(1.0, -2 * pi * 2 * m / M)) < 1e-14);
}

TEST_CASE("noiseless LS recovers the cascaded channel exactly")
{
    Rng rng(301);
    for (int M = 1; M <= 8; ++M)
        for (int t = 0; t < 3; ++t)
            CHECK(gen::ls_nmse(rng, M, 0.0) < 1e-20);

    cmat S = complex_gaussian(rng, 3, 3);
    auto d = dft_training_design(3);
    d.pop_back();
    cvec y(8);
    for (int t = 0; t < 8; ++t)
        y(t) = cascaded_observation(S, d[static_cast<size_t>(t)].phi1, d[static_cast<size_t>(t)].phi2);
    CHECK_THROWS_AS(ls_estimate_cascaded_siso(d, y, 3), EstimationError);
}

TEST_CASE("LS error falls as 1/SNR")
{
    Rng rng(307);
    CHECK(gen::ls_nmse_slope(rng, 4, 200) == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("cascaded observation and SISO cascade")
{
    Rng rng(311);
    cvec q = complex_gaussian(rng, 4, 1), g = complex_gaussian(rng, 4, 1);
    cmat S = complex_gaussian(rng, 4, 4);
    cmat C = cascaded_siso_channel(q, S, g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(C(i, j) - q(i) * S(i, j) * g(j)) < 1e-14);
    cvec p1 = gen::random_phases(rng, 4), p2 = gen::random_phases(rng, 4);
    cplx direct = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            direct += p1(i) * S(i, j) * p2(j);
    CHECK(std::abs(cascaded_observation(S, p1, p2) - direct) < 1e-12);
}

TEST_CASE("decoupled LoS estimation from 2M pilots")
{
    Rng rng(313);
    for (int M : {2, 4, 8, 16})
    {
        cvec v1 = complex_gaussian(rng, M, 1), v2 = complex_gaussian(rng, M, 1);
        Observer los = [&](const cvec &a, const cvec &b) {
            return (v1.array() * a.array()).sum() * (v2.array() * b.array()).sum();
        };
        DecoupledEstimate e = ls_estimate_los_decoupled(los, M);
        CHECK(e.pilots == 2 * M);
        CHECK(std::abs(std::arg(e.v1(0))) < 1e-12);
        for (int t = 0; t < 20; ++t)
        {
            cvec a = gen::random_phases(rng, M), b = gen::random_phases(rng, M);
            CHECK(std::abs(e.predict(a, b) - los(a, b)) < 1e-9 * std::abs(los(a, b)) + 1e-12);
        }
        // The product channel is unique, the split is not.
        cmat P = e.v1 * e.v2.transpose(), T = v1 * v2.transpose();
        CHECK((P - T).norm() < 1e-9 * T.norm());

        cmat S = complex_gaussian(rng, M, M);
        Observer rich = [&](const cvec &a, const cvec &b) { return cascaded_observation(S, a, b); };
        CHECK_THROWS_AS(ls_estimate_los_decoupled(rich, M), EstimationError);
    }
}

TEST_CASE("double-IRS channel in cascaded form")
{
    Rng rng(317);
    const int nb = 4, M = 6;
    cmat H01 = complex_gaussian(rng, nb, M), H02 = complex_gaussian(rng, nb, M), S12 = complex_gaussian(rng, M, M);
    cvec g1 = complex_gaussian(rng, M, 1), g2 = complex_gaussian(rng, M, 1), f = complex_gaussian(rng, nb, 1);
    DoubleIrsCascade c = cascaded_forms(H01, H02, S12, g1, g2);
    CHECK(c.near_zero.empty());
    CHECK((c.R1 - H01 * g1.asDiagonal()).norm() < 1e-12);
    CHECK((c.S_bar - S12 * g2.asDiagonal()).norm() < 1e-12);
    for (int m = 0; m < M; ++m)
        CHECK((c.R1 * c.a[static_cast<size_t>(m)].asDiagonal() - c.S_tilde[static_cast<size_t>(m)]).norm() <
              1e-10 * c.S_tilde[static_cast<size_t>(m)].norm());
    for (int t = 0; t < 10; ++t)
    {
        cvec p1 = gen::random_phases(rng, M), p2 = gen::random_phases(rng, M);
        cvec a = double_irs_channel(f, H01, H02, S12, g1, g2, p1, p2);
        cvec b = double_irs_channel(f, c, p1, p2);
        CHECK((a - b).norm() < 1e-10 * a.norm());
        cvec o = f + H01 * p1.asDiagonal() * g1 + H02 * p2.asDiagonal() * g2 +
                 H01 * p1.asDiagonal() * S12 * p2.asDiagonal() * g2;
        CHECK((a - o).norm() < 1e-10 * o.norm());
    }
    g1(2) = 0.0;
    CHECK(cascaded_forms(H01, H02, S12, g1, g2).near_zero == std::vector<int>{2});
}

TEST_CASE("user scaling vector")
{
    Rng rng(331);
    cvec ref = complex_gaussian(rng, 5, 1), gk = complex_gaussian(rng, 5, 1);
    ref(3) = 0.0;
    ScalingVector s = user_scaling_vector(ref, gk);
    CHECK(s.near_zero == std::vector<int>{3});
    CHECK(s.b(3) == cplx(0.0, 0.0));
    for (int m : {0, 1, 2, 4})
        CHECK(std::abs(ref(m) * s.b(m) - gk(m)) < 1e-12);
}

TEST_CASE("NMSE")
{
    cmat t = cmat::Identity(2, 2);
    cmat e = t;
    e(0, 0) = 1.1;
    CHECK(nmse(e, t) == doctest::Approx(0.01 / 2.0));
    CHECK(nmse(t, t) == 0.0);
}

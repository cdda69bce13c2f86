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

#ifndef IRSNET_ESTIMATION_HPP
#define IRSNET_ESTIMATION_HPP

#include "irsnet/common.hpp"

#include <functional>
#include <vector>

namespace irsnet
{

struct EstimationError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Minimum pilot counts.
long long overhead_double_irs_single_user(long long M, long long n_b); // 2M + max(M, ceil(M^2/N_B))
long long overhead_multi_user_extra(long long M, long long n_b, long long K); // max(K-1, ceil(2(K-1)M/N_B))
long long overhead_benchmark_siso_general(long long M); // M^2

struct TrainingPair
{
    cvec phi1;
    cvec phi2;
};

// Row n of the M-point DFT matrix: exp(-j2π n m / M), m = 0..M-1.
cvec dft_row(int M, int n);

// All M^2 pairs (DFT row a for IRS 1, DFT row b for IRS 2), a fastest.
std::vector<TrainingPair> dft_training_design(int M);

// φ1^T S φ2
cplx cascaded_observation(const cmat &S, const cvec &phi1, const cvec &phi2);

// diag(q) S diag(g)
cmat cascaded_siso_channel(const cvec &q, const cmat &S, const cvec &g);

// Least squares for y_t = (φ2_t ⊗ φ1_t)^T vec(S) + n_t, vec column-major.
cmat ls_estimate_cascaded_siso(const std::vector<TrainingPair> &training, const cvec &y, int M);

struct DecoupledEstimate
{
    cvec v1;          // v1(0) has phase 0
    cvec v2;
    int pilots = 0;   // 2M
    double residual = 0.0;

    cplx predict(const cvec &phi1, const cvec &phi2) const
    {
        return (v1.array() * phi1.array()).sum() * (v2.array() * phi2.array()).sum();
    }
};

using Observer = std::function<cplx(const cvec &phi1, const cvec &phi2)>;

// Rank-one factorization h = (v1^T φ1)(v2^T φ2) from 2M pilots: IRS 2 held at all-ones while IRS 1
// sweeps DFT rows, then the reverse. `validation` extra pilots check the fit; a relative residual above
// `tol` raises EstimationError.
DecoupledEstimate ls_estimate_los_decoupled(const Observer &observe, int M, double tol = 1e-6, int validation = -1);

// Cascaded forms of the double-IRS channel for one user.
struct DoubleIrsCascade
{
    cmat R1;                  // H01 diag(g1)
    cmat R2;                  // H02 diag(g2)
    cmat S_bar;               // S12 diag(g2)
    std::vector<cmat> S_tilde; // H01 diag(s̄_m)
    std::vector<cvec> a;       // diag(g1)^{-1} s̄_m
    std::vector<int> near_zero; // indices m with |g1(m)| below tolerance
};

DoubleIrsCascade cascaded_forms(const cmat &H01, const cmat &H02, const cmat &S12, const cvec &g1, const cvec &g2,
                                double zero_tol = 1e-12);

// f + H01 Φ1 g1 + H02 Φ2 g2 + H01 Φ1 S12 Φ2 g2
cvec double_irs_channel(const cvec &f, const cmat &H01, const cmat &H02, const cmat &S12, const cvec &g1,
                        const cvec &g2, const cvec &phi1, const cvec &phi2);

// f + R1 φ1 + R2 φ2 + Σ_m R1 diag(a_m) φ1 φ2,m
cvec double_irs_channel(const cvec &f, const DoubleIrsCascade &c, const cvec &phi1, const cvec &phi2);

// b = diag(g_ref)^{-1} g_k; entries where |g_ref| is below tolerance are set to 0 and listed.
struct ScalingVector
{
    cvec b;
    std::vector<int> near_zero;
};

ScalingVector user_scaling_vector(const cvec &g_ref, const cvec &g_k, double zero_tol = 1e-12);

double nmse(const cmat &estimate, const cmat &truth);

} // namespace irsnet

#endif

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

#ifndef IRSNET_BEAMFORMING_HPP
#define IRSNET_BEAMFORMING_HPP

#include "irsnet/channel.hpp"

#include <vector>

namespace irsnet
{

struct BeamSolution
{
    PhaseConfig phases;
    std::vector<cvec> bs_beams;        // w_{B,k}, unit norm
    std::vector<double> gains;         // |w_k^H h_k|^2
    std::vector<double> sinrs;         // linear
};

// φ_i = exp(-j∠v_i) elementwise. A zero entry gets phase 0.
std::pair<cvec, cvec> optimal_double_reflection_phases(const cvec &v1, const cvec &v2);

// |ρ|^2 ||v1||_1^2 ||v2||_1^2
double double_reflection_gain(cplx rho, const cvec &v1, const cvec &v2);

// Closed-form passive beams along a pure-LoS path: each IRS cancels the phases of its incoming and
// outgoing array responses. IRSs outside the path keep their entries from `base`.
PhaseConfig multi_hop_phases(const ChannelSet &channels, const Scene &scene, int k, const std::vector<int> &path,
                             PhaseConfig base);

cvec bs_mrt(const cvec &q);
cvec bs_mrt_to_first_irs(const ChannelSet &channels, int first_irs);

double closed_form_path_gain(int n, double M, double n_b, double beta, const std::vector<double> &distances);

// Per-link version of the closed form for a scene: N_B ∏ M_{a_i}^2 ∏ PL(a_i, a_{i+1}) with the
// path-loss exponents of the LoS link classes. Equals the formula above when every α = 2.
double path_gain(const Scene &scene, int k, const std::vector<int> &path);

// ||f||^2 + G + 2 sqrt(G / N_B) |q̃^H f|
double path_gain_with_direct(double path_gain_value, const cvec &f, const cvec &q_tilde);

struct DirectCombining
{
    double gain = 0.0;
    PhaseConfig phases;
    cvec w;
};

// Numerical realization: closed-form path phases, a common phase shift on the first IRS that aligns
// the path channel with f, then MRT on the effective channel.
DirectCombining combine_path_with_direct(const ChannelSet &channels, const Scene &scene, int k,
                                         const std::vector<int> &path, const PhaseConfig &base);

// θ = ∠(a_s / a_d); then |e^{jθ} a_s + e^{j2θ} a_d| = |a_s| + |a_d|.
double common_phase_combine(cplx a_s, cplx a_d);

struct AoOptions
{
    double tol = 1e-10;
    int max_iters = 500;
    int restarts = 0;          // extra random initializations, best result kept
    std::uint64_t seed = 0;
    bool include_direct = true;
};

struct AoResult
{
    BeamSolution solution;
    std::vector<double> history; // objective after each iteration
    int iterations = 0;
    bool converged = false;
};

// Single-user AO over the IRSs of graph g: MRT at the BS, then per-element phase alignment IRS by IRS.
AoResult ao_joint_beamforming(const ChannelSet &channels, const Scene &scene, const LoSGraph &g,
                              const PhaseConfig &init, const AoOptions &opt = {});

enum class Receiver
{
    ZF,
    MMSE,
    MRT
};

struct ReceiverResult
{
    cmat W;                    // N_B x K, unit-norm columns
    std::vector<double> sinr;  // per user
    bool rank_deficient = false;
};

// Uplink linear receivers for H = [h_1 ... h_K] with per-user transmit power p and noise sigma2.
ReceiverResult linear_receivers(const cmat &H, double p, double sigma2, Receiver type);

// Downlink SINR of user k: p |w_k^H h_k|^2 / (p Σ_{j≠k} |w_j^H h_k|^2 + σ²).
std::vector<double> downlink_sinrs(const std::vector<cvec> &h, const std::vector<cvec> &w, double p, double sigma2);

int numerical_rank(const cmat &m, double rel_tol = 1e-9);

struct RankReport
{
    int rank_g2 = 0;
    int rank_q02 = 0;
    int rank_single = 0;
    int rank_double = 0;
    int bound = 0;        // min(rank G_2, rank Q_{0,2}) capped at K - rank_single
    bool holds = false;
};

RankReport channel_rank_gain_check(const cmat &g2, const cmat &q02, const cmat &h_single, const cmat &h_double);

} // namespace irsnet

#endif

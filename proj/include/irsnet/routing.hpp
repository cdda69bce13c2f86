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

#ifndef IRSNET_ROUTING_HPP
#define IRSNET_ROUTING_HPP

#include "irsnet/beamforming.hpp"

#include <functional>
#include <limits>

namespace irsnet
{

struct ReflectionPath
{
    int user = 1;
    std::vector<int> irs;  // a_1..a_n
    double gain = 0.0;     // linear

    int hops() const { return static_cast<int>(irs.size()); }
};

struct RoutingSolution
{
    std::vector<ReflectionPath> paths; // one per user, in user order
    double objective = 0.0;            // min over users of the path gain
    bool separation_ok = false;
};

// w(i,j) = -ln PL(i,j) - 2 ln M_j when j is an IRS, -ln PL(i,j) into the user.
// With α = 2 this is 2 ln d - ln β - 2 ln M (resp. 2 ln d - ln β).
double edge_weight(double d, double M, double beta, bool into_irs);
double edge_weight(const Scene &scene, int i, int j);
double path_weight(const Scene &scene, int k, const std::vector<int> &path);

// (P1) by Bellman-Ford. Ties (relative 1e-12) go to fewer hops, then the lexicographically smaller sequence.
ReflectionPath optimal_single_route(const Scene &scene, const LoSGraph &g);

std::vector<ReflectionPath> enumerate_routes(const Scene &scene, const LoSGraph &g, size_t max_paths = 0);

// Strict ordering used for (P1) ties: larger gain, then fewer hops, then lexicographic.
bool route_better(const ReflectionPath &a, const ReflectionPath &b);

// Argmax of the coherent path + direct gain over all paths. Returns an empty path (direct only)
// when no reflection path exists but f_k is nonzero.
ReflectionPath optimal_single_route_with_direct(const Scene &scene, const LoSGraph &g, const ChannelSet &channels);

// Paths share no IRS, and no non-BS node of one path has LoS (either direction) with a node of another.
bool check_path_separation(const Scene &scene, const LosTable &u, const std::vector<ReflectionPath> &paths);

using RouteGain = std::function<double(int k, const std::vector<int> &path)>;

struct MultiRouteOptions
{
    size_t budget = std::numeric_limits<size_t>::max(); // candidate paths kept per user and level
    RouteGain gain;                                     // default: path_gain; paths with gain <= 0 are unusable
};

// (P2): max-min path gain subject to path separation, by recursive partial enumeration with
// branch-and-bound. Exact when budget is unlimited.
RoutingSolution optimal_multi_route(const Scene &scene, const std::vector<LoSGraph> &graphs,
                                    const MultiRouteOptions &opt = {});

// Every user on its own (P1) route, no separation constraint.
RoutingSolution unconstrained_multi_route(const Scene &scene, const std::vector<LoSGraph> &graphs,
                                          const RouteGain &gain = {});

// Phases along the selected routes. An IRS on several routes follows the lowest-index user; unused IRSs
// reflect with all-ones phases.
BeamSolution route_beams(const ChannelSet &channels, const Scene &scene, const RoutingSolution &sol);

struct InterferenceReport
{
    std::vector<double> signal;          // p |w_k^H h_k|^2, mW
    std::vector<double> interference;    // p Σ_{j≠k} |w_j^H h_k|^2, mW
    std::vector<double> interference_to_noise_dB;
    std::vector<double> sinr;
};

// Received interference on the full channel (all admissible reflection paths plus direct links).
InterferenceReport interference_audit(const Scene &scene, const ChannelSet &full_channels,
                                      const RoutingSolution &sol, const BeamSolution &beams);

nlohmann::json routes_to_json(const RoutingSolution &sol);

} // namespace irsnet

#endif

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

#ifndef IRSNET_CHANNEL_HPP
#define IRSNET_CHANNEL_HPP

#include "irsnet/scene.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace irsnet
{

// Array steering vector for a plane wave leaving (or arriving from) unit direction `dir`.
// Entry m = h * rows + v is exp(j 2π s (h axis_h + v axis_v) · dir) with s the spacing in wavelengths.
cvec array_response(const ArraySpec &array, const vec3 &dir);

// Response of an arbitrary node (BS/IRS array, or the scalar 1 for a user) towards `dir`.
cvec node_response(const Scene &scene, int node, const vec3 &dir);

double path_loss(double d, double alpha, double beta);

// Statistical model of one link: exponent, Rician factor (linear, may be +inf) and LoS presence.
struct LinkModel
{
    double alpha = 2.0;
    double kappa = infinity;
    bool los = true;
    bool active = true; // false: channel is identically zero
};

LinkModel link_model(const Scene &scene, int i, int j);

// H_{i,j} has one row per element of i and one column per element of j, so that
// h = Q_{0,a1} Φ_{a1} S_{a1,a2} ... Φ_{an} g_{an,user} composes left to right.
struct LinkChannel
{
    int from = 0;
    int to = 0;
    double distance = 0.0;
    double path_loss = 0.0;   // linear
    double kappa = infinity;
    bool has_los = false;
    cplx rho{0.0, 0.0};       // sqrt(PL κ/(1+κ)) e^{-j2πd/λ}; zero without LoS
    cvec resp_from;           // array response of `from` towards `to`
    cvec resp_to;             // array response of `to` towards `from`
    double nlos_scale = 0.0;  // sqrt(PL/(1+κ))
    cmat matrix;

    cmat los_component() const { return rho * resp_from * resp_to.transpose(); }
};

LinkChannel synth_link(const Scene &scene, int i, int j, Rng &rng);
LinkChannel synth_link(const Scene &scene, int i, int j, const LinkModel &model, Rng &rng);

// Deterministic part of a link (matrix = LoS component). A port without an array is a single antenna
// at the node's reference point, which is how IRS controllers are modelled.
LinkChannel link_statistics(const Scene &scene, int i, int j, const LinkModel &model, bool array_from = true,
                            bool array_to = true);

// Same LoS part as `link`, fresh NLoS realization.
cmat redraw_fading(const LinkChannel &link, Rng &rng);

enum class ChannelScope
{
    LosGraph,   // edges of every user's LoS graph, plus direct links
    Admissible  // every admissible reflection link (blocked ones as pure NLoS), plus direct links
};

class ChannelSet
{
  public:
    ChannelSet() = default;

    bool contains(int i, int j) const { return links_.count({i, j}) > 0; }
    const LinkChannel &link(int i, int j) const;
    const cmat &H(int i, int j) const { return link(i, j).matrix; }
    cvec direct(int k_node) const; // f_k, zero when absent
    void insert(LinkChannel link);

    const std::map<std::pair<int, int>, LinkChannel> &links() const { return links_; }
    std::uint64_t seed() const { return seed_; }
    void set_seed(std::uint64_t s) { seed_ = s; }
    int num_bs_antennas() const { return n_b_; }
    void set_num_bs_antennas(int n) { n_b_ = n; }

  private:
    std::map<std::pair<int, int>, LinkChannel> links_;
    std::uint64_t seed_ = 0;
    int n_b_ = 1;
};

// Each link draws from its own substream derived from (seed, i, j).
ChannelSet synthesize_channels(const Scene &scene, std::uint64_t seed, ChannelScope scope = ChannelScope::LosGraph,
                               const std::map<std::pair<int, int>, LinkModel> &overrides = {});

ChannelSet synthesize_links(const Scene &scene, std::uint64_t seed, const std::vector<std::pair<int, int>> &links,
                            const std::map<std::pair<int, int>, LinkModel> &overrides = {});

std::vector<std::pair<int, int>> scope_links(const Scene &scene, ChannelScope scope);

// Per-IRS phase vectors θ_j (index j-1). Unit modulus.
struct PhaseConfig
{
    std::vector<cvec> theta;

    static PhaseConfig ones(const Scene &scene);
    cvec &at(int irs_node) { return theta.at(static_cast<size_t>(irs_node - 1)); }
    const cvec &at(int irs_node) const { return theta.at(static_cast<size_t>(irs_node - 1)); }
    bool unit_modulus(double tol = 1e-9) const;
};

// Eq. (1) composition along one reflection path (IRS sequence, non-empty).
cvec cascaded_path_channel(const ChannelSet &channels, const Scene &scene, int k, const std::vector<int> &path,
                           const PhaseConfig &phases);

// f_k (if include_direct) plus the sum of all path channels of the graph, by dynamic programming.
cvec graph_channel(const ChannelSet &channels, const Scene &scene, const LoSGraph &g, const PhaseConfig &phases,
                   bool include_direct = true);

// Eq. (2) effective channel of user k; los_only restricts to the LoS graph (Eq. 13).
cvec effective_channel(const ChannelSet &channels, const Scene &scene, int k, const PhaseConfig &phases,
                       bool los_only);

// h = h_rest + A θ_j for the graph channel, all other phases fixed.
struct AffineForm
{
    cvec h_rest;
    cmat A;
};

AffineForm irs_affine_form(const ChannelSet &channels, const Scene &scene, const LoSGraph &g,
                           const PhaseConfig &phases, int irs_node, bool include_direct = true);

// Largest number of IRSs in an effective region for which the full (all-paths) channel is evaluated.
inline constexpr int max_full_enumeration_irs = 12;

nlohmann::json channels_to_json(const ChannelSet &channels);
ChannelSet channels_from_json(const nlohmann::json &j);

nlohmann::json matrix_to_json(const cmat &m);
cmat matrix_from_json(const nlohmann::json &j);

} // namespace irsnet

#endif

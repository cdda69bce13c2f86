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

#ifndef IRSNET_SCENE_HPP
#define IRSNET_SCENE_HPP

#include "irsnet/common.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace irsnet
{

// Uniform planar array. Elements are indexed as m = h * rows + v, so a vector over the array is the
// Kronecker product (horizontal ⊗ vertical). The grid axes follow from the facing normal and a fixed
// "up" convention: axis_h = normalize(up × normal), axis_v = normal × axis_h, with up = +z (or +y when
// the normal is vertical).
struct ArraySpec
{
    int cols = 1;              // elements along axis_h
    int rows = 1;              // elements along axis_v
    double spacing_wl = 0.5;   // element spacing in wavelengths
    vec3 normal{1.0, 0.0, 0.0};
    vec3 axis_h{0.0, 1.0, 0.0};
    vec3 axis_v{0.0, 0.0, 1.0};

    int size() const { return cols * rows; }
};

ArraySpec make_array(int cols, int rows, double spacing_wl, const vec3 &normal);

struct BaseStation
{
    vec3 position{0.0, 0.0, 0.0};
    ArraySpec array;
};

struct Irs
{
    vec3 position{0.0, 0.0, 0.0}; // reference point (geometric center)
    ArraySpec array;              // array.normal is the unit pointing normal

    const vec3 &normal() const { return array.normal; }
};

// Closed axis-aligned box.
struct Box
{
    vec3 lo{0.0, 0.0, 0.0};
    vec3 hi{0.0, 0.0, 0.0};

    bool contains(const vec3 &p) const;
};

struct PropagationConstants
{
    double beta_dB = -30.0;          // path loss at 1 m
    double alpha_bs_irs = 2.0;       // exponents for unobstructed links, by link class
    double alpha_irs_irs = 2.0;
    double alpha_irs_user = 2.0;
    double alpha_bs_user = 2.0;
    double alpha_nlos = 2.5;         // exponent for geometrically blocked links
    double kappa_dB = infinity;      // Rician factor of unobstructed links; +inf means pure LoS
    double carrier_freq_Hz = 5.0e9;
    double noise_power_dBm = -90.0;
    double tx_power_dBm = 0.0;
    bool direct_links = true;        // false: BS-user channels are treated as fully blocked (f_k = 0)

    double beta() const { return db_to_linear(beta_dB); }
    double kappa() const { return std::isinf(kappa_dB) ? infinity : db_to_linear(kappa_dB); }
    double wavelength() const { return speed_of_light / carrier_freq_Hz; }
    double noise_mw() const { return dbm_to_mw(noise_power_dBm); }
    double tx_mw() const { return dbm_to_mw(tx_power_dBm); }
};

// Node numbering: 0 is the BS, 1..J are IRSs, J+k (k = 1..K) is user k.
struct Scene
{
    BaseStation bs;
    std::vector<Irs> irs;
    std::vector<vec3> users;
    std::vector<Box> obstacles;
    PropagationConstants constants;
    std::vector<std::vector<int>> effective_regions; // per user, sorted IRS ids (1-based)

    int num_irs() const { return static_cast<int>(irs.size()); }
    int num_users() const { return static_cast<int>(users.size()); }
    int num_nodes() const { return 1 + num_irs() + num_users(); }
    int user_node(int k) const { return num_irs() + k; }
    int user_of(int node) const { return node - num_irs(); }
    bool is_bs(int node) const { return node == 0; }
    bool is_irs(int node) const { return node >= 1 && node <= num_irs(); }
    bool is_user(int node) const { return node > num_irs() && node < num_nodes(); }

    const Irs &irs_at(int node) const { return irs.at(static_cast<size_t>(node - 1)); }
    const vec3 &position(int node) const;
    int elements(int node) const;             // N_B, M_j or 1
    const ArraySpec *array(int node) const;   // nullptr for single-antenna users
    double distance(int i, int j) const;
    bool in_region(int k, int irs_node) const;
};

Scene build_scene(const nlohmann::json &config);
Scene load_scene(const std::string &path);
nlohmann::json scene_to_json(const Scene &scene);

// Closed-box segment test: touching a face, edge or corner counts as a hit.
bool segment_hits_box(const vec3 &a, const vec3 &b, const Box &box);

bool has_geometric_los(const Scene &scene, int i, int j);

// Strict front half-space test of IRS node j; points in the surface plane are rejected.
bool half_space_ok(const Scene &scene, int j, const vec3 &p);

// Binary LoS indicator u_{i,j} for a candidate directed link. Direct BS-user pairs only need an
// unobstructed segment; links into user J+k additionally require the IRS to lie in D_k.
int los_indicator(const Scene &scene, int i, int j);

// Same as los_indicator but without the unobstructed-segment condition: the admissibility rule of
// reflection paths (ordering, half-space and region) used for the full multi-path channel.
int admissible_link(const Scene &scene, int i, int j);

// Dense table of u_{i,j} over all node pairs.
class LosTable
{
  public:
    LosTable() = default;
    explicit LosTable(const Scene &scene);

    int operator()(int i, int j) const { return u_[static_cast<size_t>(i * n_ + j)]; }
    int num_nodes() const { return n_; }

  private:
    int n_ = 0;
    std::vector<std::uint8_t> u_;
};

struct Edge
{
    int from = 0;
    int to = 0;
    double distance = 0.0;
};

// Directed graph over {0} ∪ D_k ∪ {J+k} for one user. Acyclic by the distance-ordering rule.
struct LoSGraph
{
    int user = 1;         // k (1-based)
    int user_node = 0;    // J + k
    int num_irs = 0;
    std::vector<int> vertices;              // sorted node ids
    std::vector<Edge> edges;                // sorted by (from, to)
    std::vector<std::vector<Edge>> out;     // indexed by node id, each sorted by target

    bool has_edge(int i, int j) const;
    double edge_distance(int i, int j) const;
    size_t num_edges() const { return edges.size(); }
};

LoSGraph build_los_graph(const Scene &scene, int k);

// Graph of all admissible reflection links (obstructed links included), used for the full channel.
LoSGraph build_admissible_graph(const Scene &scene, int k);

// Graph consisting of a single reflection path BS -> a_1 -> ... -> a_n -> user k.
LoSGraph path_graph(const Scene &scene, int k, const std::vector<int> &irs_sequence);

// Remove the given IRS vertices (and their edges).
LoSGraph without_vertices(const LoSGraph &g, const std::vector<int> &removed);

// All BS -> user IRS sequences in lexicographic order (a prefix sorts before its extensions).
// max_paths = 0 means unbounded.
std::vector<std::vector<int>> enumerate_paths(const LoSGraph &g, size_t max_paths = 0);

bool is_acyclic(const LoSGraph &g);

} // namespace irsnet

#endif

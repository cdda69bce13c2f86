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

#ifndef IRSNET_TRAINING_HPP
#define IRSNET_TRAINING_HPP

#include "irsnet/routing.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace irsnet
{

enum class CodebookKind
{
    Active,
    Passive,
    Passive3D
};

// Beam list. A Passive3D codebook is stored in Kronecker form: beam ih*Dv + iv is
// kron(bh.col(ih), bv.col(iv)), matching the element order of ArraySpec.
struct Codebook
{
    CodebookKind kind = CodebookKind::Passive;
    int dimension = 0;
    std::vector<cvec> beams; // explicit beams (Active / Passive)
    cmat bh;                 // cols x Dh
    cmat bv;                 // rows x Dv

    int size() const;
    cvec beam(int index) const;
};

// D-point DFT steering grid restricted to `dimension` entries: beam d has entries exp(j2π n d / D).
// Active codebooks are normalized to unit norm.
Codebook dft_codebook(int D, int dimension, bool active = false);

Codebook passive_3d_codebook(int d_h, int d_v, int cols, int rows);

Codebook custom_codebook(std::vector<cvec> beams, CodebookKind kind);

// r_d = b^T θ_d for every beam of the codebook.
cvec codebook_responses(const Codebook &cb, const cvec &b);

struct SearchTooLarge : std::runtime_error
{
    double combinations;
    SearchTooLarge(const std::string &msg, double n) : std::runtime_error(msg), combinations(n) {}
};

inline constexpr double max_exhaustive_combinations = 1e7;

// Beam selection problem: user k's channel is the graph channel of graphs[k-1] (plus f_k when
// include_direct). IRSs outside `irs` reflect with all-ones phases.
struct SearchProblem
{
    const Scene *scene = nullptr;
    const ChannelSet *channels = nullptr;
    std::vector<LoSGraph> graphs;
    std::vector<int> irs;
    const Codebook *active = nullptr;
    const Codebook *passive = nullptr;
    bool include_direct = true;

    int num_users() const { return static_cast<int>(graphs.size()); }
};

struct BeamChoice
{
    std::vector<int> bs_beam;  // per user
    std::vector<int> irs_beam; // aligned with SearchProblem::irs
};

struct SearchResult
{
    BeamChoice choice;
    BeamSolution solution;
    double objective = 0.0;         // min SINR, linear
    long long evaluations = 0;
    int sweeps = 0;
    std::vector<long long> evaluations_per_sweep;
    std::vector<double> history;    // objective after every accepted update (sequential only)
};

// Min SINR and per-user solution for a beam choice.
SearchResult evaluate_choice(const SearchProblem &prob, const BeamChoice &choice);

SearchResult exhaustive_search(const SearchProblem &prob);

// Cyclic coordinate ascent: each user's BS beam, then each IRS beam. A change is accepted only when
// it strictly improves the objective.
SearchResult sequential_search(const SearchProblem &prob, int max_sweeps = 20,
                               const std::optional<BeamChoice> &init = std::nullopt);

// ---- distributed beam training ------------------------------------------------------------

struct BttRow
{
    int previous = -1; // -1 for the BS table
    int beam = 0;
    int next = 0;
    double rss = 0.0;  // mW
    bool online = false;
};

struct Btt
{
    int owner = 0;
    double threshold = 0.0; // mW
    std::vector<BttRow> rows;
};

struct TrainingConfig
{
    int slots = 10;                          // fading realizations averaged per RSS value
    std::optional<double> threshold_mw;      // default: noise power
    std::uint64_t seed = 0;
};

// Neighbor sets taken from the union of the given LoS graphs.
Btt build_bs_btt(const Scene &scene, const ChannelSet &channels, const std::vector<LoSGraph> &graphs,
                 const Codebook &active, const TrainingConfig &cfg);

// Rows for IRS j: every (previous, beam, next) with previous/next from the LoS graphs. When previous
// is the BS, it transmits with its best beam towards j from `bs_table`. Rows towards users appear only
// for users listed in `present_users`.
Btt build_irs_btt(const Scene &scene, const ChannelSet &channels, const std::vector<LoSGraph> &graphs, int j,
                  const Codebook &passive, const Codebook &active, const Btt &bs_table,
                  const std::vector<int> &present_users, const TrainingConfig &cfg);

class GlobalBtt
{
  public:
    using Key = std::tuple<int, int, int, int>; // owner, previous, beam, next

    void add(const Btt &table);
    std::optional<double> rss(int owner, int previous, int beam, int next) const;
    size_t size() const { return rows_.size(); }
    size_t online_rows() const;

    // Best row over beams for a fixed (owner, previous, next).
    std::optional<std::pair<int, double>> best_beam(int owner, int previous, int next) const;

    void set_hop_path_loss(int i, int j, double pl) { path_loss_[{i, j}] = pl; }
    double hop_path_loss(int i, int j) const;
    double tx_mw() const { return tx_mw_; }
    void set_tx_mw(double p) { tx_mw_ = p; }

    const std::map<Key, BttRow> &rows() const { return rows_; }
    const std::vector<Btt> &tables() const { return tables_; }

  private:
    std::map<Key, BttRow> rows_;
    std::map<std::pair<int, int>, double> path_loss_;
    std::vector<Btt> tables_;
    double tx_mw_ = 1.0;
};

GlobalBtt assemble_global_btt(const Scene &scene, const Btt &bs_table, const std::vector<Btt> &irs_tables);

// End-to-end gain estimate along BS -> path -> user from the tables:
// R_BS(w, a1) R_{a1}(BS, θ1, a2) / R_BS(w*, a1) ∏_{i≥2} R_{ai}(a_{i-1}, θi, a_{i+1}) / ∏ PL(a_i, a_{i+1}),
// every RSS divided by the transmit power. Exact for pure LoS links.
double approx_gain(const GlobalBtt &g, const std::vector<int> &path, int user_node, int bs_beam,
                   const std::vector<int> &irs_beams);

struct PathBeams
{
    int bs_beam = 0;
    std::vector<int> irs_beams;
    double approx = 0.0;
};

// Hop-by-hop best beams for a path, which maximizes approx_gain. Throws NotTrainable.
PathBeams best_path_beams(const GlobalBtt &g, const std::vector<int> &path, int user_node);

struct DistributedResult
{
    RoutingSolution routing;
    std::vector<PathBeams> beams;   // per user
    BeamSolution solution;          // phases and BS beams realized from the codebooks
    size_t online_rows = 0;
};

DistributedResult distributed_route_and_beams(const Scene &scene, const GlobalBtt &g,
                                              const std::vector<LoSGraph> &graphs, const Codebook &active,
                                              const Codebook &passive);

nlohmann::json btt_to_json(const Btt &t);
Btt btt_from_json(const nlohmann::json &j);

} // namespace irsnet

#endif

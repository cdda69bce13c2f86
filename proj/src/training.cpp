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

#include "irsnet/training.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace irsnet
{

using nlohmann::json;

// ---- codebooks -----------------------------------------------------------------------------

int Codebook::size() const
{
    if (kind == CodebookKind::Passive3D)
        return static_cast<int>(bh.cols() * bv.cols());
    return static_cast<int>(beams.size());
}

cvec Codebook::beam(int index) const
{
    if (index < 0 || index >= size())
        throw std::out_of_range("codebook beam index out of range");
    if (kind != CodebookKind::Passive3D)
        return beams[static_cast<size_t>(index)];
    const Eigen::Index dv = bv.cols();
    const cvec h = bh.col(index / dv);
    const cvec v = bv.col(index % dv);
    cvec out(h.size() * v.size());
    for (Eigen::Index i = 0; i < h.size(); ++i)
        out.segment(i * v.size(), v.size()) = h(i) * v;
    return out;
}

namespace
{
cmat dft_matrix(int D, int dimension)
{
    cmat m(dimension, D);
    for (int d = 0; d < D; ++d)
        for (int n = 0; n < dimension; ++n)
            m(n, d) = std::polar(1.0, 2.0 * pi * static_cast<double>((static_cast<long long>(n) * d) % D) / D);
    return m;
}
} // namespace

Codebook dft_codebook(int D, int dimension, bool active)
{
    if (dimension < 1 || D < dimension)
        throw std::invalid_argument("dft_codebook: need D >= dimension >= 1");
    Codebook cb;
    cb.kind = active ? CodebookKind::Active : CodebookKind::Passive;
    cb.dimension = dimension;
    cmat m = dft_matrix(D, dimension);
    const double scale = active ? 1.0 / std::sqrt(static_cast<double>(dimension)) : 1.0;
    for (int d = 0; d < D; ++d)
        cb.beams.push_back(scale * m.col(d));
    return cb;
}

Codebook passive_3d_codebook(int d_h, int d_v, int cols, int rows)
{
    if (cols < 1 || rows < 1 || d_h < cols || d_v < rows)
        throw std::invalid_argument("passive_3d_codebook: need D >= dimension >= 1 per axis");
    Codebook cb;
    cb.kind = CodebookKind::Passive3D;
    cb.dimension = cols * rows;
    cb.bh = dft_matrix(d_h, cols);
    cb.bv = dft_matrix(d_v, rows);
    return cb;
}

Codebook custom_codebook(std::vector<cvec> beams, CodebookKind kind)
{
    if (beams.empty() || kind == CodebookKind::Passive3D)
        throw std::invalid_argument("custom_codebook: need a non-empty explicit beam list");
    Codebook cb;
    cb.kind = kind;
    cb.dimension = static_cast<int>(beams.front().size());
    for (const auto &b : beams)
        if (b.size() != cb.dimension)
            throw std::invalid_argument("custom_codebook: beams differ in length");
    cb.beams = std::move(beams);
    return cb;
}

cvec codebook_responses(const Codebook &cb, const cvec &b)
{
    if (b.size() != cb.dimension)
        throw std::invalid_argument("codebook_responses: length mismatch");
    if (cb.kind == CodebookKind::Passive3D)
    {
        Eigen::Map<const cmat> X(b.data(), cb.bv.rows(), cb.bh.rows());
        cmat R = cb.bv.transpose() * X * cb.bh; // Dv x Dh
        return Eigen::Map<const cvec>(R.data(), R.size());
    }
    cvec r(cb.size());
    for (int d = 0; d < cb.size(); ++d)
        r(d) = (b.array() * cb.beams[static_cast<size_t>(d)].array()).sum();
    return r;
}

// ---- search --------------------------------------------------------------------------------

namespace
{

void check_problem(const SearchProblem &p)
{
    if (!p.scene || !p.channels || !p.active || !p.passive)
        throw std::invalid_argument("search problem is incomplete");
    if (p.graphs.empty())
        throw std::invalid_argument("search problem has no users");
    for (int j : p.irs)
        if (p.scene->elements(j) != p.passive->dimension)
            throw std::invalid_argument("passive codebook does not match IRS " + std::to_string(j));
    if (p.active->dimension != p.scene->bs.array.size())
        throw std::invalid_argument("active codebook does not match the BS array");
}

PhaseConfig phases_for(const SearchProblem &p, const std::vector<int> &irs_beam)
{
    PhaseConfig ph = PhaseConfig::ones(*p.scene);
    for (size_t i = 0; i < p.irs.size(); ++i)
        ph.at(p.irs[i]) = p.passive->beam(irs_beam[i]);
    return ph;
}

std::vector<cvec> user_channels(const SearchProblem &p, const PhaseConfig &ph)
{
    std::vector<cvec> h;
    for (const auto &g : p.graphs)
        h.push_back(graph_channel(*p.channels, *p.scene, g, ph, p.include_direct));
    return h;
}

double min_sinr(const Eigen::MatrixXd &G, const std::vector<int> &bs_beam, double p, double sigma2)
{
    // G(d, k) = |a_d^H h_k|^2
    const size_t K = bs_beam.size();
    double m = infinity;
    for (size_t k = 0; k < K; ++k)
    {
        double interf = 0.0;
        for (size_t j = 0; j < K; ++j)
            if (j != k)
                interf += G(bs_beam[j], static_cast<Eigen::Index>(k));
        m = std::min(m, p * G(bs_beam[k], static_cast<Eigen::Index>(k)) / (p * interf + sigma2));
    }
    return m;
}

Eigen::MatrixXd beam_gain_table(const Codebook &active, const std::vector<cvec> &h)
{
    Eigen::MatrixXd G(active.size(), static_cast<Eigen::Index>(h.size()));
    for (int d = 0; d < active.size(); ++d)
    {
        const cvec a = active.beam(d);
        for (size_t k = 0; k < h.size(); ++k)
            G(d, static_cast<Eigen::Index>(k)) = std::norm(a.dot(h[k]));
    }
    return G;
}

bool strictly_better(double cand, double cur) { return cand > cur + 1e-12 * std::abs(cur); }

} // namespace

SearchResult evaluate_choice(const SearchProblem &prob, const BeamChoice &choice)
{
    check_problem(prob);
    const double p = prob.scene->constants.tx_mw();
    const double sigma2 = prob.scene->constants.noise_mw();
    SearchResult r;
    r.choice = choice;
    r.solution.phases = phases_for(prob, choice.irs_beam);
    auto h = user_channels(prob, r.solution.phases);
    for (int b : choice.bs_beam)
        r.solution.bs_beams.push_back(prob.active->beam(b));
    for (size_t k = 0; k < h.size(); ++k)
        r.solution.gains.push_back(std::norm(r.solution.bs_beams[k].dot(h[k])));
    r.solution.sinrs = downlink_sinrs(h, r.solution.bs_beams, p, sigma2);
    r.objective = *std::min_element(r.solution.sinrs.begin(), r.solution.sinrs.end());
    return r;
}

SearchResult exhaustive_search(const SearchProblem &prob)
{
    check_problem(prob);
    const int K = prob.num_users();
    const int J = static_cast<int>(prob.irs.size());
    const int d_b = prob.active->size();
    const int d_i = prob.passive->size();
    const double count = std::pow(static_cast<double>(d_b), K) * std::pow(static_cast<double>(d_i), J);
    if (count > max_exhaustive_combinations)
        throw SearchTooLarge("exhaustive search would evaluate " + std::to_string(count) +
                                 " beam combinations (limit 1e7)",
                             count);
    const double p = prob.scene->constants.tx_mw();
    const double sigma2 = prob.scene->constants.noise_mw();

    BeamChoice best;
    double best_obj = -1.0;
    long long evals = 0;
    std::vector<int> irs_beam(static_cast<size_t>(J), 0);
    while (true)
    {
        auto h = user_channels(prob, phases_for(prob, irs_beam));
        Eigen::MatrixXd G = beam_gain_table(*prob.active, h);
        std::vector<int> bs(static_cast<size_t>(K), 0);
        while (true)
        {
            double obj = min_sinr(G, bs, p, sigma2);
            ++evals;
            if (obj > best_obj)
            {
                best_obj = obj;
                best.bs_beam = bs;
                best.irs_beam = irs_beam;
            }
            size_t i = 0;
            while (i < bs.size() && ++bs[i] == d_b)
                bs[i++] = 0;
            if (i == bs.size())
                break;
        }
        size_t i = 0;
        while (i < irs_beam.size() && ++irs_beam[i] == d_i)
            irs_beam[i++] = 0;
        if (i == irs_beam.size())
            break;
    }
    SearchResult r = evaluate_choice(prob, best);
    r.evaluations = evals;
    return r;
}

SearchResult sequential_search(const SearchProblem &prob, int max_sweeps, const std::optional<BeamChoice> &init)
{
    check_problem(prob);
    const int K = prob.num_users();
    const double p = prob.scene->constants.tx_mw();
    const double sigma2 = prob.scene->constants.noise_mw();

    BeamChoice choice;
    if (init)
        choice = *init;
    else
    {
        choice.bs_beam.assign(static_cast<size_t>(K), 0);
        choice.irs_beam.assign(prob.irs.size(), 0);
    }
    PhaseConfig phases = phases_for(prob, choice.irs_beam);
    double obj = evaluate_choice(prob, choice).objective;

    SearchResult res;
    res.history.push_back(obj);
    for (int sweep = 0; sweep < max_sweeps; ++sweep)
    {
        bool changed = false;
        long long evals = 0;

        // BS beams, one user at a time.
        for (int k = 0; k < K; ++k)
        {
            Eigen::MatrixXd G = beam_gain_table(*prob.active, user_channels(prob, phases));
            std::vector<int> bs = choice.bs_beam;
            int best_d = choice.bs_beam[static_cast<size_t>(k)];
            double best_obj = obj;
            for (int d = 0; d < prob.active->size(); ++d)
            {
                bs[static_cast<size_t>(k)] = d;
                double o = min_sinr(G, bs, p, sigma2);
                ++evals;
                if (strictly_better(o, best_obj))
                {
                    best_obj = o;
                    best_d = d;
                }
            }
            if (best_d != choice.bs_beam[static_cast<size_t>(k)])
            {
                choice.bs_beam[static_cast<size_t>(k)] = best_d;
                obj = best_obj;
                changed = true;
                res.history.push_back(obj);
            }
        }

        // IRS beams.
        std::vector<cvec> w;
        for (int b : choice.bs_beam)
            w.push_back(prob.active->beam(b));
        for (size_t i = 0; i < prob.irs.size(); ++i)
        {
            const int j = prob.irs[i];
            const int D = prob.passive->size();
            // r[u][k](d) = w_u^H h_k(θ_j = beam d)
            std::vector<std::vector<cvec>> r(static_cast<size_t>(K), std::vector<cvec>(static_cast<size_t>(K)));
            for (int k = 0; k < K; ++k)
            {
                AffineForm af = irs_affine_form(*prob.channels, *prob.scene, prob.graphs[static_cast<size_t>(k)],
                                                phases, j, prob.include_direct);
                for (int u = 0; u < K; ++u)
                {
                    const cvec &wu = w[static_cast<size_t>(u)];
                    cvec b = af.A.transpose() * wu.conjugate();
                    r[static_cast<size_t>(u)][static_cast<size_t>(k)] =
                        codebook_responses(*prob.passive, b).array() + wu.dot(af.h_rest);
                }
            }
            int best_d = choice.irs_beam[i];
            double best_obj = obj;
            for (int d = 0; d < D; ++d)
            {
                double o = infinity;
                for (int k = 0; k < K; ++k)
                {
                    double interf = 0.0;
                    for (int u = 0; u < K; ++u)
                        if (u != k)
                            interf += std::norm(r[static_cast<size_t>(u)][static_cast<size_t>(k)](d));
                    double sig = std::norm(r[static_cast<size_t>(k)][static_cast<size_t>(k)](d));
                    o = std::min(o, p * sig / (p * interf + sigma2));
                }
                ++evals;
                if (strictly_better(o, best_obj))
                {
                    best_obj = o;
                    best_d = d;
                }
            }
            if (best_d != choice.irs_beam[i])
            {
                choice.irs_beam[i] = best_d;
                phases.at(j) = prob.passive->beam(best_d);
                obj = best_obj;
                changed = true;
                res.history.push_back(obj);
            }
        }

        res.evaluations += evals;
        res.evaluations_per_sweep.push_back(evals);
        res.sweeps = sweep + 1;
        if (!changed)
            break;
    }

    SearchResult fin = evaluate_choice(prob, choice);
    fin.evaluations = res.evaluations;
    fin.evaluations_per_sweep = std::move(res.evaluations_per_sweep);
    fin.sweeps = res.sweeps;
    fin.history = std::move(res.history);
    return fin;
}

// ---- beam training tables ------------------------------------------------------------------

namespace
{

// View of a link with single-antenna controller ports where requested.
LinkChannel port_view(LinkChannel l, bool array_from, bool array_to)
{
    if (!array_from)
        l.resp_from = cvec::Ones(1);
    if (!array_to)
        l.resp_to = cvec::Ones(1);
    l.matrix = l.los_component();
    return l;
}

double threshold_of(const Scene &scene, const TrainingConfig &cfg)
{
    return cfg.threshold_mw ? *cfg.threshold_mw : scene.constants.noise_mw();
}

std::set<int> next_nodes(const std::vector<LoSGraph> &graphs, int v)
{
    std::set<int> s;
    for (const auto &g : graphs)
        if (static_cast<size_t>(v) < g.out.size())
            for (const auto &e : g.out[static_cast<size_t>(v)])
                s.insert(e.to);
    return s;
}

std::set<int> previous_nodes(const std::vector<LoSGraph> &graphs, int v)
{
    std::set<int> s;
    for (const auto &g : graphs)
        for (const auto &e : g.edges)
            if (e.to == v)
                s.insert(e.from);
    return s;
}

} // namespace

Btt build_bs_btt(const Scene &scene, const ChannelSet &channels, const std::vector<LoSGraph> &graphs,
                 const Codebook &active, const TrainingConfig &cfg)
{
    if (cfg.slots < 1)
        throw std::invalid_argument("training needs at least one slot");
    Btt t;
    t.owner = 0;
    t.threshold = threshold_of(scene, cfg);
    const double p = scene.constants.tx_mw();
    for (int n : next_nodes(graphs, 0))
    {
        if (!scene.is_irs(n))
            continue;
        LinkChannel link = port_view(channels.link(0, n), true, false);
        Rng rng(substream_seed(cfg.seed, 0xB5, 0, static_cast<std::uint64_t>(n)));
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(active.size());
        for (int s = 0; s < cfg.slots; ++s)
        {
            cvec q = redraw_fading(link, rng).col(0);
            for (int d = 0; d < active.size(); ++d)
                acc(d) += std::norm(active.beam(d).dot(q));
        }
        for (int d = 0; d < active.size(); ++d)
        {
            double rss = p * acc(d) / cfg.slots;
            if (rss >= t.threshold)
                t.rows.push_back({-1, d, n, rss, false});
        }
    }
    return t;
}

Btt build_irs_btt(const Scene &scene, const ChannelSet &channels, const std::vector<LoSGraph> &graphs, int j,
                  const Codebook &passive, const Codebook &active, const Btt &bs_table,
                  const std::vector<int> &present_users, const TrainingConfig &cfg)
{
    if (cfg.slots < 1)
        throw std::invalid_argument("training needs at least one slot");
    if (scene.elements(j) != passive.dimension)
        throw std::invalid_argument("passive codebook does not match IRS " + std::to_string(j));
    Btt t;
    t.owner = j;
    t.threshold = threshold_of(scene, cfg);
    const double p = scene.constants.tx_mw();

    std::vector<int> nexts;
    for (int n : next_nodes(graphs, j))
        if (scene.is_irs(n) ||
            std::find(present_users.begin(), present_users.end(), scene.user_of(n)) != present_users.end())
            nexts.push_back(n);

    for (int prev : previous_nodes(graphs, j))
    {
        cvec w_star;
        if (prev == 0)
        {
            int best = -1;
            double best_rss = -1.0;
            for (const auto &row : bs_table.rows)
                if (row.next == j && row.rss > best_rss)
                {
                    best_rss = row.rss;
                    best = row.beam;
                }
            if (best < 0)
                continue;
            w_star = active.beam(best);
        }
        LinkChannel in = port_view(channels.link(prev, j), prev == 0, true);

        for (int n : nexts)
        {
            const bool to_user = scene.is_user(n);
            LinkChannel out = port_view(channels.link(j, n), true, to_user);
            Rng rng(substream_seed(cfg.seed, 0xB7, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(prev),
                                   static_cast<std::uint64_t>(n)));
            Eigen::VectorXd acc = Eigen::VectorXd::Zero(passive.size());
            for (int s = 0; s < cfg.slots; ++s)
            {
                cmat hin = redraw_fading(in, rng);
                cmat hout = redraw_fading(out, rng);
                cvec tx = prev == 0 ? cvec(hin.transpose() * w_star.conjugate()) : cvec(hin.row(0).transpose());
                cvec b = tx.cwiseProduct(hout.col(0));
                acc += codebook_responses(passive, b).cwiseAbs2();
            }
            for (int d = 0; d < passive.size(); ++d)
            {
                double rss = p * acc(d) / cfg.slots;
                if (rss >= t.threshold)
                    t.rows.push_back({prev, d, n, rss, to_user});
            }
        }
    }
    return t;
}

// ---- global table --------------------------------------------------------------------------

void GlobalBtt::add(const Btt &table)
{
    for (const auto &row : table.rows)
    {
        Key key{table.owner, row.previous, row.beam, row.next};
        auto it = rows_.find(key);
        if (it != rows_.end())
        {
            if (it->second.rss != row.rss)
                throw std::logic_error("conflicting duplicate BTT row at node " + std::to_string(table.owner));
            continue;
        }
        rows_.emplace(key, row);
    }
    tables_.push_back(table);
}

std::optional<double> GlobalBtt::rss(int owner, int previous, int beam, int next) const
{
    auto it = rows_.find({owner, previous, beam, next});
    if (it == rows_.end())
        return std::nullopt;
    return it->second.rss;
}

size_t GlobalBtt::online_rows() const
{
    size_t n = 0;
    for (const auto &kv : rows_)
        n += kv.second.online ? 1 : 0;
    return n;
}

std::optional<std::pair<int, double>> GlobalBtt::best_beam(int owner, int previous, int next) const
{
    std::optional<std::pair<int, double>> best;
    for (auto it = rows_.lower_bound({owner, previous, INT_MIN, INT_MIN});
         it != rows_.end() && std::get<0>(it->first) == owner && std::get<1>(it->first) == previous; ++it)
        if (it->second.next == next && (!best || it->second.rss > best->second))
            best = std::make_pair(it->second.beam, it->second.rss);
    return best;
}

double GlobalBtt::hop_path_loss(int i, int j) const
{
    auto it = path_loss_.find({i, j});
    if (it == path_loss_.end())
        throw NotTrainable("no path loss recorded for hop " + std::to_string(i) + "->" + std::to_string(j));
    return it->second;
}

GlobalBtt assemble_global_btt(const Scene &scene, const Btt &bs_table, const std::vector<Btt> &irs_tables)
{
    GlobalBtt g;
    g.set_tx_mw(scene.constants.tx_mw());
    g.add(bs_table);
    for (const auto &t : irs_tables)
    {
        g.add(t);
        for (const auto &row : t.rows)
            if (scene.is_irs(row.next))
                g.set_hop_path_loss(t.owner, row.next,
                                    path_loss(scene.distance(t.owner, row.next),
                                              link_model(scene, t.owner, row.next).alpha, scene.constants.beta()));
    }
    return g;
}

namespace
{
double need(const std::optional<double> &v, int owner, int prev, int next)
{
    if (!v)
        throw NotTrainable("no BTT row at node " + std::to_string(owner) + " for " + std::to_string(prev) + "->" +
                           std::to_string(next));
    return *v;
}
} // namespace

double approx_gain(const GlobalBtt &g, const std::vector<int> &path, int user_node, int bs_beam,
                   const std::vector<int> &irs_beams)
{
    if (path.empty() || irs_beams.size() != path.size())
        throw std::invalid_argument("approx_gain: path and beam list must be non-empty and aligned");
    const double p = g.tx_mw();
    const int a1 = path.front();
    auto star = g.best_beam(0, -1, a1);
    if (!star)
        throw NotTrainable("BS has no BTT row towards IRS " + std::to_string(a1));
    double est = need(g.rss(0, -1, bs_beam, a1), 0, -1, a1) / star->second;
    for (size_t i = 0; i < path.size(); ++i)
    {
        const int prev = i == 0 ? 0 : path[i - 1];
        const int next = i + 1 < path.size() ? path[i + 1] : user_node;
        est *= need(g.rss(path[i], prev, irs_beams[i], next), path[i], prev, next) / p;
        if (i + 1 < path.size())
            est /= g.hop_path_loss(path[i], path[i + 1]);
    }
    return est;
}

PathBeams best_path_beams(const GlobalBtt &g, const std::vector<int> &path, int user_node)
{
    if (path.empty())
        throw std::invalid_argument("best_path_beams: empty path");
    PathBeams pb;
    auto star = g.best_beam(0, -1, path.front());
    if (!star)
        throw NotTrainable("BS has no BTT row towards IRS " + std::to_string(path.front()));
    pb.bs_beam = star->first;
    for (size_t i = 0; i < path.size(); ++i)
    {
        const int prev = i == 0 ? 0 : path[i - 1];
        const int next = i + 1 < path.size() ? path[i + 1] : user_node;
        auto b = g.best_beam(path[i], prev, next);
        if (!b)
            throw NotTrainable("no BTT row at IRS " + std::to_string(path[i]) + " for " + std::to_string(prev) +
                               "->" + std::to_string(next));
        pb.irs_beams.push_back(b->first);
    }
    pb.approx = approx_gain(g, path, user_node, pb.bs_beam, pb.irs_beams);
    return pb;
}

DistributedResult distributed_route_and_beams(const Scene &scene, const GlobalBtt &g,
                                              const std::vector<LoSGraph> &graphs, const Codebook &active,
                                              const Codebook &passive)
{
    std::map<std::pair<int, std::vector<int>>, PathBeams> cache;
    RouteGain gain = [&](int k, const std::vector<int> &path) {
        auto key = std::make_pair(k, path);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second.approx;
        PathBeams pb;
        try
        {
            pb = best_path_beams(g, path, scene.user_node(k));
        }
        catch (const NotTrainable &)
        {
            pb.approx = 0.0;
        }
        cache.emplace(key, pb);
        return pb.approx;
    };

    DistributedResult res;
    if (graphs.size() == 1)
    {
        auto routes = enumerate_routes(scene, graphs.front());
        std::vector<ReflectionPath> trainable;
        for (auto &r : routes)
        {
            r.gain = gain(r.user, r.irs);
            if (r.gain > 0.0)
                trainable.push_back(r);
        }
        if (trainable.empty())
            throw Infeasible("no trainable reflection path for user " + std::to_string(graphs.front().user));
        ReflectionPath best = *std::min_element(trainable.begin(), trainable.end(), route_better);
        res.routing.paths = {best};
        res.routing.objective = best.gain;
        res.routing.separation_ok = true;
    }
    else
    {
        MultiRouteOptions opt;
        opt.gain = gain;
        res.routing = optimal_multi_route(scene, graphs, opt);
    }

    res.solution.phases = PhaseConfig::ones(scene);
    for (auto it = res.routing.paths.rbegin(); it != res.routing.paths.rend(); ++it)
    {
        const PathBeams &pb = cache.at({it->user, it->irs});
        for (size_t i = 0; i < it->irs.size(); ++i)
            res.solution.phases.at(it->irs[i]) = passive.beam(pb.irs_beams[i]);
    }
    for (const auto &path : res.routing.paths)
    {
        const PathBeams &pb = cache.at({path.user, path.irs});
        res.beams.push_back(pb);
        res.solution.bs_beams.push_back(active.beam(pb.bs_beam));
    }
    res.online_rows = g.online_rows();
    return res;
}

// ---- serialization -------------------------------------------------------------------------

json btt_to_json(const Btt &t)
{
    json rows = json::array();
    for (const auto &r : t.rows)
        rows.push_back({{"previous", r.previous < 0 ? json(nullptr) : json(r.previous)},
                        {"beam", r.beam},
                        {"next", r.next},
                        {"rss", r.rss},
                        {"online", r.online}});
    return {{"owner", t.owner}, {"threshold", t.threshold}, {"rows", rows}};
}

Btt btt_from_json(const json &j)
{
    Btt t;
    t.owner = j.at("owner").get<int>();
    t.threshold = j.at("threshold").get<double>();
    for (const auto &r : j.at("rows"))
    {
        BttRow row;
        row.previous = r.at("previous").is_null() ? -1 : r.at("previous").get<int>();
        row.beam = r.at("beam").get<int>();
        row.next = r.at("next").get<int>();
        row.rss = r.at("rss").get<double>();
        row.online = r.at("online").get<bool>();
        t.rows.push_back(row);
    }
    return t;
}

} // namespace irsnet

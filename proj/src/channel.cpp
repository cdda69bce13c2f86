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

#include "irsnet/channel.hpp"

#include <algorithm>
#include <queue>

namespace irsnet
{

using nlohmann::json;

cvec array_response(const ArraySpec &array, const vec3 &dir)
{
    if (std::abs(dir.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("array_response: direction must be a unit vector");
    const double kh = 2.0 * pi * array.spacing_wl * array.axis_h.dot(dir);
    const double kv = 2.0 * pi * array.spacing_wl * array.axis_v.dot(dir);
    cvec a(array.size());
    for (int h = 0; h < array.cols; ++h)
        for (int v = 0; v < array.rows; ++v)
            a(h * array.rows + v) = std::polar(1.0, kh * h + kv * v);
    return a;
}

cvec node_response(const Scene &scene, int node, const vec3 &dir)
{
    const ArraySpec *a = scene.array(node);
    if (!a)
        return cvec::Ones(1);
    return array_response(*a, dir);
}

double path_loss(double d, double alpha, double beta)
{
    if (!(d > 0.0))
        throw std::invalid_argument("path_loss: distance must be positive");
    return beta * std::pow(d, -alpha);
}

LinkModel link_model(const Scene &scene, int i, int j)
{
    const auto &c = scene.constants;
    LinkModel m;
    m.los = has_geometric_los(scene, i, j);
    if (scene.is_bs(i) && scene.is_user(j))
    {
        m.active = c.direct_links;
        m.alpha = c.alpha_bs_user;
    }
    else if (scene.is_bs(i))
        m.alpha = c.alpha_bs_irs;
    else if (scene.is_user(j))
        m.alpha = c.alpha_irs_user;
    else
        m.alpha = c.alpha_irs_irs;
    if (m.los)
        m.kappa = c.kappa();
    else
    {
        m.alpha = c.alpha_nlos;
        m.kappa = 0.0;
    }
    return m;
}

LinkChannel synth_link(const Scene &scene, int i, int j, Rng &rng)
{
    return synth_link(scene, i, j, link_model(scene, i, j), rng);
}

LinkChannel link_statistics(const Scene &scene, int i, int j, const LinkModel &model, bool array_from,
                            bool array_to)
{
    LinkChannel l;
    l.from = i;
    l.to = j;
    l.distance = scene.distance(i, j);
    l.path_loss = path_loss(l.distance, model.alpha, scene.constants.beta());
    l.kappa = model.kappa;

    vec3 e = (scene.position(j) - scene.position(i)) / l.distance;
    l.resp_from = array_from ? node_response(scene, i, e) : cvec::Ones(1);
    l.resp_to = array_to ? node_response(scene, j, -e) : cvec::Ones(1);
    if (!model.active)
    {
        l.matrix = cmat::Zero(l.resp_from.size(), l.resp_to.size());
        return l;
    }

    double los_weight = 0.0;
    double nlos_weight = 1.0;
    if (model.los)
    {
        if (std::isinf(model.kappa))
        {
            los_weight = 1.0;
            nlos_weight = 0.0;
        }
        else
        {
            los_weight = std::sqrt(model.kappa / (1.0 + model.kappa));
            nlos_weight = std::sqrt(1.0 / (1.0 + model.kappa));
        }
    }
    const double amp = std::sqrt(l.path_loss);
    l.has_los = model.los;
    l.rho = std::polar(amp * los_weight, -2.0 * pi * l.distance / scene.constants.wavelength());
    l.nlos_scale = amp * nlos_weight;
    l.matrix = l.los_component();
    return l;
}

LinkChannel synth_link(const Scene &scene, int i, int j, const LinkModel &model, Rng &rng)
{
    LinkChannel l = link_statistics(scene, i, j, model);
    if (l.nlos_scale > 0.0)
        l.matrix += l.nlos_scale * complex_gaussian(rng, l.matrix.rows(), l.matrix.cols());
    return l;
}

cmat redraw_fading(const LinkChannel &link, Rng &rng)
{
    cmat m = link.los_component();
    if (link.nlos_scale > 0.0)
        m += link.nlos_scale * complex_gaussian(rng, link.matrix.rows(), link.matrix.cols());
    return m;
}

// ---- channel sets --------------------------------------------------------------------------

const LinkChannel &ChannelSet::link(int i, int j) const
{
    auto it = links_.find({i, j});
    if (it == links_.end())
        throw std::out_of_range("channel set has no link " + std::to_string(i) + "->" + std::to_string(j));
    return it->second;
}

cvec ChannelSet::direct(int k_node) const
{
    auto it = links_.find({0, k_node});
    if (it == links_.end())
        return cvec::Zero(n_b_);
    return it->second.matrix.col(0);
}

void ChannelSet::insert(LinkChannel link)
{
    auto key = std::make_pair(link.from, link.to);
    links_[key] = std::move(link);
}

std::vector<std::pair<int, int>> scope_links(const Scene &scene, ChannelScope scope)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 1; k <= scene.num_users(); ++k)
    {
        LoSGraph g = scope == ChannelScope::LosGraph ? build_los_graph(scene, k) : build_admissible_graph(scene, k);
        for (const auto &e : g.edges)
            out.emplace_back(e.from, e.to);
        out.emplace_back(0, scene.user_node(k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ChannelSet synthesize_links(const Scene &scene, std::uint64_t seed, const std::vector<std::pair<int, int>> &links,
                            const std::map<std::pair<int, int>, LinkModel> &overrides)
{
    ChannelSet cs;
    cs.set_seed(seed);
    cs.set_num_bs_antennas(scene.bs.array.size());
    for (const auto &[i, j] : links)
    {
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
        auto it = overrides.find({i, j});
        LinkModel m = it != overrides.end() ? it->second : link_model(scene, i, j);
        cs.insert(synth_link(scene, i, j, m, rng));
    }
    return cs;
}

ChannelSet synthesize_channels(const Scene &scene, std::uint64_t seed, ChannelScope scope,
                               const std::map<std::pair<int, int>, LinkModel> &overrides)
{
    auto links = scope_links(scene, scope);
    for (const auto &kv : overrides)
        links.push_back(kv.first);
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    return synthesize_links(scene, seed, links, overrides);
}

// ---- phases and composition ----------------------------------------------------------------

PhaseConfig PhaseConfig::ones(const Scene &scene)
{
    PhaseConfig p;
    for (const auto &irs : scene.irs)
        p.theta.push_back(cvec::Ones(irs.array.size()));
    return p;
}

bool PhaseConfig::unit_modulus(double tol) const
{
    for (const auto &t : theta)
        for (Eigen::Index m = 0; m < t.size(); ++m)
            if (std::abs(std::abs(t(m)) - 1.0) > tol)
                return false;
    return true;
}

cvec cascaded_path_channel(const ChannelSet &channels, const Scene &scene, int k, const std::vector<int> &path,
                           const PhaseConfig &phases)
{
    if (path.empty())
        throw std::invalid_argument("cascaded_path_channel: empty path");
    const int user = scene.user_node(k);
    cvec v = channels.H(path.back(), user);
    for (size_t i = path.size(); i-- > 0;)
    {
        const cvec &th = phases.at(path[i]);
        if (th.size() != v.size())
            throw std::invalid_argument("cascaded_path_channel: phase vector length mismatch at IRS " +
                                        std::to_string(path[i]));
        v = th.cwiseProduct(v);
        const cmat &H = channels.H(i == 0 ? 0 : path[i - 1], path[i]);
        if (H.cols() != v.size())
            throw std::invalid_argument("cascaded_path_channel: channel dimension mismatch");
        v = H * v;
    }
    return v;
}

namespace
{

// Vertices in topological order (BS first, user last).
std::vector<int> topo_order(const LoSGraph &g)
{
    std::vector<int> indeg(g.out.size(), 0);
    for (const auto &e : g.edges)
        ++indeg[static_cast<size_t>(e.to)];
    std::vector<int> order;
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v : g.vertices)
        if (indeg[static_cast<size_t>(v)] == 0)
            ready.push(v);
    while (!ready.empty())
    {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (const auto &e : g.out[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(e.to)] == 0)
                ready.push(e.to);
    }
    if (order.size() != g.vertices.size())
        throw std::logic_error("reflection graph contains a cycle");
    return order;
}

// r_v: channel from vertex v's elements to the user, with phases of v itself not applied.
std::vector<cvec> backward_pass(const ChannelSet &channels, const Scene &scene, const LoSGraph &g,
                                const PhaseConfig &phases, const std::vector<int> &order)
{
    std::vector<cvec> r(g.out.size());
    r[static_cast<size_t>(g.user_node)] = cvec::Ones(1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
    {
        int v = *it;
        if (v == g.user_node)
            continue;
        cvec acc = cvec::Zero(scene.elements(v));
        for (const auto &e : g.out[static_cast<size_t>(v)])
        {
            const cvec &rw = r[static_cast<size_t>(e.to)];
            if (rw.size() == 0)
                continue;
            if (e.to == g.user_node)
                acc += channels.H(v, e.to) * rw;
            else
                acc += channels.H(v, e.to) * phases.at(e.to).cwiseProduct(rw);
        }
        r[static_cast<size_t>(v)] = acc;
    }
    return r;
}

} // namespace

cvec graph_channel(const ChannelSet &channels, const Scene &scene, const LoSGraph &g, const PhaseConfig &phases,
                   bool include_direct)
{
    auto order = topo_order(g);
    auto r = backward_pass(channels, scene, g, phases, order);
    cvec h = r[0];
    if (include_direct)
        h += channels.direct(g.user_node);
    return h;
}

cvec effective_channel(const ChannelSet &channels, const Scene &scene, int k, const PhaseConfig &phases,
                       bool los_only)
{
    if (los_only)
        return graph_channel(channels, scene, build_los_graph(scene, k), phases, true);
    if (static_cast<int>(scene.effective_regions.at(static_cast<size_t>(k - 1)).size()) > max_full_enumeration_irs)
        throw std::invalid_argument("effective_channel: region too large for the full channel; use los_only");
    return graph_channel(channels, scene, build_admissible_graph(scene, k), phases, true);
}

AffineForm irs_affine_form(const ChannelSet &channels, const Scene &scene, const LoSGraph &g,
                           const PhaseConfig &phases, int irs_node, bool include_direct)
{
    auto order = topo_order(g);
    auto r = backward_pass(channels, scene, g, phases, order);
    const int n_b = scene.bs.array.size();
    const int m = scene.elements(irs_node);

    // F_v: BS antennas to the elements of v (phases of v not applied).
    std::vector<cmat> F(g.out.size());
    for (int v : order)
    {
        if (v == g.user_node || v == irs_node)
            continue;
        cmat G;
        if (v == 0)
            G = cmat::Identity(n_b, n_b);
        else if (F[static_cast<size_t>(v)].size() != 0)
            G = F[static_cast<size_t>(v)] * phases.at(v).asDiagonal();
        else
            continue;
        for (const auto &e : g.out[static_cast<size_t>(v)])
        {
            if (e.to == g.user_node)
                continue;
            cmat &dst = F[static_cast<size_t>(e.to)];
            cmat term = v == 0 ? channels.H(0, e.to) : cmat(G * channels.H(v, e.to));
            if (dst.size() == 0)
                dst = term;
            else
                dst += term;
        }
    }

    AffineForm out;
    cvec h = r[0];
    if (include_direct)
        h += channels.direct(g.user_node);
    const cmat &Fj = F[static_cast<size_t>(irs_node)];
    const cvec &rj = r[static_cast<size_t>(irs_node)];
    if (Fj.size() == 0 || rj.size() == 0)
    {
        out.A = cmat::Zero(n_b, m);
        out.h_rest = h;
        return out;
    }
    out.A = Fj * rj.asDiagonal();
    out.h_rest = h - out.A * phases.at(irs_node);
    return out;
}

// ---- serialization -------------------------------------------------------------------------

json matrix_to_json(const cmat &m)
{
    json data = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            data.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

cmat matrix_from_json(const json &j)
{
    auto rows = j.at("rows").get<Eigen::Index>();
    auto cols = j.at("cols").get<Eigen::Index>();
    const json &data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ConfigError("matrix JSON: data length does not match rows*cols");
    cmat m(rows, cols);
    size_t idx = 0;
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r, ++idx)
            m(r, c) = cplx(data[idx].at(0).get<double>(), data[idx].at(1).get<double>());
    return m;
}

namespace
{
json number_or_inf(double x) { return std::isinf(x) ? json("inf") : json(x); }
double read_number_or_inf(const json &j) { return j.is_string() ? infinity : j.get<double>(); }
} // namespace

json channels_to_json(const ChannelSet &channels)
{
    json links = json::array();
    for (const auto &[key, l] : channels.links())
    {
        links.push_back({{"from", l.from},
                         {"to", l.to},
                         {"distance", l.distance},
                         {"path_loss", l.path_loss},
                         {"kappa", number_or_inf(l.kappa)},
                         {"has_los", l.has_los},
                         {"rho", {l.rho.real(), l.rho.imag()}},
                         {"nlos_scale", l.nlos_scale},
                         {"resp_from", matrix_to_json(l.resp_from)},
                         {"resp_to", matrix_to_json(l.resp_to)},
                         {"matrix", matrix_to_json(l.matrix)}});
    }
    return {{"seed", channels.seed()}, {"bs_antennas", channels.num_bs_antennas()}, {"links", links}};
}

ChannelSet channels_from_json(const json &j)
{
    ChannelSet cs;
    cs.set_seed(j.at("seed").get<std::uint64_t>());
    cs.set_num_bs_antennas(j.at("bs_antennas").get<int>());
    for (const auto &e : j.at("links"))
    {
        LinkChannel l;
        l.from = e.at("from").get<int>();
        l.to = e.at("to").get<int>();
        l.distance = e.at("distance").get<double>();
        l.path_loss = e.at("path_loss").get<double>();
        l.kappa = read_number_or_inf(e.at("kappa"));
        l.has_los = e.at("has_los").get<bool>();
        l.rho = cplx(e.at("rho").at(0).get<double>(), e.at("rho").at(1).get<double>());
        l.nlos_scale = e.at("nlos_scale").get<double>();
        l.resp_from = matrix_from_json(e.at("resp_from"));
        l.resp_to = matrix_from_json(e.at("resp_to"));
        l.matrix = matrix_from_json(e.at("matrix"));
        cs.insert(std::move(l));
    }
    return cs;
}

} // namespace irsnet

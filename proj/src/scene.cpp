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

#include "irsnet/scene.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

namespace irsnet
{

using nlohmann::json;

ArraySpec make_array(int cols, int rows, double spacing_wl, const vec3 &normal)
{
    if (cols < 1 || rows < 1)
        throw ConfigError("array dimensions must be at least 1");
    double nn = normal.norm();
    if (!(nn > 0.0) || !std::isfinite(nn))
        throw ConfigError("array normal must be a nonzero finite vector");

    ArraySpec a;
    a.cols = cols;
    a.rows = rows;
    a.spacing_wl = spacing_wl;
    a.normal = normal / nn;

    vec3 up(0.0, 0.0, 1.0);
    if (std::abs(a.normal.dot(up)) > 1.0 - 1e-9)
        up = vec3(0.0, 1.0, 0.0);
    a.axis_h = up.cross(a.normal).normalized();
    a.axis_v = a.normal.cross(a.axis_h);
    return a;
}

bool Box::contains(const vec3 &p) const
{
    for (int ax = 0; ax < 3; ++ax)
        if (p[ax] < lo[ax] || p[ax] > hi[ax])
            return false;
    return true;
}

const vec3 &Scene::position(int node) const
{
    if (is_bs(node))
        return bs.position;
    if (is_irs(node))
        return irs_at(node).position;
    if (is_user(node))
        return users.at(static_cast<size_t>(user_of(node) - 1));
    throw std::out_of_range("unknown node id " + std::to_string(node));
}

int Scene::elements(int node) const
{
    const ArraySpec *a = array(node);
    return a ? a->size() : 1;
}

const ArraySpec *Scene::array(int node) const
{
    if (is_bs(node))
        return &bs.array;
    if (is_irs(node))
        return &irs_at(node).array;
    if (is_user(node))
        return nullptr;
    throw std::out_of_range("unknown node id " + std::to_string(node));
}

double Scene::distance(int i, int j) const { return (position(i) - position(j)).norm(); }

bool Scene::in_region(int k, int irs_node) const
{
    const auto &r = effective_regions.at(static_cast<size_t>(k - 1));
    return std::binary_search(r.begin(), r.end(), irs_node);
}

// ---- config parsing ------------------------------------------------------------------------

namespace
{

vec3 parse_point(const json &j, const std::string &what)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(what + ": expected an array of 3 numbers");
    vec3 p;
    for (int i = 0; i < 3; ++i)
    {
        if (!j[static_cast<size_t>(i)].is_number())
            throw ConfigError(what + ": coordinates must be numbers");
        p[i] = j[static_cast<size_t>(i)].get<double>();
    }
    if (!p.allFinite())
        throw ConfigError(what + ": coordinates must be finite");
    return p;
}

const json &require(const json &obj, const char *key, const std::string &what)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError(what + ": missing required field '" + key + "'");
    return obj.at(key);
}

double number_or(const json &obj, const char *key, double fallback, const std::string &what)
{
    if (!obj.contains(key) || obj.at(key).is_null())
        return fallback;
    const json &v = obj.at(key);
    if (v.is_string())
    {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity")
            return infinity;
        throw ConfigError(what + ": field '" + key + "' must be a number");
    }
    if (!v.is_number())
        throw ConfigError(what + ": field '" + key + "' must be a number");
    return v.get<double>();
}

int int_or(const json &obj, const char *key, int fallback, const std::string &what)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(what + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

json point_json(const vec3 &p) { return json::array({p.x(), p.y(), p.z()}); }

} // namespace

Scene build_scene(const json &config)
{
    if (!config.is_object())
        throw ConfigError("scene config must be a JSON object");

    Scene s;

    // Base station
    const json &bs = require(config, "bs", "scene");
    s.bs.position = parse_point(require(bs, "position", "bs"), "bs.position");
    int n_b = int_or(bs, "antennas", 1, "bs");
    int bs_rows = int_or(bs, "rows", 1, "bs");
    if (n_b < 1 || bs_rows < 1 || n_b % bs_rows != 0)
        throw ConfigError("bs: antennas must be >= 1 and divisible by rows");
    vec3 bs_normal = bs.contains("normal") ? parse_point(bs.at("normal"), "bs.normal") : vec3(1.0, 0.0, 0.0);
    s.bs.array = make_array(n_b / bs_rows, bs_rows, number_or(bs, "spacing_wavelengths", 0.5, "bs"), bs_normal);

    // IRSs
    if (config.contains("irs"))
    {
        const json &list = config.at("irs");
        if (!list.is_array())
            throw ConfigError("irs: expected an array");
        for (size_t i = 0; i < list.size(); ++i)
        {
            const json &e = list[i];
            std::string what = "irs[" + std::to_string(i) + "]";
            Irs irs;
            irs.position = parse_point(require(e, "position", what), what + ".position");
            const char *nkey = e.contains("pointing_normal") ? "pointing_normal" : "normal";
            vec3 n = parse_point(require(e, nkey, what), what + ".pointing_normal");
            int m0 = int_or(e, "m0", 0, what);
            int cols = int_or(e, "cols", m0, what);
            int rows = int_or(e, "rows", m0, what);
            if (cols < 1 || rows < 1)
                throw ConfigError(what + ": element grid needs m0 >= 1 (or cols/rows >= 1)");
            if (!(n.norm() > 0.0))
                throw ConfigError(what + ": pointing_normal must be nonzero");
            irs.array = make_array(cols, rows, number_or(e, "spacing_wavelengths", 0.25, what), n);
            s.irs.push_back(irs);
        }
    }

    // Users
    const json &users = require(config, "users", "scene");
    if (!users.is_array())
        throw ConfigError("users: expected an array");
    for (size_t i = 0; i < users.size(); ++i)
    {
        std::string what = "users[" + std::to_string(i) + "]";
        const json &u = users[i];
        s.users.push_back(u.is_object() ? parse_point(require(u, "position", what), what) : parse_point(u, what));
    }

    // Obstacles
    if (config.contains("obstacles"))
    {
        const json &list = config.at("obstacles");
        if (!list.is_array())
            throw ConfigError("obstacles: expected an array");
        for (size_t i = 0; i < list.size(); ++i)
        {
            std::string what = "obstacles[" + std::to_string(i) + "]";
            Box b;
            b.lo = parse_point(require(list[i], "min", what), what + ".min");
            b.hi = parse_point(require(list[i], "max", what), what + ".max");
            for (int ax = 0; ax < 3; ++ax)
                if (b.lo[ax] > b.hi[ax])
                    throw ConfigError(what + ": min must not exceed max");
            s.obstacles.push_back(b);
        }
    }

    // Constants
    if (config.contains("constants"))
    {
        const json &c = config.at("constants");
        if (!c.is_object())
            throw ConfigError("constants: expected an object");
        auto &k = s.constants;
        k.beta_dB = number_or(c, "beta_dB", k.beta_dB, "constants");
        if (c.contains("alpha"))
        {
            const json &a = c.at("alpha");
            if (a.is_number())
            {
                double v = a.get<double>();
                k.alpha_bs_irs = k.alpha_irs_irs = k.alpha_irs_user = k.alpha_bs_user = v;
            }
            else if (a.is_object())
            {
                k.alpha_bs_irs = number_or(a, "bs_irs", k.alpha_bs_irs, "constants.alpha");
                k.alpha_irs_irs = number_or(a, "irs_irs", k.alpha_irs_irs, "constants.alpha");
                k.alpha_irs_user = number_or(a, "irs_user", k.alpha_irs_user, "constants.alpha");
                k.alpha_bs_user = number_or(a, "bs_user", k.alpha_bs_user, "constants.alpha");
                k.alpha_nlos = number_or(a, "nlos", k.alpha_nlos, "constants.alpha");
            }
            else
                throw ConfigError("constants.alpha: expected a number or an object");
        }
        k.kappa_dB = number_or(c, "kappa_dB", k.kappa_dB, "constants");
        k.carrier_freq_Hz = number_or(c, "carrier_freq_Hz", k.carrier_freq_Hz, "constants");
        k.noise_power_dBm = number_or(c, "noise_power_dBm", k.noise_power_dBm, "constants");
        k.tx_power_dBm = number_or(c, "tx_power_dBm", k.tx_power_dBm, "constants");
        if (c.contains("direct_links"))
        {
            if (!c.at("direct_links").is_boolean())
                throw ConfigError("constants.direct_links must be a boolean");
            k.direct_links = c.at("direct_links").get<bool>();
        }
        if (!(k.carrier_freq_Hz > 0.0))
            throw ConfigError("constants.carrier_freq_Hz must be positive");
    }

    // Effective regions
    int J = s.num_irs();
    int K = s.num_users();
    if (config.contains("effective_regions") && !config.at("effective_regions").is_null())
    {
        const json &r = config.at("effective_regions");
        if (!r.is_array() || static_cast<int>(r.size()) != K)
            throw ConfigError("effective_regions: expected one IRS list per user");
        for (size_t k = 0; k < r.size(); ++k)
        {
            if (!r[k].is_array())
                throw ConfigError("effective_regions: each entry must be an array of IRS ids");
            std::vector<int> ids;
            for (const auto &v : r[k])
            {
                if (!v.is_number_integer())
                    throw ConfigError("effective_regions: IRS ids must be integers");
                int id = v.get<int>();
                if (id < 1 || id > J)
                    throw ConfigError("effective_regions: IRS id " + std::to_string(id) + " out of range 1.." +
                                      std::to_string(J));
                ids.push_back(id);
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            s.effective_regions.push_back(ids);
        }
    }
    else
    {
        std::vector<int> all(static_cast<size_t>(J));
        for (int j = 0; j < J; ++j)
            all[static_cast<size_t>(j)] = j + 1;
        s.effective_regions.assign(static_cast<size_t>(K), all);
    }

    // No node may sit inside (or on) an obstacle.
    for (int node = 0; node < s.num_nodes(); ++node)
        for (size_t b = 0; b < s.obstacles.size(); ++b)
            if (s.obstacles[b].contains(s.position(node)))
                throw ConfigError("node " + std::to_string(node) + " lies inside obstacle " + std::to_string(b));

    return s;
}

Scene load_scene(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scene file '" + path + "'");
    json j;
    try
    {
        in >> j;
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
    return build_scene(j);
}

json scene_to_json(const Scene &s)
{
    json out;
    out["bs"] = {{"position", point_json(s.bs.position)},
                 {"antennas", s.bs.array.size()},
                 {"rows", s.bs.array.rows},
                 {"normal", point_json(s.bs.array.normal)},
                 {"spacing_wavelengths", s.bs.array.spacing_wl}};
    out["irs"] = json::array();
    for (const auto &irs : s.irs)
        out["irs"].push_back({{"position", point_json(irs.position)},
                              {"pointing_normal", point_json(irs.normal())},
                              {"cols", irs.array.cols},
                              {"rows", irs.array.rows},
                              {"spacing_wavelengths", irs.array.spacing_wl}});
    out["users"] = json::array();
    for (const auto &u : s.users)
        out["users"].push_back(point_json(u));
    out["obstacles"] = json::array();
    for (const auto &b : s.obstacles)
        out["obstacles"].push_back({{"min", point_json(b.lo)}, {"max", point_json(b.hi)}});
    const auto &k = s.constants;
    out["constants"] = {{"beta_dB", k.beta_dB},
                        {"alpha",
                         {{"bs_irs", k.alpha_bs_irs},
                          {"irs_irs", k.alpha_irs_irs},
                          {"irs_user", k.alpha_irs_user},
                          {"bs_user", k.alpha_bs_user},
                          {"nlos", k.alpha_nlos}}},
                        {"carrier_freq_Hz", k.carrier_freq_Hz},
                        {"noise_power_dBm", k.noise_power_dBm},
                        {"tx_power_dBm", k.tx_power_dBm},
                        {"direct_links", k.direct_links}};
    if (std::isinf(k.kappa_dB))
        out["constants"]["kappa_dB"] = "inf";
    else
        out["constants"]["kappa_dB"] = k.kappa_dB;
    out["effective_regions"] = s.effective_regions;
    return out;
}

// ---- geometry ------------------------------------------------------------------------------

bool segment_hits_box(const vec3 &a, const vec3 &b, const Box &box)
{
    double t0 = 0.0;
    double t1 = 1.0;
    for (int ax = 0; ax < 3; ++ax)
    {
        double d = b[ax] - a[ax];
        if (d == 0.0)
        {
            if (a[ax] < box.lo[ax] || a[ax] > box.hi[ax])
                return false;
            continue;
        }
        double ta = (box.lo[ax] - a[ax]) / d;
        double tb = (box.hi[ax] - a[ax]) / d;
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1)
            return false;
    }
    return true;
}

bool has_geometric_los(const Scene &scene, int i, int j)
{
    const vec3 &a = scene.position(i);
    const vec3 &b = scene.position(j);
    for (const auto &box : scene.obstacles)
        if (segment_hits_box(a, b, box))
            return false;
    return true;
}

bool half_space_ok(const Scene &scene, int j, const vec3 &p)
{
    const Irs &irs = scene.irs_at(j);
    return irs.normal().dot(p - irs.position) > 0.0;
}

namespace
{

int link_rule(const Scene &scene, int i, int j, bool need_los)
{
    if (i == j || j == 0 || scene.is_user(i))
        return 0;
    if (scene.is_bs(i) && scene.is_user(j))
        return need_los ? static_cast<int>(has_geometric_los(scene, i, j)) : 1;
    if (scene.is_user(j) && !scene.in_region(scene.user_of(j), i))
        return 0;
    if (scene.is_irs(j) && !(scene.distance(0, j) > scene.distance(0, i)))
        return 0;
    if (scene.is_irs(i) && !half_space_ok(scene, i, scene.position(j)))
        return 0;
    if (scene.is_irs(j) && !half_space_ok(scene, j, scene.position(i)))
        return 0;
    if (need_los && !has_geometric_los(scene, i, j))
        return 0;
    return 1;
}

LoSGraph build_graph(const Scene &scene, int k, bool need_los)
{
    if (k < 1 || k > scene.num_users())
        throw std::out_of_range("user index out of range");
    LoSGraph g;
    g.user = k;
    g.user_node = scene.user_node(k);
    g.num_irs = scene.num_irs();
    g.out.assign(static_cast<size_t>(scene.num_nodes()), {});

    const auto &region = scene.effective_regions[static_cast<size_t>(k - 1)];
    g.vertices.push_back(0);
    g.vertices.insert(g.vertices.end(), region.begin(), region.end());
    g.vertices.push_back(g.user_node);

    std::vector<int> sources{0};
    sources.insert(sources.end(), region.begin(), region.end());
    std::vector<int> targets(region.begin(), region.end());
    targets.push_back(g.user_node);

    for (int i : sources)
        for (int j : targets)
        {
            if (i == 0 && j == g.user_node)
                continue; // the direct link is not a reflection path
            if (link_rule(scene, i, j, need_los))
            {
                Edge e{i, j, scene.distance(i, j)};
                g.edges.push_back(e);
                g.out[static_cast<size_t>(i)].push_back(e);
            }
        }
    return g;
}

} // namespace

int los_indicator(const Scene &scene, int i, int j) { return link_rule(scene, i, j, true); }

int admissible_link(const Scene &scene, int i, int j) { return link_rule(scene, i, j, false); }

LosTable::LosTable(const Scene &scene) : n_(scene.num_nodes()), u_(static_cast<size_t>(n_ * n_), 0)
{
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            u_[static_cast<size_t>(i * n_ + j)] = static_cast<std::uint8_t>(los_indicator(scene, i, j));
}

bool LoSGraph::has_edge(int i, int j) const
{
    if (i < 0 || static_cast<size_t>(i) >= out.size())
        return false;
    for (const auto &e : out[static_cast<size_t>(i)])
        if (e.to == j)
            return true;
    return false;
}

double LoSGraph::edge_distance(int i, int j) const
{
    for (const auto &e : out.at(static_cast<size_t>(i)))
        if (e.to == j)
            return e.distance;
    throw std::out_of_range("no edge " + std::to_string(i) + "->" + std::to_string(j));
}

LoSGraph build_los_graph(const Scene &scene, int k) { return build_graph(scene, k, true); }

LoSGraph build_admissible_graph(const Scene &scene, int k) { return build_graph(scene, k, false); }

LoSGraph path_graph(const Scene &scene, int k, const std::vector<int> &irs_sequence)
{
    if (irs_sequence.empty())
        throw std::invalid_argument("path_graph: empty IRS sequence");
    LoSGraph g;
    g.user = k;
    g.user_node = scene.user_node(k);
    g.num_irs = scene.num_irs();
    g.out.assign(static_cast<size_t>(scene.num_nodes()), {});
    std::vector<int> nodes{0};
    for (int a : irs_sequence)
    {
        if (!scene.is_irs(a))
            throw std::invalid_argument("path_graph: node " + std::to_string(a) + " is not an IRS");
        nodes.push_back(a);
    }
    nodes.push_back(g.user_node);
    g.vertices = nodes;
    std::sort(g.vertices.begin(), g.vertices.end());
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
    {
        Edge e{nodes[i], nodes[i + 1], scene.distance(nodes[i], nodes[i + 1])};
        g.edges.push_back(e);
        g.out[static_cast<size_t>(e.from)].push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge &a, const Edge &b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    return g;
}

LoSGraph without_vertices(const LoSGraph &g, const std::vector<int> &removed)
{
    auto gone = [&](int v) { return std::find(removed.begin(), removed.end(), v) != removed.end(); };
    LoSGraph r;
    r.user = g.user;
    r.user_node = g.user_node;
    r.num_irs = g.num_irs;
    r.out.assign(g.out.size(), {});
    for (int v : g.vertices)
        if (v == 0 || v == g.user_node || !gone(v))
            r.vertices.push_back(v);
    for (const auto &e : g.edges)
    {
        if (gone(e.from) || gone(e.to))
            continue;
        r.edges.push_back(e);
        r.out[static_cast<size_t>(e.from)].push_back(e);
    }
    return r;
}

std::vector<std::vector<int>> enumerate_paths(const LoSGraph &g, size_t max_paths)
{
    std::vector<std::vector<int>> paths;
    std::vector<int> current;
    bool full = false;

    // Terminating at the user before descending yields lexicographic order directly.
    std::function<void(int)> visit = [&](int v) {
        if (full)
            return;
        const auto &edges = g.out[static_cast<size_t>(v)];
        if (v != 0)
            for (const auto &e : edges)
                if (e.to == g.user_node)
                {
                    paths.push_back(current);
                    if (max_paths && paths.size() >= max_paths)
                        full = true;
                    break;
                }
        for (const auto &e : edges)
        {
            if (full)
                return;
            if (e.to == g.user_node)
                continue;
            current.push_back(e.to);
            visit(e.to);
            current.pop_back();
        }
    };
    visit(0);
    return paths;
}

bool is_acyclic(const LoSGraph &g)
{
    std::vector<int> indeg(g.out.size(), 0);
    for (const auto &e : g.edges)
        ++indeg[static_cast<size_t>(e.to)];
    std::queue<int> ready;
    for (int v : g.vertices)
        if (indeg[static_cast<size_t>(v)] == 0)
            ready.push(v);
    size_t seen = 0;
    while (!ready.empty())
    {
        int v = ready.front();
        ready.pop();
        ++seen;
        for (const auto &e : g.out[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(e.to)] == 0)
                ready.push(e.to);
    }
    return seen == g.vertices.size();
}

} // namespace irsnet

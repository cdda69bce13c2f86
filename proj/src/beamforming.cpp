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

#include "irsnet/beamforming.hpp"

#include <algorithm>
#include <numeric>

namespace irsnet
{

std::pair<cvec, cvec> optimal_double_reflection_phases(const cvec &v1, const cvec &v2)
{
    auto align = [](const cvec &v) {
        cvec p(v.size());
        for (Eigen::Index m = 0; m < v.size(); ++m)
            p(m) = std::conj(unit_phase(v(m)));
        return p;
    };
    return {align(v1), align(v2)};
}

double double_reflection_gain(cplx rho, const cvec &v1, const cvec &v2)
{
    double l1 = v1.cwiseAbs().sum();
    double l2 = v2.cwiseAbs().sum();
    return std::norm(rho) * l1 * l1 * l2 * l2;
}

PhaseConfig multi_hop_phases(const ChannelSet &channels, const Scene &scene, int k, const std::vector<int> &path,
                             PhaseConfig base)
{
    if (path.empty())
        throw std::invalid_argument("multi_hop_phases: empty path");
    const int user = scene.user_node(k);
    for (size_t i = 0; i < path.size(); ++i)
    {
        const int prev = i == 0 ? 0 : path[i - 1];
        const int next = i + 1 < path.size() ? path[i + 1] : user;
        const LinkChannel &in = channels.link(prev, path[i]);
        const LinkChannel &out = channels.link(path[i], next);
        if (!in.has_los || !out.has_los)
            throw std::invalid_argument("multi_hop_phases: hop without LoS component at IRS " +
                                        std::to_string(path[i]));
        base.at(path[i]) = in.resp_to.cwiseProduct(out.resp_from).conjugate();
    }
    return base;
}

cvec bs_mrt(const cvec &q)
{
    double n = q.norm();
    if (!(n > 0.0))
        throw std::invalid_argument("bs_mrt: zero channel");
    return q / n;
}

cvec bs_mrt_to_first_irs(const ChannelSet &channels, int first_irs)
{
    return bs_mrt(channels.link(0, first_irs).resp_from);
}

double closed_form_path_gain(int n, double M, double n_b, double beta, const std::vector<double> &distances)
{
    if (static_cast<int>(distances.size()) != n + 1)
        throw std::invalid_argument("closed_form_path_gain: expected n+1 distances");
    double g = std::pow(M, 2.0 * n) * n_b * std::pow(beta, n + 1);
    for (double d : distances)
        g /= d * d;
    return g;
}

namespace
{
double los_alpha(const Scene &scene, int i, int j)
{
    const auto &c = scene.constants;
    if (scene.is_bs(i))
        return scene.is_user(j) ? c.alpha_bs_user : c.alpha_bs_irs;
    return scene.is_user(j) ? c.alpha_irs_user : c.alpha_irs_irs;
}
} // namespace

double path_gain(const Scene &scene, int k, const std::vector<int> &path)
{
    double g = scene.bs.array.size();
    int prev = 0;
    const double beta = scene.constants.beta();
    for (int a : path)
    {
        double m = scene.elements(a);
        g *= m * m * path_loss(scene.distance(prev, a), los_alpha(scene, prev, a), beta);
        prev = a;
    }
    const int user = scene.user_node(k);
    return g * path_loss(scene.distance(prev, user), los_alpha(scene, prev, user), beta);
}

double path_gain_with_direct(double path_gain_value, const cvec &f, const cvec &q_tilde)
{
    const double n_b = static_cast<double>(q_tilde.size());
    return f.squaredNorm() + path_gain_value + 2.0 * std::sqrt(path_gain_value / n_b) * std::abs(q_tilde.dot(f));
}

DirectCombining combine_path_with_direct(const ChannelSet &channels, const Scene &scene, int k,
                                         const std::vector<int> &path, const PhaseConfig &base)
{
    DirectCombining out;
    out.phases = multi_hop_phases(channels, scene, k, path, base);
    cvec p = cascaded_path_channel(channels, scene, k, path, out.phases);
    cvec f = channels.direct(scene.user_node(k));
    const cplx psi = unit_phase(p.dot(f));
    out.phases.at(path.front()) *= psi;
    cvec h = f + psi * p;
    out.gain = h.squaredNorm();
    out.w = h.norm() > 0.0 ? cvec(h / h.norm()) : cvec(bs_mrt_to_first_irs(channels, path.front()));
    return out;
}

double common_phase_combine(cplx a_s, cplx a_d)
{
    if (a_d == cplx(0.0, 0.0))
        return 0.0;
    return std::arg(a_s / a_d);
}

// ---- alternating optimization -------------------------------------------------------------

namespace
{

cvec mrt_or_first(const cvec &h)
{
    double n = h.norm();
    if (n > 0.0)
        return h / n;
    cvec w = cvec::Zero(h.size());
    w(0) = 1.0;
    return w;
}

AoResult ao_single_run(const ChannelSet &channels, const Scene &scene, const LoSGraph &g, PhaseConfig phases,
                       const AoOptions &opt)
{
    std::vector<int> irs_nodes;
    for (int v : g.vertices)
        if (scene.is_irs(v))
            irs_nodes.push_back(v);

    AoResult res;
    cvec h = graph_channel(channels, scene, g, phases, opt.include_direct);
    double prev = h.squaredNorm();
    res.history.push_back(prev);
    for (int it = 0; it < opt.max_iters; ++it)
    {
        cvec w = mrt_or_first(h);
        for (int j : irs_nodes)
        {
            AffineForm af = irs_affine_form(channels, scene, g, phases, j, opt.include_direct);
            cvec b = af.A.transpose() * w.conjugate();
            cvec &theta = phases.at(j);
            cplx t = w.dot(af.h_rest) + (b.array() * theta.array()).sum();
            for (Eigen::Index m = 0; m < theta.size(); ++m)
            {
                if (std::abs(b(m)) == 0.0)
                    continue;
                cplx rest = t - b(m) * theta(m);
                cplx nt = unit_phase(rest) * std::conj(unit_phase(b(m)));
                t = rest + b(m) * nt;
                theta(m) = nt;
            }
        }
        h = graph_channel(channels, scene, g, phases, opt.include_direct);
        double obj = h.squaredNorm();
        res.history.push_back(obj);
        res.iterations = it + 1;
        if (obj - prev <= opt.tol * std::max(prev, 1e-300))
        {
            res.converged = true;
            break;
        }
        prev = obj;
    }

    const double snr = scene.constants.tx_mw() / scene.constants.noise_mw();
    res.solution.phases = std::move(phases);
    res.solution.bs_beams = {mrt_or_first(h)};
    res.solution.gains = {h.squaredNorm()};
    res.solution.sinrs = {snr * h.squaredNorm()};
    return res;
}

} // namespace

AoResult ao_joint_beamforming(const ChannelSet &channels, const Scene &scene, const LoSGraph &g,
                              const PhaseConfig &init, const AoOptions &opt)
{
    AoResult best = ao_single_run(channels, scene, g, init, opt);
    Rng rng(substream_seed(opt.seed, 0xA0));
    std::uniform_real_distribution<double> ud(-pi, pi);
    for (int r = 0; r < opt.restarts; ++r)
    {
        PhaseConfig p = init;
        for (auto &t : p.theta)
            for (Eigen::Index m = 0; m < t.size(); ++m)
                t(m) = std::polar(1.0, ud(rng));
        AoResult cand = ao_single_run(channels, scene, g, p, opt);
        if (cand.solution.gains[0] > best.solution.gains[0])
            best = std::move(cand);
    }
    return best;
}

// ---- receivers -----------------------------------------------------------------------------

int numerical_rank(const cmat &m, double rel_tol)
{
    if (m.size() == 0)
        return 0;
    Eigen::JacobiSVD<cmat> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0))
            ++r;
    return r;
}

namespace
{

cmat pseudo_inverse(const cmat &H, double rel_tol, int &rank)
{
    Eigen::JacobiSVD<cmat> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(0) > 0.0 && s(i) > rel_tol * s(0))
        {
            inv(i) = 1.0 / s(i);
            ++rank;
        }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

} // namespace

ReceiverResult linear_receivers(const cmat &H, double p, double sigma2, Receiver type)
{
    const Eigen::Index n_b = H.rows();
    const Eigen::Index K = H.cols();
    ReceiverResult res;
    res.W = cmat::Zero(n_b, K);

    switch (type)
    {
    case Receiver::ZF: {
        int rank = 0;
        cmat pinv = pseudo_inverse(H, 1e-9, rank);
        res.W = pinv.adjoint();
        res.rank_deficient = rank < K;
        break;
    }
    case Receiver::MMSE: {
        for (Eigen::Index k = 0; k < K; ++k)
        {
            cmat R = sigma2 * cmat::Identity(n_b, n_b);
            for (Eigen::Index j = 0; j < K; ++j)
                if (j != k)
                    R += p * H.col(j) * H.col(j).adjoint();
            res.W.col(k) = R.ldlt().solve(H.col(k));
        }
        break;
    }
    case Receiver::MRT:
        res.W = H;
        break;
    }

    res.sinr.assign(static_cast<size_t>(K), 0.0);
    for (Eigen::Index k = 0; k < K; ++k)
    {
        double n = res.W.col(k).norm();
        if (!(n > 0.0))
            continue;
        res.W.col(k) /= n;
        cvec w = res.W.col(k);
        double interf = 0.0;
        for (Eigen::Index j = 0; j < K; ++j)
            if (j != k)
                interf += std::norm(w.dot(H.col(j)));
        res.sinr[static_cast<size_t>(k)] = p * std::norm(w.dot(H.col(k))) / (p * interf + sigma2);
    }
    return res;
}

std::vector<double> downlink_sinrs(const std::vector<cvec> &h, const std::vector<cvec> &w, double p, double sigma2)
{
    std::vector<double> out(h.size(), 0.0);
    for (size_t k = 0; k < h.size(); ++k)
    {
        double interf = 0.0;
        for (size_t j = 0; j < w.size(); ++j)
            if (j != k)
                interf += std::norm(w[j].dot(h[k]));
        out[k] = p * std::norm(w[k].dot(h[k])) / (p * interf + sigma2);
    }
    return out;
}

RankReport channel_rank_gain_check(const cmat &g2, const cmat &q02, const cmat &h_single, const cmat &h_double)
{
    RankReport r;
    r.rank_g2 = numerical_rank(g2);
    r.rank_q02 = numerical_rank(q02);
    r.rank_single = numerical_rank(h_single);
    r.rank_double = numerical_rank(h_double);
    const int K = static_cast<int>(h_double.cols());
    r.bound = std::min({r.rank_g2, r.rank_q02, K - r.rank_single});
    r.holds = r.rank_double - r.rank_single >= r.bound;
    return r;
}

} // namespace irsnet

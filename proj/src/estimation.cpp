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

#include "irsnet/estimation.hpp"

#include <algorithm>

namespace irsnet
{

namespace
{
long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }
} // namespace

long long overhead_double_irs_single_user(long long M, long long n_b)
{
    if (M < 1 || n_b < 1)
        throw std::invalid_argument("overhead: M and N_B must be >= 1");
    return 2 * M + std::max(M, ceil_div(M * M, n_b));
}

long long overhead_multi_user_extra(long long M, long long n_b, long long K)
{
    if (M < 1 || n_b < 1 || K < 1)
        throw std::invalid_argument("overhead: M, N_B and K must be >= 1");
    return std::max(K - 1, ceil_div(2 * (K - 1) * M, n_b));
}

long long overhead_benchmark_siso_general(long long M)
{
    if (M < 1)
        throw std::invalid_argument("overhead: M must be >= 1");
    return M * M;
}

cvec dft_row(int M, int n)
{
    cvec r(M);
    for (int m = 0; m < M; ++m)
        r(m) = std::polar(1.0, -2.0 * pi * static_cast<double>((static_cast<long long>(n) * m) % M) / M);
    return r;
}

std::vector<TrainingPair> dft_training_design(int M)
{
    std::vector<TrainingPair> t;
    for (int b = 0; b < M; ++b)
        for (int a = 0; a < M; ++a)
            t.push_back({dft_row(M, a), dft_row(M, b)});
    return t;
}

cplx cascaded_observation(const cmat &S, const cvec &phi1, const cvec &phi2)
{
    return (phi1.transpose() * S * phi2)(0, 0);
}

cmat cascaded_siso_channel(const cvec &q, const cmat &S, const cvec &g)
{
    return q.asDiagonal() * S * g.asDiagonal();
}

cmat ls_estimate_cascaded_siso(const std::vector<TrainingPair> &training, const cvec &y, int M)
{
    const Eigen::Index T = static_cast<Eigen::Index>(training.size());
    const Eigen::Index n = static_cast<Eigen::Index>(M) * M;
    if (y.size() != T)
        throw std::invalid_argument("ls_estimate_cascaded_siso: one observation per training pair expected");
    cmat X(T, n);
    for (Eigen::Index t = 0; t < T; ++t)
    {
        const auto &tp = training[static_cast<size_t>(t)];
        if (tp.phi1.size() != M || tp.phi2.size() != M)
            throw std::invalid_argument("ls_estimate_cascaded_siso: pattern length must be M");
        for (int b = 0; b < M; ++b)
            for (int a = 0; a < M; ++a)
                X(t, b * M + a) = tp.phi1(a) * tp.phi2(b);
    }
    Eigen::ColPivHouseholderQR<cmat> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < n)
        throw EstimationError("training matrix has rank " + std::to_string(qr.rank()) + " < M^2 = " +
                              std::to_string(n) + "; the cascaded channel is under-determined");
    cvec s = qr.solve(y);
    return Eigen::Map<const cmat>(s.data(), M, M);
}

DecoupledEstimate ls_estimate_los_decoupled(const Observer &observe, int M, double tol, int validation)
{
    if (M < 1)
        throw std::invalid_argument("ls_estimate_los_decoupled: M must be >= 1");
    if (validation < 0)
        validation = M;
    const cvec ones = cvec::Ones(M);

    // DFT rows are orthogonal: F^H F = M I with row n of F equal to dft_row(M, n).
    cmat F(M, M);
    for (int n = 0; n < M; ++n)
        F.row(n) = dft_row(M, n).transpose();
    cvec y1(M), y2(M);
    for (int n = 0; n < M; ++n)
        y1(n) = observe(F.row(n).transpose(), ones);
    for (int n = 0; n < M; ++n)
        y2(n) = observe(ones, F.row(n).transpose());
    cvec x1 = F.adjoint() * y1 / static_cast<double>(M); // S 1
    cvec x2 = F.adjoint() * y2 / static_cast<double>(M); // S^T 1

    cplx h0 = x1.sum();
    if (std::abs(h0) <= 1e-300)
        throw EstimationError("decoupled estimation: reference observation is zero");
    DecoupledEstimate e;
    e.v1 = x1;
    e.v2 = x2 / h0;
    const cplx c = std::conj(unit_phase(e.v1(0)));
    e.v1 *= c;
    e.v2 /= c;
    e.pilots = 2 * M;

    // Validation pairs avoid row 0 (all ones), which the fit reproduces by construction.
    double num = 0.0, den = 0.0;
    for (int t = 0; t < validation && M > 1; ++t)
    {
        cvec p1 = dft_row(M, 1 + t % (M - 1));
        cvec p2 = dft_row(M, 1 + (3 * t + 1) % (M - 1));
        cplx y = observe(p1, p2);
        num += std::norm(y - e.predict(p1, p2));
        den += std::norm(y);
    }
    e.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    if (e.residual > tol)
        throw EstimationError("decoupled estimation: residual " + std::to_string(e.residual) +
                              " exceeds tolerance; the inter-IRS channel is not rank one");
    return e;
}

DoubleIrsCascade cascaded_forms(const cmat &H01, const cmat &H02, const cmat &S12, const cvec &g1, const cvec &g2,
                                double zero_tol)
{
    DoubleIrsCascade c;
    c.R1 = H01 * g1.asDiagonal();
    c.R2 = H02 * g2.asDiagonal();
    c.S_bar = S12 * g2.asDiagonal();
    const double gmax = g1.cwiseAbs().maxCoeff();
    for (Eigen::Index m = 0; m < g1.size(); ++m)
        if (std::abs(g1(m)) <= zero_tol * gmax)
            c.near_zero.push_back(static_cast<int>(m));
    for (Eigen::Index m = 0; m < c.S_bar.cols(); ++m)
    {
        cvec s = c.S_bar.col(m);
        c.S_tilde.push_back(H01 * s.asDiagonal());
        cvec a(s.size());
        for (Eigen::Index i = 0; i < s.size(); ++i)
            a(i) = std::abs(g1(i)) <= zero_tol * gmax ? cplx(0.0, 0.0) : s(i) / g1(i);
        c.a.push_back(a);
    }
    return c;
}

cvec double_irs_channel(const cvec &f, const cmat &H01, const cmat &H02, const cmat &S12, const cvec &g1,
                        const cvec &g2, const cvec &phi1, const cvec &phi2)
{
    return f + H01 * phi1.cwiseProduct(g1) + H02 * phi2.cwiseProduct(g2) +
           H01 * phi1.asDiagonal() * S12 * phi2.cwiseProduct(g2);
}

cvec double_irs_channel(const cvec &f, const DoubleIrsCascade &c, const cvec &phi1, const cvec &phi2)
{
    cvec h = f + c.R1 * phi1 + c.R2 * phi2;
    for (size_t m = 0; m < c.a.size(); ++m)
        h += c.R1 * c.a[m].cwiseProduct(phi1) * phi2(static_cast<Eigen::Index>(m));
    return h;
}

ScalingVector user_scaling_vector(const cvec &g_ref, const cvec &g_k, double zero_tol)
{
    ScalingVector s;
    s.b = cvec::Zero(g_ref.size());
    const double gmax = g_ref.cwiseAbs().maxCoeff();
    for (Eigen::Index m = 0; m < g_ref.size(); ++m)
    {
        if (std::abs(g_ref(m)) <= zero_tol * gmax)
            s.near_zero.push_back(static_cast<int>(m));
        else
            s.b(m) = g_k(m) / g_ref(m);
    }
    return s;
}

double nmse(const cmat &estimate, const cmat &truth)
{
    return (estimate - truth).squaredNorm() / truth.squaredNorm();
}

} // namespace irsnet

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

#ifndef IRSNET_COMMON_HPP
#define IRSNET_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace irsnet
{

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using vec3 = Eigen::Vector3d;

constexpr double pi = std::numbers::pi;
constexpr double speed_of_light = 299792458.0;
constexpr double infinity = std::numeric_limits<double>::infinity();

// Error types. The CLI maps ConfigError to exit code 2 and the infeasibility family to 3.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct NoFeasiblePath : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Infeasible : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct NotTrainable : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// splitmix64 finalizer, used to derive independent RNG substreams from (seed, tags...)
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0, std::uint64_t d = 0)
{
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ a);
    s = mix64(s ^ (b + 0x632be59bd9b4e019ULL));
    s = mix64(s ^ (c + 0x85157af5ULL));
    s = mix64(s ^ (d + 0x1d8e4e27c47d124fULL));
    return s;
}

using Rng = std::mt19937_64;

// Circularly-symmetric complex Gaussian matrix with unit-variance entries.
inline cmat complex_gaussian(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    cmat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            double re = nd(rng);
            double im = nd(rng);
            m(r, c) = cplx(re, im);
        }
    return m;
}

// Unit-modulus entry e^{j*angle(z)}; zero maps to 1 (phase 0).
inline cplx unit_phase(cplx z)
{
    double a = std::abs(z);
    return a > 0.0 ? z / a : cplx(1.0, 0.0);
}

} // namespace irsnet

#endif

// SPDX-License-Identifier: Apache-2.0
//
// beamest: beam-domain channel estimation for spatially non-stationary massive MIMO
// Copyright (C) 2026 The beamest authors
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


#pragma once

// Small helpers shared by the unit tests: seeded random inputs and naive reference loops.

#include "beamest/linalg.hpp"
#include "beamest/random.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace beamest::testing
{

inline std::vector<cplx> random_cvec(std::size_t n, Rng &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto &x : v)
        x = {g(rng), g(rng)};
    return v;
}

inline ComplexMatrix random_cmat(std::size_t rows, std::size_t cols, Rng &rng)
{
    ComplexMatrix a(rows, cols);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r)
            a(r, c) = {g(rng), g(rng)};
    return a;
}

// Naive column-major product.
inline ComplexMatrix naive_multiply(const ComplexMatrix &a, const ComplexMatrix &b)
{
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            cplx s = 0.0;
            for (std::size_t t = 0; t < a.cols(); ++t)
                s += a(i, t) * b(t, j);
            out(i, j) = s;
        }
    return out;
}

// Gauss-Jordan inverse with partial pivoting (small matrices only).
inline ComplexMatrix naive_inverse(ComplexMatrix a)
{
    const std::size_t n = a.rows();
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c)))
                piv = r;
        for (std::size_t j = 0; j < n; ++j)
        {
            std::swap(a(c, j), a(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        const cplx d = a(c, c);
        for (std::size_t j = 0; j < n; ++j)
        {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == c)
                continue;
            const cplx f = a(r, c);
            for (std::size_t j = 0; j < n; ++j)
            {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline double max_abs(std::span<const cplx> v)
{
    double m = 0.0;
    for (const auto &x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace beamest::testing

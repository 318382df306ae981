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

#include "beamest/linalg.hpp"

#include "beamest/error.hpp"
#include "beamest/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace beamest
{
namespace
{

constexpr double kRankTolerance = 1e-10;
constexpr double kRidgeScale = 1e-10;

bool finite(std::span<const cplx> x)
{
    return std::all_of(x.begin(), x.end(),
                       [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

// (A^H A + lambda I) x = A^H y by a Hermitian Cholesky factorization.
ComplexVector ridge_solve(const ComplexMatrix &a, std::span<const cplx> y)
{
    const auto &k = kernels::active();
    const std::size_t m = a.cols();
    ComplexMatrix g(m, m);
    double trace = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            g(i, j) = k.cdotc(a.col(i).data(), a.col(j).data(), a.rows());
    for (std::size_t i = 0; i < m; ++i)
        trace += g(i, i).real();
    const double lambda = kRidgeScale * trace / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
        g(i, i) += lambda;

    // Lower factor, L(i,j) for i >= j, stored in g.
    for (std::size_t j = 0; j < m; ++j)
    {
        double d = g(j, j).real();
        for (std::size_t p = 0; p < j; ++p)
            d -= std::norm(g(j, p));
        if (!(d > 0.0))
            throw RankDeficient("ls_solve: ridge-regularized system is not positive definite");
        const double ljj = std::sqrt(d);
        g(j, j) = ljj;
        for (std::size_t i = j + 1; i < m; ++i)
        {
            cplx s = g(i, j);
            for (std::size_t p = 0; p < j; ++p)
                s -= g(i, p) * std::conj(g(j, p));
            g(i, j) = s / ljj;
        }
    }

    ComplexVector b = adjoint_multiply(a, y);
    for (std::size_t i = 0; i < m; ++i)
    {
        cplx s = b[i];
        for (std::size_t p = 0; p < i; ++p)
            s -= g(i, p) * b[p];
        b[i] = s / g(i, i).real();
    }
    for (std::size_t ii = m; ii-- > 0;)
    {
        cplx s = b[ii];
        for (std::size_t p = ii + 1; p < m; ++p)
            s -= std::conj(g(p, ii)) * b[p];
        b[ii] = s / g(ii, ii).real();
    }
    if (!finite(b.span()))
        throw RankDeficient("ls_solve: ridge fallback produced a non-finite solution");
    return b;
}

} // namespace

LsSolution ls_solve_ex(const ComplexMatrix &a, std::span<const cplx> y)
{
    const std::size_t rows = a.rows(), m = a.cols();
    if (y.size() != rows)
        throw DimensionMismatch("ls_solve: A has " + std::to_string(rows) + " rows, y has " +
                                std::to_string(y.size()) + " entries");
    if (m == 0)
        return {};
    if (m > rows)
        throw DimensionMismatch("ls_solve: underdetermined system (" + std::to_string(rows) + "x" +
                                std::to_string(m) + ")");

    const auto &k = kernels::active();
    ComplexMatrix w = a;
    std::vector<cplx> b(y.begin(), y.end());
    std::vector<cplx> diag(m);

    // Householder QR; reflector j overwrites w(j:, j), its diagonal goes to diag[j].
    for (std::size_t j = 0; j < m; ++j)
    {
        cplx *v = w.col(j).data() + j;
        const std::size_t len = rows - j;
        const double normx = std::sqrt(k.cnorm2(v, len));
        if (normx == 0.0)
        {
            diag[j] = 0.0;
            continue;
        }
        const double abs0 = std::abs(v[0]);
        const cplx phase = abs0 > 0.0 ? v[0] / abs0 : cplx(1.0);
        const cplx alpha = -phase * normx;
        v[0] -= alpha;
        const double vnorm2 = 2.0 * normx * (normx + abs0);
        for (std::size_t c = j + 1; c < m; ++c)
        {
            cplx *col = w.col(c).data() + j;
            const cplx s = k.cdotc(v, col, len);
            k.caxpy(-2.0 * s / vnorm2, v, col, len);
        }
        const cplx s = k.cdotc(v, b.data() + j, len);
        k.caxpy(-2.0 * s / vnorm2, v, b.data() + j, len);
        diag[j] = alpha;
    }

    double max_diag = 0.0, min_diag = std::numeric_limits<double>::infinity();
    for (const auto &d : diag)
    {
        max_diag = std::max(max_diag, std::abs(d));
        min_diag = std::min(min_diag, std::abs(d));
    }
    if (!(max_diag > 0.0) || min_diag < kRankTolerance * max_diag)
        return {ridge_solve(a, y), true};

    ComplexVector x(m);
    for (std::size_t ii = m; ii-- > 0;)
    {
        cplx s = b[ii];
        for (std::size_t c = ii + 1; c < m; ++c)
            s -= w(ii, c) * x[c];
        x[ii] = s / diag[ii];
    }
    if (!finite(x.span()))
        return {ridge_solve(a, y), true};
    return {std::move(x), false};
}

ComplexVector ls_solve(const ComplexMatrix &a, std::span<const cplx> y) { return ls_solve_ex(a, y).x; }

} // namespace beamest

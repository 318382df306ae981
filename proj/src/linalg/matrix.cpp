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
#include <numbers>
#include <string>

namespace beamest
{

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, cplx value)
    : rows_(rows), cols_(cols), data_(rows * cols, value)
{
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::size_t rows, std::span<const std::vector<cplx>> columns)
{
    ComplexMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
    {
        if (columns[c].size() != rows)
            throw DimensionMismatch("from_columns: column " + std::to_string(c) + " has length " +
                                    std::to_string(columns[c].size()) + ", expected " + std::to_string(rows));
        std::copy(columns[c].begin(), columns[c].end(), m.col(c).begin());
    }
    return m;
}

bool ComplexMatrix::is_real_valued() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](const cplx &v) { return v.imag() == 0.0; });
}

bool ComplexMatrix::all_finite() const noexcept
{
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexMatrix adjoint(const ComplexMatrix &a)
{
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r)
            out(c, r) = std::conj(a(r, c));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix &a)
{
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r)
            out(c, r) = a(r, c);
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix &a)
{
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r)
            out(r, c) = std::conj(a(r, c));
    return out;
}

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const auto &k = kernels::active();
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = 0; i < a.cols(); ++i)
            k.caxpy(b(i, c), a.col(i).data(), out.col(c).data(), a.rows());
    return out;
}

ComplexVector multiply(const ComplexMatrix &a, std::span<const cplx> x)
{
    if (a.cols() != x.size())
        throw DimensionMismatch("multiply: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                                std::to_string(x.size()) + " entries");
    const auto &k = kernels::active();
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.cols(); ++i)
        k.caxpy(x[i], a.col(i).data(), out.data(), a.rows());
    return out;
}

ComplexVector adjoint_multiply(const ComplexMatrix &a, std::span<const cplx> x)
{
    if (a.rows() != x.size())
        throw DimensionMismatch("adjoint_multiply: matrix has " + std::to_string(a.rows()) + " rows, vector has " +
                                std::to_string(x.size()) + " entries");
    const auto &k = kernels::active();
    ComplexVector out(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        out[i] = k.cdotc(a.col(i).data(), x.data(), a.rows());
    return out;
}

double norm2_squared(std::span<const cplx> x) { return kernels::active().cnorm2(x.data(), x.size()); }

double frobenius_norm(const ComplexMatrix &a) { return std::sqrt(norm2_squared(a.values())); }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("max_abs_diff: lengths " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: matrix shapes differ");
    return max_abs_diff(a.values(), b.values());
}

ComplexVector vectorize(const ComplexMatrix &a)
{
    return ComplexVector(std::vector<cplx>(a.values().begin(), a.values().end()));
}

ComplexMatrix reshape(std::span<const cplx> v, std::size_t rows, std::size_t cols)
{
    if (v.size() != rows * cols)
        throw DimensionMismatch("reshape: " + std::to_string(v.size()) + " entries into " + std::to_string(rows) +
                                "x" + std::to_string(cols));
    ComplexMatrix m(rows, cols);
    std::copy(v.begin(), v.end(), m.data());
    return m;
}

cplx unit_phasor(double cycles)
{
    const double frac = cycles - std::nearbyint(cycles);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
}

double grid_frequency(std::size_t i, std::size_t p)
{
    return static_cast<double>(i + 1) / static_cast<double>(p) - 0.5;
}

ComplexMatrix dft_basis(std::size_t p)
{
    if (p == 0)
        throw InvalidParams("dft_basis: P must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    ComplexMatrix f(p, p);
    for (std::size_t i = 0; i < p; ++i)
    {
        const double theta = grid_frequency(i, p);
        for (std::size_t n = 0; n < p; ++n)
            f(i, n) = scale * unit_phasor(static_cast<double>(n) * theta);
    }
    return f;
}

std::vector<double> gram_correlate(const ComplexMatrix &a, std::span<const cplx> r)
{
    if (a.rows() != r.size())
        throw DimensionMismatch("gram_correlate: matrix has " + std::to_string(a.rows()) + " rows, residual has " +
                                std::to_string(r.size()) + " entries");
    const auto &k = kernels::active();
    std::vector<double> out(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        out[i] = std::abs(k.cdotc(a.col(i).data(), r.data(), a.rows()));
    return out;
}

} // namespace beamest

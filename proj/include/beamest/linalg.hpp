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

// Dense complex linear algebra used by the channel transform and the estimators.
// Matrices are stored column-stacked (column-major); every vectorization in the
// library follows the same order.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace beamest
{

using cplx = std::complex<double>;

class ComplexVector
{
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n, cplx value = {}) : data_(n, value) {}
    explicit ComplexVector(std::vector<cplx> values) : data_(std::move(values)) {}
    ComplexVector(std::initializer_list<cplx> values) : data_(values) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cplx &operator[](std::size_t i) { return data_[i]; }
    const cplx &operator[](std::size_t i) const { return data_[i]; }

    cplx *data() noexcept { return data_.data(); }
    const cplx *data() const noexcept { return data_.data(); }

    std::span<cplx> span() noexcept { return data_; }
    std::span<const cplx> span() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    const std::vector<cplx> &values() const noexcept { return data_; }

    bool operator==(const ComplexVector &) const = default;

  private:
    std::vector<cplx> data_;
};

class ComplexMatrix
{
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, cplx value = {});

    static ComplexMatrix identity(std::size_t n);
    // Columns given as a list, each of length `rows`.
    static ComplexMatrix from_columns(std::size_t rows, std::span<const std::vector<cplx>> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<cplx> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const cplx> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

    cplx *data() noexcept { return data_.data(); }
    const cplx *data() const noexcept { return data_.data(); }
    std::span<const cplx> values() const noexcept { return data_; }

    // True when every entry has an exactly zero imaginary part.
    bool is_real_valued() const noexcept;
    bool all_finite() const noexcept;

    bool operator==(const ComplexMatrix &) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// ----- elementary operations ---------------------------------------------

ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix transpose(const ComplexMatrix &a);
ComplexMatrix conjugate(const ComplexMatrix &a);
ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector multiply(const ComplexMatrix &a, std::span<const cplx> x);
// A^H x
ComplexVector adjoint_multiply(const ComplexMatrix &a, std::span<const cplx> x);

double norm2_squared(std::span<const cplx> x);
double frobenius_norm(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

// Column stacking of a matrix, and the inverse reshape.
ComplexVector vectorize(const ComplexMatrix &a);
ComplexMatrix reshape(std::span<const cplx> v, std::size_t rows, std::size_t cols);

// ----- solver and transform primitives -----------------------------------

struct LsSolution
{
    ComplexVector x;
    bool ridge_used = false;
};

// Least-squares solution of min ||A x - y|| via Householder QR. When the triangular
// factor reveals rank deficiency (|r_jj| < 1e-10 max |r_ii|), falls back to the ridge
// system (A^H A + lambda I) x = A^H y with lambda = 1e-10 trace(A^H A) / m.
// Throws DimensionMismatch (y length, or more columns than rows) and RankDeficient.
LsSolution ls_solve_ex(const ComplexMatrix &a, std::span<const cplx> y);
ComplexVector ls_solve(const ComplexMatrix &a, std::span<const cplx> y);

// Unitary P-point DFT beamforming matrix: row i (0-based) is the steering vector at
// grid frequency (i + 1) / P - 0.5, scaled by 1/sqrt(P).
ComplexMatrix dft_basis(std::size_t p);

// Spatial frequency of the i-th (0-based) beam on a P-point grid.
double grid_frequency(std::size_t i, std::size_t p);

// |A^H r| element-wise.
std::vector<double> gram_correlate(const ComplexMatrix &a, std::span<const cplx> r);

// e^{j 2 pi x}, reducing x modulo 1 before the trigonometric evaluation.
cplx unit_phasor(double cycles);

} // namespace beamest

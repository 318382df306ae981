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

// Measurement-matrix view used by the greedy estimators.
//
// A Dictionary wraps a K x P matrix and provides the operations the estimators
// repeat many times per run: correlations A^H r, column updates, Gram entries
// A_i^H A_j (computed per column on first use and cached), and least-squares fits
// restricted to a column subset.
//
// Real-valued matrices (the Bernoulli case) are packed into a real column-major copy
// so the inner loops run on doubles. For those, subset least squares goes through a
// Cholesky factorization of the cached Gram block; the QR solver is used for
// complex matrices and whenever the Cholesky pivots indicate poor conditioning.
//
// A Dictionary is not thread-safe (the Gram cache is filled lazily). The wrapped
// matrix must outlive it.

#include "beamest/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace beamest
{

class Dictionary
{
  public:
    explicit Dictionary(const ComplexMatrix &a);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool real_valued() const noexcept { return real_; }
    const ComplexMatrix &matrix() const noexcept { return *a_; }

    // out = A^H r
    void correlate(std::span<const cplx> r, std::span<cplx> out) const;
    // out = |A^H r|^2 element-wise
    void correlate_power(std::span<const cplx> r, std::span<double> out) const;
    // A_p^H r
    cplx column_dot(std::size_t p, std::span<const cplx> r) const;
    // y += alpha A_p
    void add_column(std::size_t p, cplx alpha, std::span<cplx> y) const;

    // A_i^H A_j
    cplx gram(std::size_t i, std::size_t j);
    // Real Gram column (only for real-valued dictionaries).
    std::span<const double> real_gram_column(std::size_t j);

    // Explicit K x |support| submatrix.
    ComplexMatrix columns(std::span<const std::size_t> support) const;

  private:
    const ComplexMatrix *a_;
    std::size_t rows_;
    std::size_t cols_;
    bool real_;
    std::vector<double> packed_;                 // real column-major copy when real_
    std::vector<std::vector<double>> real_gram_; // lazily filled columns
    std::vector<std::vector<cplx>> cplx_gram_;
};

struct SubsetFit
{
    std::vector<cplx> coeffs;   // aligned with the support passed in
    std::vector<cplx> residual; // y - A_S coeffs
    double residual_energy = 0.0;
    bool used_qr = false;
};

// Least squares over column subsets of a Dictionary for one observation y.
class SubsetSolver
{
  public:
    SubsetSolver(Dictionary &dict, std::span<const cplx> y);

    // Throws SupportTooLarge when |support| exceeds the number of rows.
    SubsetFit solve(std::span<const std::size_t> support);

    // A^H y, computed once.
    std::span<const cplx> correlation_with_y() const noexcept { return aty_; }
    std::span<const cplx> y() const noexcept { return y_; }

    // Relative Cholesky pivot below which the QR path is taken.
    static constexpr double kPivotTolerance = 1e-8;

  private:
    bool solve_cholesky(std::span<const std::size_t> support, std::vector<cplx> &x);

    Dictionary *dict_;
    std::vector<cplx> y_;
    std::vector<cplx> aty_;
    std::vector<double> chol_; // row-major lower factor scratch
};

} // namespace beamest

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

#include "beamest/dictionary.hpp"

#include "beamest/error.hpp"
#include "beamest/kernels.hpp"

#include <cmath>
#include <string>

namespace beamest
{

Dictionary::Dictionary(const ComplexMatrix &a)
    : a_(&a), rows_(a.rows()), cols_(a.cols()), real_(a.is_real_valued())
{
    if (real_)
    {
        packed_.resize(rows_ * cols_);
        const cplx *src = a.data();
        for (std::size_t i = 0; i < packed_.size(); ++i)
            packed_[i] = src[i].real();
        real_gram_.resize(cols_);
    }
    else
    {
        cplx_gram_.resize(cols_);
    }
}

void Dictionary::correlate(std::span<const cplx> r, std::span<cplx> out) const
{
    if (r.size() != rows_ || out.size() != cols_)
        throw DimensionMismatch("Dictionary::correlate: residual length " + std::to_string(r.size()) +
                                ", expected " + std::to_string(rows_));
    const auto &k = kernels::active();
    if (real_)
    {
        for (std::size_t p = 0; p < cols_; ++p)
            out[p] = k.rcdot(packed_.data() + p * rows_, r.data(), rows_);
    }
    else
    {
        for (std::size_t p = 0; p < cols_; ++p)
            out[p] = k.cdotc(a_->col(p).data(), r.data(), rows_);
    }
}

void Dictionary::correlate_power(std::span<const cplx> r, std::span<double> out) const
{
    if (r.size() != rows_ || out.size() != cols_)
        throw DimensionMismatch("Dictionary::correlate_power: residual length " + std::to_string(r.size()) +
                                ", expected " + std::to_string(rows_));
    const auto &k = kernels::active();
    for (std::size_t p = 0; p < cols_; ++p)
    {
        const cplx c = real_ ? k.rcdot(packed_.data() + p * rows_, r.data(), rows_)
                             : k.cdotc(a_->col(p).data(), r.data(), rows_);
        out[p] = std::norm(c);
    }
}

cplx Dictionary::column_dot(std::size_t p, std::span<const cplx> r) const
{
    const auto &k = kernels::active();
    return real_ ? k.rcdot(packed_.data() + p * rows_, r.data(), rows_) : k.cdotc(a_->col(p).data(), r.data(), rows_);
}

void Dictionary::add_column(std::size_t p, cplx alpha, std::span<cplx> y) const
{
    const auto &k = kernels::active();
    if (real_)
        k.rcaxpy(alpha, packed_.data() + p * rows_, y.data(), rows_);
    else
        k.caxpy(alpha, a_->col(p).data(), y.data(), rows_);
}

std::span<const double> Dictionary::real_gram_column(std::size_t j)
{
    auto &col = real_gram_.at(j);
    if (col.empty())
    {
        const auto &k = kernels::active();
        col.resize(cols_);
        const double *aj = packed_.data() + j * rows_;
        for (std::size_t i = 0; i < cols_; ++i)
            col[i] = k.ddot(packed_.data() + i * rows_, aj, rows_);
    }
    return col;
}

cplx Dictionary::gram(std::size_t i, std::size_t j)
{
    if (real_)
        return real_gram_column(j)[i];
    auto &col = cplx_gram_.at(j);
    if (col.empty())
    {
        const auto &k = kernels::active();
        col.resize(cols_);
        for (std::size_t p = 0; p < cols_; ++p)
            col[p] = k.cdotc(a_->col(p).data(), a_->col(j).data(), rows_);
    }
    return col[i];
}

ComplexMatrix Dictionary::columns(std::span<const std::size_t> support) const
{
    ComplexMatrix sub(rows_, support.size());
    for (std::size_t c = 0; c < support.size(); ++c)
    {
        const auto src = a_->col(support[c]);
        std::copy(src.begin(), src.end(), sub.col(c).begin());
    }
    return sub;
}

// ------------------------------------------------------------------------

SubsetSolver::SubsetSolver(Dictionary &dict, std::span<const cplx> y)
    : dict_(&dict), y_(y.begin(), y.end()), aty_(dict.cols())
{
    if (y.size() != dict.rows())
        throw DimensionMismatch("SubsetSolver: y has " + std::to_string(y.size()) + " entries, expected " +
                                std::to_string(dict.rows()));
    dict.correlate(y_, aty_);
}

bool SubsetSolver::solve_cholesky(std::span<const std::size_t> support, std::vector<cplx> &x)
{
    const auto &k = kernels::active();
    const std::size_t m = support.size();
    chol_.assign(m * m, 0.0);
    double *l = chol_.data();

    // Row-major lower factor of the Gram block G(S, S).
    for (std::size_t j = 0; j < m; ++j)
    {
        const auto gcol = dict_->real_gram_column(support[j]);
        double *lj = l + j * m;
        const double gjj = gcol[support[j]];
        const double d = gjj - k.ddot(lj, lj, j);
        if (!(d > kPivotTolerance * gjj))
            return false;
        const double ljj = std::sqrt(d);
        lj[j] = ljj;
        for (std::size_t i = j + 1; i < m; ++i)
        {
            double *li = l + i * m;
            li[j] = (gcol[support[i]] - k.ddot(li, lj, j)) / ljj;
        }
    }

    x.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        x[i] = aty_[support[i]];
    // L z = b
    for (std::size_t i = 0; i < m; ++i)
    {
        const cplx s = k.rcdot(l + i * m, x.data(), i);
        x[i] = (x[i] - s) / l[i * m + i];
    }
    // L^T x = z, column-oriented over the rows of L
    for (std::size_t i = m; i-- > 0;)
    {
        x[i] /= l[i * m + i];
        k.rcaxpy(-x[i], l + i * m, x.data(), i);
    }
    for (const auto &v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

SubsetFit SubsetSolver::solve(std::span<const std::size_t> support)
{
    const std::size_t m = support.size();
    if (m > dict_->rows())
        throw SupportTooLarge("SubsetSolver: support of " + std::to_string(m) + " columns exceeds " +
                              std::to_string(dict_->rows()) + " measurements");
    for (const auto p : support)
        if (p >= dict_->cols())
            throw IndexOutOfRange("SubsetSolver: column " + std::to_string(p) + " out of range");

    SubsetFit fit;
    bool done = false;
    if (dict_->real_valued() && m > 0)
        done = solve_cholesky(support, fit.coeffs);
    if (!done && m > 0)
    {
        fit.coeffs = ls_solve(dict_->columns(support), y_).values();
        fit.used_qr = true;
    }

    fit.residual = y_;
    for (std::size_t c = 0; c < m; ++c)
        dict_->add_column(support[c], -fit.coeffs[c], fit.residual);
    fit.residual_energy = norm2_squared(fit.residual);
    return fit;
}

} // namespace beamest

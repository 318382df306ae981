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

#include "beamest/kernels.hpp"

namespace beamest::kernels::detail
{
namespace
{

// Written out on the real/imaginary parts so the compiler does not route through
// the NaN-aware complex multiply helper.

cplx cdotc(const cplx *a, const cplx *b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void caxpy(cplx alpha, const cplx *x, cplx *y, std::size_t n)
{
    const double p = alpha.real(), q = alpha.imag();
    for (std::size_t i = 0; i < n; ++i)
    {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + p * xr - q * xi, y[i].imag() + p * xi + q * xr};
    }
}

double cnorm2(const cplx *x, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

double ddot(const double *a, const double *b, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

cplx rcdot(const double *a, const cplx *z, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        re += a[i] * z[i].real();
        im += a[i] * z[i].imag();
    }
    return {re, im};
}

void rcaxpy(cplx alpha, const double *a, cplx *y, std::size_t n)
{
    const double p = alpha.real(), q = alpha.imag();
    for (std::size_t i = 0; i < n; ++i)
        y[i] = {y[i].real() + p * a[i], y[i].imag() + q * a[i]};
}

} // namespace

const KernelTable &scalar_table()
{
    static const KernelTable t{&cdotc, &caxpy, &cnorm2, &ddot, &rcdot, &rcaxpy};
    return t;
}

} // namespace beamest::kernels::detail

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

// Compiled with -mavx2 -mfma. Only reached through the dispatch table after a CPUID check.

#include "beamest/kernels.hpp"

#include <immintrin.h>

namespace beamest::kernels::detail
{
namespace
{

// One __m256d holds two complex values: [re0, im0, re1, im1].

inline const double *dp(const cplx *p) { return reinterpret_cast<const double *>(p); }
inline double *dp(cplx *p) { return reinterpret_cast<double *>(p); }

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (v0 + v2, v1 + v3) packed as a complex value.
inline cplx fold_complex(__m256d v)
{
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

cplx cdotc(const cplx *a, const cplx *b, std::size_t n)
{
    // acc_rr collects (ar*br, ai*bi) pairs, acc_ri collects (ar*bi, ai*br).
    __m256d acc_rr0 = _mm256_setzero_pd(), acc_rr1 = _mm256_setzero_pd();
    __m256d acc_ri0 = _mm256_setzero_pd(), acc_ri1 = _mm256_setzero_pd();
    const double *pa = dp(a), *pb = dp(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i), b0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4), b1 = _mm256_loadu_pd(pb + 2 * i + 4);
        acc_rr0 = _mm256_fmadd_pd(a0, b0, acc_rr0);
        acc_rr1 = _mm256_fmadd_pd(a1, b1, acc_rr1);
        acc_ri0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), acc_ri0);
        acc_ri1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), acc_ri1);
    }
    for (; i + 2 <= n; i += 2)
    {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i), b0 = _mm256_loadu_pd(pb + 2 * i);
        acc_rr0 = _mm256_fmadd_pd(a0, b0, acc_rr0);
        acc_ri0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), acc_ri0);
    }
    const __m256d rr = _mm256_add_pd(acc_rr0, acc_rr1);
    const __m256d ri = _mm256_add_pd(acc_ri0, acc_ri1);
    double re = hsum(rr);
    // ar*bi - ai*br: even lanes minus odd lanes
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double im = hsum(_mm256_mul_pd(ri, sign));
    for (; i < n; ++i)
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
    const __m256d vp = _mm256_set1_pd(p);
    const __m256d vq = _mm256_setr_pd(-q, q, -q, q);
    const double *px = dp(x);
    double *py = dp(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
    {
        const __m256d xv = _mm256_loadu_pd(px + 2 * i);
        __m256d yv = _mm256_loadu_pd(py + 2 * i);
        yv = _mm256_fmadd_pd(vp, xv, yv);
        yv = _mm256_fmadd_pd(vq, _mm256_permute_pd(xv, 0b0101), yv);
        _mm256_storeu_pd(py + 2 * i, yv);
    }
    for (; i < n; ++i)
    {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + p * xr - q * xi, y[i].imag() + p * xi + q * xr};
    }
}

double cnorm2(const cplx *x, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    const double *px = dp(x);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 2 <= n; i += 2)
    {
        const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

double ddot(const double *a, const double *b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd(), acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
    {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

// [a0, a0, a1, a1] from two consecutive reals.
inline __m256d dup_pairs(const double *a)
{
    const __m128d v = _mm_loadu_pd(a);
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(v), 0b01010000);
}

cplx rcdot(const double *a, const cplx *z, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    const double *pz = dp(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d a4 = _mm256_loadu_pd(a + i);
        // [a0 a0 a1 a1] and [a2 a2 a3 a3]
        const __m256d lo = _mm256_permute4x64_pd(a4, 0b01010000);
        const __m256d hi = _mm256_permute4x64_pd(a4, 0b11111010);
        acc0 = _mm256_fmadd_pd(lo, _mm256_loadu_pd(pz + 2 * i), acc0);
        acc1 = _mm256_fmadd_pd(hi, _mm256_loadu_pd(pz + 2 * i + 4), acc1);
    }
    for (; i + 2 <= n; i += 2)
        acc0 = _mm256_fmadd_pd(dup_pairs(a + i), _mm256_loadu_pd(pz + 2 * i), acc0);
    cplx acc = fold_complex(_mm256_add_pd(acc0, acc1));
    double re = acc.real(), im = acc.imag();
    for (; i < n; ++i)
    {
        re += a[i] * z[i].real();
        im += a[i] * z[i].imag();
    }
    return {re, im};
}

void rcaxpy(cplx alpha, const double *a, cplx *y, std::size_t n)
{
    const double p = alpha.real(), q = alpha.imag();
    const __m256d pq = _mm256_setr_pd(p, q, p, q);
    double *py = dp(y);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d a4 = _mm256_loadu_pd(a + i);
        const __m256d lo = _mm256_permute4x64_pd(a4, 0b01010000);
        const __m256d hi = _mm256_permute4x64_pd(a4, 0b11111010);
        _mm256_storeu_pd(py + 2 * i, _mm256_fmadd_pd(lo, pq, _mm256_loadu_pd(py + 2 * i)));
        _mm256_storeu_pd(py + 2 * i + 4, _mm256_fmadd_pd(hi, pq, _mm256_loadu_pd(py + 2 * i + 4)));
    }
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(py + 2 * i, _mm256_fmadd_pd(dup_pairs(a + i), pq, _mm256_loadu_pd(py + 2 * i)));
    for (; i < n; ++i)
        y[i] = {y[i].real() + p * a[i], y[i].imag() + q * a[i]};
}

} // namespace

const KernelTable &avx2_table()
{
    static const KernelTable t{&cdotc, &caxpy, &cnorm2, &ddot, &rcdot, &rcaxpy};
    return t;
}

} // namespace beamest::kernels::detail

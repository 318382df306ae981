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

// Data-parallel inner loops shared by the linear algebra, channel and estimator code.
//
// Every kernel has a portable scalar reference implementation and, on x86-64, an
// AVX2+FMA variant compiled in its own translation unit. The variant is picked once
// at startup from CPUID; `force_isa` overrides it (tests, benchmarking, and the
// BEAMEST_ISA=scalar environment variable).
//
// Complex data is std::complex<double>, i.e. interleaved (re, im) pairs.

#include <complex>
#include <cstddef>
#include <string_view>

namespace beamest::kernels
{

using cplx = std::complex<double>;

enum class Isa
{
    scalar,
    avx2,
};

struct KernelTable
{
    // sum_i conj(a_i) * b_i
    cplx (*cdotc)(const cplx *a, const cplx *b, std::size_t n);
    // y_i += alpha * x_i
    void (*caxpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
    // sum_i |x_i|^2
    double (*cnorm2)(const cplx *x, std::size_t n);
    // sum_i a_i * b_i
    double (*ddot)(const double *a, const double *b, std::size_t n);
    // sum_i a_i * z_i, real a
    cplx (*rcdot)(const double *a, const cplx *z, std::size_t n);
    // y_i += alpha * a_i, real a
    void (*rcaxpy)(cplx alpha, const double *a, cplx *y, std::size_t n);
};

const KernelTable &table(Isa isa);

// Table currently used by the library.
const KernelTable &active();
Isa active_isa();

bool isa_supported(Isa isa);

// Throws InvalidParams when the ISA is not supported by this CPU/build.
void force_isa(Isa isa);

std::string_view isa_name(Isa isa);

namespace detail
{
const KernelTable &scalar_table();
#if defined(BEAMEST_HAVE_AVX2)
const KernelTable &avx2_table();
#endif
} // namespace detail

} // namespace beamest::kernels

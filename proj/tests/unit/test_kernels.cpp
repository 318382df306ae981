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


#include <catch2/catch_amalgamated.hpp>

#include "beamest/error.hpp"
#include "beamest/kernels.hpp"
#include "beamest/random.hpp"
#include "test_util.hpp"

#include <cmath>
#include <vector>

using namespace beamest;
namespace k = beamest::kernels;

namespace
{

std::vector<double> random_dvec(std::size_t n, Rng &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto &x : v)
        x = g(rng);
    return v;
}

// Restores the automatically selected ISA when a test forces one.
struct IsaGuard
{
    k::Isa saved = k::active_isa();
    ~IsaGuard() { k::force_isa(saved); }
};

} // namespace

TEST_CASE("kernels - Scalar reference against plain loops")
{
    const auto &t = k::table(k::Isa::scalar);
    auto rng = make_rng(11, {});
    const auto a = testing::random_cvec(13, rng), b = testing::random_cvec(13, rng);
    const auto ra = random_dvec(13, rng);

    cplx dot = 0.0, rdot = 0.0;
    double n2 = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < 13; ++i)
    {
        dot += std::conj(a[i]) * b[i];
        rdot += ra[i] * b[i];
        n2 += std::norm(a[i]);
        dd += ra[i] * ra[i];
    }
    CHECK(std::abs(t.cdotc(a.data(), b.data(), 13) - dot) < 1e-12);
    CHECK(std::abs(t.rcdot(ra.data(), b.data(), 13) - rdot) < 1e-12);
    CHECK(std::abs(t.cnorm2(a.data(), 13) - n2) < 1e-12);
    CHECK(std::abs(t.ddot(ra.data(), ra.data(), 13) - dd) < 1e-12);

    auto y = b;
    t.caxpy({0.5, -2.0}, a.data(), y.data(), 13);
    for (std::size_t i = 0; i < 13; ++i)
        CHECK(std::abs(y[i] - (b[i] + cplx(0.5, -2.0) * a[i])) < 1e-14);
    y = b;
    t.rcaxpy({1.5, 0.25}, ra.data(), y.data(), 13);
    for (std::size_t i = 0; i < 13; ++i)
        CHECK(std::abs(y[i] - (b[i] + cplx(1.5, 0.25) * ra[i])) < 1e-14);

    CHECK(t.cdotc(a.data(), b.data(), 0) == cplx(0.0));
    CHECK(t.cnorm2(a.data(), 0) == 0.0);
}

TEST_CASE("kernels - AVX2 variants match the scalar reference")
{
    if (!k::isa_supported(k::Isa::avx2))
        SKIP("AVX2 not available on this machine/build");
    const auto &s = k::table(k::Isa::scalar);
    const auto &v = k::table(k::Isa::avx2);
    auto rng = make_rng(12, {});

    // Lengths cover empty input, every tail length, and multi-block bodies.
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 31, 64, 255, 256, 1023})
    {
        CAPTURE(n);
        const auto a = testing::random_cvec(n, rng), b = testing::random_cvec(n, rng);
        const auto ra = random_dvec(n, rng), rb = random_dvec(n, rng);
        const double scale = 1.0 + static_cast<double>(n);

        CHECK(std::abs(v.cdotc(a.data(), b.data(), n) - s.cdotc(a.data(), b.data(), n)) < 1e-12 * scale);
        CHECK(std::abs(v.rcdot(ra.data(), b.data(), n) - s.rcdot(ra.data(), b.data(), n)) < 1e-12 * scale);
        CHECK(std::abs(v.cnorm2(a.data(), n) - s.cnorm2(a.data(), n)) < 1e-12 * scale);
        CHECK(std::abs(v.ddot(ra.data(), rb.data(), n) - s.ddot(ra.data(), rb.data(), n)) < 1e-12 * scale);

        auto ys = b, yv = b;
        s.caxpy({0.3, 0.7}, a.data(), ys.data(), n);
        v.caxpy({0.3, 0.7}, a.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(ys[i] - yv[i]) < 1e-14);
        ys = b;
        yv = b;
        s.rcaxpy({-1.1, 0.4}, ra.data(), ys.data(), n);
        v.rcaxpy({-1.1, 0.4}, ra.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(ys[i] - yv[i]) < 1e-14);
    }
}

TEST_CASE("kernels - Unaligned pointers")
{
    if (!k::isa_supported(k::Isa::avx2))
        SKIP("AVX2 not available on this machine/build");
    auto rng = make_rng(13, {});
    const auto a = testing::random_cvec(40, rng);
    const auto ra = random_dvec(41, rng);
    const auto &s = k::table(k::Isa::scalar);
    const auto &v = k::table(k::Isa::avx2);
    // Offset by one double: the real array is misaligned for 32-byte loads.
    CHECK(std::abs(v.rcdot(ra.data() + 1, a.data() + 1, 37) - s.rcdot(ra.data() + 1, a.data() + 1, 37)) < 1e-12);
    CHECK(std::abs(v.ddot(ra.data() + 1, ra.data(), 39) - s.ddot(ra.data() + 1, ra.data(), 39)) < 1e-12);
}

TEST_CASE("kernels - Dispatch")
{
    IsaGuard guard;
    CHECK(k::isa_supported(k::Isa::scalar));
    k::force_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    CHECK(&k::active() == &k::table(k::Isa::scalar));
    CHECK(k::isa_name(k::Isa::scalar) == "scalar");
    CHECK(k::isa_name(k::Isa::avx2) == "avx2");
    if (k::isa_supported(k::Isa::avx2))
    {
        k::force_isa(k::Isa::avx2);
        CHECK(k::active_isa() == k::Isa::avx2);
    }
    else
    {
        CHECK_THROWS_AS(k::force_isa(k::Isa::avx2), InvalidParams);
    }
}

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

#include "beamest/dictionary.hpp"
#include "beamest/error.hpp"
#include "beamest/linalg.hpp"
#include "test_util.hpp"

#include <array>
#include <cmath>
#include <numbers>

using namespace beamest;
using beamest::testing::random_cmat;
using beamest::testing::random_cvec;

TEST_CASE("linalg - Elementary operations")
{
    auto rng = make_rng(21, {});
    const auto a = random_cmat(5, 3, rng), b = random_cmat(3, 4, rng);

    CHECK(max_abs_diff(multiply(a, b), testing::naive_multiply(a, b)) < 1e-12);
    const auto ah = adjoint(a);
    REQUIRE(ah.rows() == 3);
    REQUIRE(ah.cols() == 5);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 3; ++c)
        {
            CHECK(ah(c, r) == std::conj(a(r, c)));
            CHECK(transpose(a)(c, r) == a(r, c));
            CHECK(conjugate(a)(r, c) == std::conj(a(r, c)));
        }

    const auto x = random_cvec(3, rng);
    const auto ax = multiply(a, x);
    for (std::size_t r = 0; r < 5; ++r)
        CHECK(std::abs(ax[r] - (a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2])) < 1e-12);
    const auto z = random_cvec(5, rng);
    CHECK(max_abs_diff(adjoint_multiply(a, z).span(), multiply(ah, z).span()) < 1e-12);

    CHECK_THROWS_AS(multiply(a, a), DimensionMismatch);
    CHECK_THROWS_AS(multiply(a, z), DimensionMismatch);

    // Column stacking.
    const auto v = vectorize(a);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t r = 0; r < 5; ++r)
            CHECK(v[c * 5 + r] == a(r, c));
    CHECK(reshape(v.span(), 5, 3) == a);
    CHECK_THROWS_AS(reshape(v.span(), 4, 4), DimensionMismatch);

    CHECK(std::abs(frobenius_norm(a) * frobenius_norm(a) - norm2_squared(v.span())) < 1e-12);
    CHECK(ComplexMatrix::identity(3)(1, 1) == cplx(1.0));
    CHECK(ComplexMatrix::identity(3)(0, 1) == cplx(0.0));
    CHECK(a.all_finite());
    CHECK_FALSE(a.is_real_valued());
}

TEST_CASE("linalg - Least squares on identity and orthonormal columns")
{
    auto rng = make_rng(22, {});
    const auto y4 = random_cvec(4, rng);
    const auto x = ls_solve(ComplexMatrix::identity(4), y4);
    CHECK(testing::max_abs(std::span<const cplx>(x.values())) > 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(x[i] - y4[i]) < 1e-12);

    // Two columns of the 4-point unitary DFT: the pseudo-inverse is A^H.
    const auto f = dft_basis(4);
    std::vector<std::vector<cplx>> cols{{f(0, 0), f(1, 0), f(2, 0), f(3, 0)}, {f(0, 2), f(1, 2), f(2, 2), f(3, 2)}};
    const auto a = ComplexMatrix::from_columns(4, cols);
    const auto xo = ls_solve(a, y4);
    const auto aty = adjoint_multiply(a, y4);
    CHECK(max_abs_diff(xo.span(), aty.span()) < 1e-10);
}

TEST_CASE("linalg - Least squares against the normal-equation oracle")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto rng = make_rng(23, {seed});
        const auto a = random_cmat(8, 3, rng);
        const auto y = random_cvec(8, rng);
        const auto sol = ls_solve_ex(a, y);
        CHECK_FALSE(sol.ridge_used);

        const auto ah = adjoint(a);
        const auto oracle = multiply(testing::naive_inverse(multiply(ah, a)), adjoint_multiply(a, y));
        CHECK(max_abs_diff(sol.x.span(), oracle.span()) < 1e-10 * testing::max_abs(oracle.span()));

        // Residual orthogonality.
        auto r = ComplexVector(std::vector<cplx>(y));
        const auto ax = multiply(a, sol.x);
        for (std::size_t i = 0; i < 8; ++i)
            r[i] -= ax[i];
        const auto ahr = adjoint_multiply(a, r);
        CHECK(testing::max_abs(ahr.span()) < 1e-8 * testing::max_abs(adjoint_multiply(a, y).span()));
    }
}

TEST_CASE("linalg - Least squares ridge fallback and errors")
{
    auto rng = make_rng(24, {});
    auto a = random_cmat(6, 3, rng);
    for (std::size_t r = 0; r < 6; ++r)
        a(r, 2) = a(r, 0); // exactly collinear columns
    const auto y = random_cvec(6, rng);
    const auto sol = ls_solve_ex(a, y);
    CHECK(sol.ridge_used);
    for (const auto &v : sol.x)
        CHECK(std::isfinite(std::abs(v)));
    // The ridge solution splits the collinear pair evenly.
    CHECK(std::abs(sol.x[0] - sol.x[2]) < 1e-4 * std::abs(sol.x[0]));

    CHECK_THROWS_AS(ls_solve(a, random_cvec(5, rng)), DimensionMismatch);
    CHECK_THROWS_AS(ls_solve(random_cmat(2, 3, rng), random_cvec(2, rng)), DimensionMismatch);
    CHECK_THROWS_AS(ls_solve(ComplexMatrix(3, 2), random_cvec(3, rng)), RankDeficient);
}

TEST_CASE("linalg - DFT basis")
{
    CHECK(dft_basis(1)(0, 0) == cplx(1.0));

    const auto f2 = dft_basis(2);
    const double s = 1.0 / std::sqrt(2.0);
    // Grid {0, 0.5}: rows (1/sqrt2)[1, 1] and (1/sqrt2)[1, -1].
    CHECK(std::abs(f2(0, 0) - s) < 1e-15);
    CHECK(std::abs(f2(0, 1) - s) < 1e-15);
    CHECK(std::abs(f2(1, 0) - s) < 1e-15);
    CHECK(std::abs(f2(1, 1) + s) < 1e-15);
    CHECK(grid_frequency(0, 2) == 0.0);
    CHECK(grid_frequency(1, 2) == 0.5);
    CHECK(grid_frequency(31, 32) == 0.5);
    CHECK(grid_frequency(15, 32) == 0.0);

    for (std::size_t p : {1, 2, 8, 32, 64})
    {
        CAPTURE(p);
        const auto f = dft_basis(p);
        CHECK(max_abs_diff(multiply(adjoint(f), f), ComplexMatrix::identity(p)) < 1e-10);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t n = 0; n < p; ++n)
            {
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(n) * grid_frequency(i, p);
                CHECK(std::abs(f(i, n) - std::polar(1.0 / std::sqrt(static_cast<double>(p)), ang)) < 1e-12);
            }
    }

    auto rng = make_rng(25, {});
    const auto x = random_cvec(32, rng);
    const auto fx = multiply(dft_basis(32), x);
    CHECK(std::abs(norm2_squared(fx.span()) - norm2_squared(x)) < 1e-10 * norm2_squared(x));
}

TEST_CASE("linalg - Correlation magnitudes")
{
    auto rng = make_rng(26, {});
    const auto a = random_cmat(16, 8, rng);
    const auto r = random_cvec(16, rng);

    const auto zero = gram_correlate(a, ComplexVector(16).span());
    for (const auto v : zero)
        CHECK(v == 0.0);

    const auto id = gram_correlate(ComplexMatrix::identity(16), r);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(std::abs(id[i] - std::abs(r[i])) < 1e-15);

    const auto c = gram_correlate(a, r);
    for (std::size_t p = 0; p < 8; ++p)
    {
        cplx s = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
            s += std::conj(a(i, p)) * r[i];
        CHECK(std::abs(c[p] - std::abs(s)) < 1e-12);
    }
    CHECK_THROWS_AS(gram_correlate(a, random_cvec(15, rng)), DimensionMismatch);
}

TEST_CASE("linalg - Phase reduction")
{
    CHECK(unit_phasor(0.0) == cplx(1.0, 0.0));
    CHECK(std::abs(unit_phasor(0.25) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(unit_phasor(-0.5) - cplx(-1.0, 0.0)) < 1e-15);
    // Large arguments are reduced before evaluation: 1e6 + 0.25 cycles.
    CHECK(std::abs(unit_phasor(1e6 + 0.25) - cplx(0.0, 1.0)) < 1e-9);
}

TEST_CASE("dictionary - Correlations and subset least squares")
{
    auto rng = make_rng(27, {});
    // A real-valued matrix takes the packed path, a complex one the generic path.
    ComplexMatrix real_a(12, 20);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t c = 0; c < 20; ++c)
        for (std::size_t r = 0; r < 12; ++r)
            real_a(r, c) = g(rng);
    const auto cplx_a = random_cmat(12, 20, rng);

    for (const ComplexMatrix *a : std::array<const ComplexMatrix *, 2>{&real_a, &cplx_a})
    {
        Dictionary dict(*a);
        CHECK(dict.real_valued() == (a == &real_a));
        const auto y = random_cvec(12, rng);

        std::vector<cplx> corr(20);
        std::vector<double> pw(20);
        dict.correlate(y, corr);
        dict.correlate_power(y, pw);
        const auto ref = adjoint_multiply(*a, y);
        for (std::size_t p = 0; p < 20; ++p)
        {
            CHECK(std::abs(corr[p] - ref[p]) < 1e-12);
            CHECK(std::abs(pw[p] - std::norm(ref[p])) < 1e-11);
            CHECK(std::abs(dict.column_dot(p, y) - ref[p]) < 1e-12);
        }
        for (std::size_t i : {0, 5, 19})
            for (std::size_t j : {0, 7, 19})
            {
                cplx s = 0.0;
                for (std::size_t r = 0; r < 12; ++r)
                    s += std::conj((*a)(r, i)) * (*a)(r, j);
                CHECK(std::abs(dict.gram(i, j) - s) < 1e-12);
            }

        SubsetSolver solver(dict, y);
        const std::vector<std::size_t> support{3, 17, 8, 0, 11};
        const auto fit = solver.solve(support);
        const auto ref_x = ls_solve(dict.columns(support), y);
        CHECK(max_abs_diff(std::span<const cplx>(fit.coeffs), ref_x.span()) < 1e-10);
        auto r = std::vector<cplx>(y);
        for (std::size_t t = 0; t < support.size(); ++t)
            for (std::size_t i = 0; i < 12; ++i)
                r[i] -= (*a)(i, support[t]) * fit.coeffs[t];
        CHECK(std::abs(fit.residual_energy - norm2_squared(r)) < 1e-10 * norm2_squared(y));

        CHECK(solver.solve({}).residual_energy == norm2_squared(y));
        std::vector<std::size_t> too_many(13);
        for (std::size_t t = 0; t < 13; ++t)
            too_many[t] = t;
        CHECK_THROWS_AS(solver.solve(too_many), SupportTooLarge);
        const std::vector<std::size_t> bad{20};
        CHECK_THROWS_AS(solver.solve(bad), IndexOutOfRange);
        CHECK_THROWS_AS(SubsetSolver(dict, random_cvec(11, rng)), DimensionMismatch);
    }
}

TEST_CASE("dictionary - Ill-conditioned subsets fall back to QR")
{
    ComplexMatrix a(8, 3);
    auto rng = make_rng(28, {});
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t r = 0; r < 8; ++r)
    {
        a(r, 0) = g(rng);
        a(r, 1) = g(rng);
        a(r, 2) = a(r, 0).real() + 1e-9 * g(rng); // nearly collinear with column 0
    }
    Dictionary dict(a);
    const auto y = random_cvec(8, rng);
    SubsetSolver solver(dict, y);
    const std::vector<std::size_t> support{0, 1, 2};
    const auto fit = solver.solve(support);
    CHECK(fit.used_qr);
    for (const auto &c : fit.coeffs)
        CHECK(std::isfinite(std::abs(c)));
}

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


#include "beamest/estimators.hpp"

#include "beamest/error.hpp"
#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamest
{
namespace
{

std::vector<double> magnitudes(std::span<const cplx> h)
{
    std::vector<double> m(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        m[i] = std::norm(h[i]);
    return m;
}

} // namespace

SupportSet dominant_support(std::span<const cplx> h_true, double energy_fraction)
{
    if (!(energy_fraction > 0.0 && energy_fraction <= 1.0))
        throw InvalidParams("energy fraction must lie in (0, 1], got " + std::to_string(energy_fraction));
    const auto mag = magnitudes(h_true);
    double total = 0.0;
    for (const auto v : mag)
        total += v;
    if (!(total > 0.0))
        throw ZeroReference("dominant_support: channel has zero energy");

    // The relative slack absorbs summation-order rounding when energy_fraction = 1.
    const double target = energy_fraction * total * (1.0 - 1e-12);
    SupportSet support;
    double held = 0.0;
    for (const auto idx : top_indices(mag, mag.size()))
    {
        if (held >= target || mag[idx] == 0.0)
            break;
        support.push_back(idx);
        held += mag[idx];
    }
    std::sort(support.begin(), support.end());
    return support;
}

SupportSet mse_optimal_support(std::span<const cplx> h_true, double sigma2, std::size_t k)
{
    if (!(sigma2 >= 0.0))
        throw InvalidParams("mse_optimal_support: noise variance must be >= 0");
    const auto mag = magnitudes(h_true);
    double total = 0.0;
    for (const auto v : mag)
        total += v;
    if (!(total > 0.0))
        throw ZeroReference("mse_optimal_support: channel has zero energy");

    const auto order = top_indices(mag, mag.size());
    const std::size_t limit = std::min(order.size(), k >= 2 ? k - 2 : std::size_t{0});
    const auto kd = static_cast<double>(k);
    double missed = total, best_cost = total;
    std::size_t best = 0;
    for (std::size_t n = 1; n <= limit; ++n)
    {
        missed -= mag[order[n - 1]];
        const auto nd = static_cast<double>(n);
        // The unmodelled tail acts as extra measurement noise of variance missed / K.
        const double tail = std::max(missed, 0.0);
        const double cost = tail + (sigma2 + tail / kd) * nd * kd / (kd - nd - 1.0);
        if (cost < best_cost)
        {
            best_cost = cost;
            best = n;
        }
    }
    SupportSet support(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best));
    std::sort(support.begin(), support.end());
    return support;
}

EstimateReport fit_support(std::span<const cplx> y, Dictionary &dict, std::span<const std::size_t> support)
{
    detail::require_observation(y, dict, "fit_support");
    if (support.size() > dict.rows())
        throw SupportTooLarge("oracle support of " + std::to_string(support.size()) + " beams exceeds K = " +
                              std::to_string(dict.rows()));
    SubsetSolver solver(dict, y);
    const SubsetFit fit = solver.solve(support);
    EstimateReport rep = detail::make_report(dict.cols(), support, fit);
    rep.iterations = 1;
    rep.converged_by = StopReason::threshold;
    rep.residual_trace = {fit.residual_energy};
    return rep;
}

EstimateReport oracle_ls(std::span<const cplx> y, Dictionary &dict, std::span<const cplx> h_true,
                         double energy_fraction)
{
    if (h_true.size() != dict.cols())
        throw DimensionMismatch("oracle_ls: channel has " + std::to_string(h_true.size()) + " entries, Phi has " +
                                std::to_string(dict.cols()) + " columns");
    const SupportSet support = dominant_support(h_true, energy_fraction);
    return fit_support(y, dict, support);
}

EstimateReport oracle_ls(std::span<const cplx> y, const ComplexMatrix &phi, std::span<const cplx> h_true,
                         double energy_fraction)
{
    Dictionary dict(phi);
    return oracle_ls(y, dict, h_true, energy_fraction);
}

} // namespace beamest

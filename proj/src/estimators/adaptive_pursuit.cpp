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


// Sparsity-adaptive matching pursuit with optional cross-block support refinement.
//
// One iteration:
//   S  = s strongest correlations |Phi^H r|
//   (refinement) ratio = c_max / (c_max + sum of c over the 4 grid neighbours of the
//   strongest index); if the rule fires, S gains the neighbours of every element of S
//   C  = Omega u S  (capped at K columns: Omega first, then S by correlation rank)
//   F  = s largest |LS(C)| coefficients, refit on F
//   stop if ||r_F||^2 < threshold; grow s on stagnation; otherwise accept F.

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

void check_config(const BdsSampConfig &cfg, std::size_t k)
{
    if (!(cfg.mu > 0.0 && cfg.mu <= 1.0))
        throw InvalidParams("mu must lie in (0, 1], got " + std::to_string(cfg.mu));
    if (cfg.initial_step < 1)
        throw InvalidParams("initial step must be >= 1");
    if (cfg.max_support > k)
        throw InvalidParams("max_support " + std::to_string(cfg.max_support) + " exceeds K = " + std::to_string(k));
    if (std::isnan(cfg.snr_db))
        throw InvalidParams("snr_db is NaN");
}

bool refine_fires(double ratio, double mu, NeighborRule rule)
{
    switch (rule)
    {
    case NeighborRule::as_paper:
        return ratio >= mu;
    case NeighborRule::inverted:
        return ratio < mu;
    case NeighborRule::disabled:
        return false;
    }
    return false;
}

EstimateReport adaptive_pursuit(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry *geometry,
                                const BdsSampConfig &cfg)
{
    const std::size_t k = dict.rows(), p = dict.cols();
    detail::require_observation(y, dict, "bds_samp");
    check_config(cfg, k);
    const bool refine = cfg.neighbor_rule != NeighborRule::disabled;
    if (refine)
    {
        if (geometry == nullptr)
            throw InvalidParams("bds_samp: beam-grid geometry required for neighbour refinement");
        geometry->validate();
        if (geometry->total() != p)
            throw DimensionMismatch("bds_samp: geometry has " + std::to_string(geometry->total()) +
                                    " beams, Phi has " + std::to_string(p) + " columns");
    }

    const double y_energy = norm2_squared(y);
    if (y_energy == 0.0)
        return detail::zero_report(p);

    const std::size_t max_support = cfg.max_support == 0 ? k : cfg.max_support;
    const double threshold = stopping_threshold(y_energy, cfg.snr_db);

    SubsetSolver solver(dict, y);
    std::vector<double> power(p);
    std::vector<std::uint8_t> in_candidates(p, 0);

    SupportSet omega;
    SubsetFit omega_fit;
    omega_fit.residual.assign(y.begin(), y.end());
    omega_fit.residual_energy = y_energy;

    std::size_t s = std::min(cfg.initial_step, max_support);
    std::size_t accepted = 0, passes = 0, refinements = 0;
    std::vector<double> trace;
    StopReason reason = StopReason::pilot_exhausted;

    while (accepted < k)
    {
        ++passes;
        dict.correlate_power(omega_fit.residual, power);
        SupportSet pre = top_indices(power, s);

        if (refine && !pre.empty())
        {
            const std::size_t strongest = pre.front();
            double around = power[strongest];
            for (const auto nb : cross_block_neighbors(strongest, *geometry))
                around += power[nb];
            const double ratio = around > 0.0 ? power[strongest] / around : 1.0;
            if (refine_fires(ratio, cfg.mu, cfg.neighbor_rule))
            {
                ++refinements;
                const std::size_t n_pre = pre.size();
                for (std::size_t t = 0; t < n_pre; ++t)
                    for (const auto nb : cross_block_neighbors(pre[t], *geometry))
                        pre.push_back(nb);
            }
        }

        // Candidate list, at most K columns so the LS problem stays overdetermined.
        SupportSet cand;
        cand.reserve(std::min(k, omega.size() + pre.size()));
        for (const auto idx : omega)
        {
            cand.push_back(idx);
            in_candidates[idx] = 1;
        }
        for (const auto idx : pre)
        {
            if (cand.size() >= k)
                break;
            if (!in_candidates[idx])
            {
                cand.push_back(idx);
                in_candidates[idx] = 1;
            }
        }
        for (const auto idx : cand)
            in_candidates[idx] = 0;

        const SubsetFit cand_fit = solver.solve(cand);
        std::vector<double> mag(cand.size());
        for (std::size_t t = 0; t < cand.size(); ++t)
            mag[t] = std::norm(cand_fit.coeffs[t]);
        SupportSet final_set;
        for (const auto t : top_indices(mag, s))
            final_set.push_back(cand[t]);

        SubsetFit fit = solver.solve(final_set);
        if (fit.residual_energy < threshold)
        {
            omega = std::move(final_set);
            omega_fit = std::move(fit);
            trace.push_back(omega_fit.residual_energy);
            ++accepted;
            reason = StopReason::threshold;
            break;
        }
        if (fit.residual_energy >= omega_fit.residual_energy)
        {
            if (s + 1 > max_support)
            {
                reason = StopReason::max_support;
                break;
            }
            ++s;
            continue;
        }
        omega = std::move(final_set);
        omega_fit = std::move(fit);
        trace.push_back(omega_fit.residual_energy);
        ++accepted;
    }

    // The accepted fit is already the least-squares solution on the final support.
    EstimateReport rep = omega.empty() ? detail::zero_report(p) : detail::make_report(p, omega, omega_fit);
    if (omega.empty())
        rep.final_residual_energy = y_energy;
    rep.iterations = passes;
    rep.converged_by = reason;
    rep.residual_trace = std::move(trace);
    rep.refinements = refinements;
    return rep;
}

} // namespace

EstimateReport bds_samp(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry,
                        const BdsSampConfig &cfg)
{
    return adaptive_pursuit(y, dict, &geometry, cfg);
}

EstimateReport bds_samp(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                        const BdsSampConfig &cfg)
{
    Dictionary dict(phi);
    return bds_samp(y, dict, geometry, cfg);
}

EstimateReport samp(std::span<const cplx> y, Dictionary &dict, const BdsSampConfig &cfg)
{
    BdsSampConfig plain = cfg;
    plain.neighbor_rule = NeighborRule::disabled;
    return adaptive_pursuit(y, dict, nullptr, plain);
}

EstimateReport samp(std::span<const cplx> y, const ComplexMatrix &phi, const BdsSampConfig &cfg)
{
    Dictionary dict(phi);
    return samp(y, dict, cfg);
}

} // namespace beamest

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


// Fixed-budget greedy baselines: OMP, block OMP on a regular tiling, and adaptive
// rectangular support detection (ASD). All of them stop early if the residual
// vanishes exactly.

#include "beamest/estimators.hpp"

#include "beamest/error.hpp"
#include "detail.hpp"

#include <algorithm>
#include <string>

namespace beamest
{
namespace
{

void check_grid(const ArrayGeometry &geometry, const Dictionary &dict, const char *who)
{
    geometry.validate();
    if (geometry.total() != dict.cols())
        throw DimensionMismatch(std::string(who) + ": geometry has " + std::to_string(geometry.total()) +
                                " beams, Phi has " + std::to_string(dict.cols()) + " columns");
}

EstimateReport finish(std::size_t p, const SupportSet &support, const SubsetFit &fit, double y_energy,
                      std::size_t iterations, std::vector<double> trace)
{
    EstimateReport rep = support.empty() ? detail::zero_report(p) : detail::make_report(p, support, fit);
    if (support.empty())
        rep.final_residual_energy = y_energy;
    rep.iterations = iterations;
    rep.converged_by = StopReason::threshold;
    rep.residual_trace = std::move(trace);
    return rep;
}

} // namespace

EstimateReport omp(std::span<const cplx> y, Dictionary &dict, std::size_t sparsity)
{
    const std::size_t k = dict.rows(), p = dict.cols();
    detail::require_observation(y, dict, "omp");
    if (sparsity > k)
        throw InvalidParams("omp: sparsity " + std::to_string(sparsity) + " exceeds K = " + std::to_string(k));
    const double y_energy = norm2_squared(y);

    SubsetSolver solver(dict, y);
    std::vector<double> power(p);
    SupportSet support;
    SubsetFit fit;
    fit.residual.assign(y.begin(), y.end());
    fit.residual_energy = y_energy;
    std::vector<double> trace;
    std::size_t it = 0;

    while (it < sparsity && fit.residual_energy > 0.0)
    {
        ++it;
        dict.correlate_power(fit.residual, power);
        for (const auto idx : support)
            power[idx] = -1.0;
        const std::size_t best = top_indices(power, 1).front();
        support.push_back(best);
        fit = solver.solve(support);
        trace.push_back(fit.residual_energy);
    }
    return finish(p, support, fit, y_energy, it, std::move(trace));
}

EstimateReport omp(std::span<const cplx> y, const ComplexMatrix &phi, std::size_t sparsity)
{
    Dictionary dict(phi);
    return omp(y, dict, sparsity);
}

EstimateReport bomp(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry, BlockShape block,
                    std::size_t sparsity_blocks)
{
    const std::size_t k = dict.rows(), p = dict.cols();
    detail::require_observation(y, dict, "bomp");
    check_grid(geometry, dict, "bomp");
    if (block.rows < 1 || block.cols < 1 || geometry.pv % block.rows != 0 || geometry.ph % block.cols != 0)
        throw InvalidBlockShape("bomp: " + std::to_string(block.rows) + "x" + std::to_string(block.cols) +
                                " blocks do not tile a " + std::to_string(geometry.pv) + "x" +
                                std::to_string(geometry.ph) + " beam grid");
    const std::size_t tiles_v = geometry.pv / block.rows, tiles_h = geometry.ph / block.cols;
    const std::size_t n_tiles = tiles_v * tiles_h;
    const std::size_t tile_size = block.rows * block.cols;

    // Tile t = tv + tiles_v * th covers rows [tv * br, ...) and columns [th * bc, ...).
    const auto tile_members = [&](std::size_t t) {
        SupportSet m;
        m.reserve(tile_size);
        const std::size_t r0 = (t % tiles_v) * block.rows, c0 = (t / tiles_v) * block.cols;
        for (std::size_t c = c0; c < c0 + block.cols; ++c)
            for (std::size_t r = r0; r < r0 + block.rows; ++r)
                m.push_back(geometry.linear_index(r, c));
        return m;
    };

    const double y_energy = norm2_squared(y);
    SubsetSolver solver(dict, y);
    std::vector<double> power(p), tile_energy(n_tiles);
    std::vector<std::uint8_t> taken(n_tiles, 0);
    SupportSet support;
    SubsetFit fit;
    fit.residual.assign(y.begin(), y.end());
    fit.residual_energy = y_energy;
    std::vector<double> trace;
    std::size_t it = 0;

    while (it < sparsity_blocks && fit.residual_energy > 0.0 && support.size() + tile_size <= k)
    {
        ++it;
        dict.correlate_power(fit.residual, power);
        for (std::size_t t = 0; t < n_tiles; ++t)
        {
            double e = -1.0;
            if (!taken[t])
            {
                e = 0.0;
                for (const auto idx : tile_members(t))
                    e += power[idx];
            }
            tile_energy[t] = e;
        }
        const std::size_t best = top_indices(tile_energy, 1).front();
        if (taken[best])
            break;
        taken[best] = 1;
        for (const auto idx : tile_members(best))
            support.push_back(idx);
        fit = solver.solve(support);
        trace.push_back(fit.residual_energy);
    }
    return finish(p, support, fit, y_energy, it, std::move(trace));
}

EstimateReport bomp(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                    BlockShape block, std::size_t sparsity_blocks)
{
    Dictionary dict(phi);
    return bomp(y, dict, geometry, block, sparsity_blocks);
}

EstimateReport asd(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry, std::size_t sparsity,
                   const AsdConfig &cfg)
{
    const std::size_t k = dict.rows(), p = dict.cols();
    detail::require_observation(y, dict, "asd");
    check_grid(geometry, dict, "asd");
    if (sparsity > k)
        throw InvalidParams("asd: sparsity " + std::to_string(sparsity) + " exceeds K = " + std::to_string(k));
    if (!(cfg.energy_fraction > 0.0 && cfg.energy_fraction <= 1.0))
        throw InvalidParams("asd: energy fraction must lie in (0, 1]");

    const std::size_t pv = geometry.pv, ph = geometry.ph;
    // Window half-widths, clipped so the window never wraps onto itself.
    const std::size_t wv = std::min(cfg.window, (pv - 1) / 2), wh = std::min(cfg.window, (ph - 1) / 2);

    const double y_energy = norm2_squared(y);
    SubsetSolver solver(dict, y);
    std::vector<double> power(p);
    std::vector<std::uint8_t> chosen(p, 0);
    SupportSet support;
    SubsetFit fit;
    fit.residual.assign(y.begin(), y.end());
    fit.residual_energy = y_energy;
    std::vector<double> trace;
    std::size_t it = 0;

    const auto wrap = [](std::size_t base, std::ptrdiff_t off, std::size_t n) {
        const auto nn = static_cast<std::ptrdiff_t>(n);
        return static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(base) + off) % nn + nn) % nn);
    };

    while (support.size() < sparsity && fit.residual_energy > 0.0)
    {
        ++it;
        dict.correlate_power(fit.residual, power);
        for (const auto idx : support)
            power[idx] = -1.0;
        const std::size_t peak = top_indices(power, 1).front();
        for (const auto idx : support)
            power[idx] = 0.0;
        const std::size_t pi = geometry.row_of(peak), pj = geometry.col_of(peak);

        double local = 0.0;
        for (auto dj = -static_cast<std::ptrdiff_t>(wh); dj <= static_cast<std::ptrdiff_t>(wh); ++dj)
            for (auto di = -static_cast<std::ptrdiff_t>(wv); di <= static_cast<std::ptrdiff_t>(wv); ++di)
                local += power[geometry.linear_index(wrap(pi, di, pv), wrap(pj, dj, ph))];

        // Rectangle [pi - up, pi + down] x [pj - left, pj + right], toroidal.
        std::ptrdiff_t up = 0, down = 0, left = 0, right = 0;
        double held = power[peak];
        support.push_back(peak);
        chosen[peak] = 1;

        // Cells a one-step extension would add (excluding ones already selected).
        const auto extension = [&](int dir) {
            SupportSet cells;
            if (dir < 2)
            {
                const std::ptrdiff_t di = dir == 0 ? -(up + 1) : down + 1;
                for (std::ptrdiff_t dj = -left; dj <= right; ++dj)
                    cells.push_back(geometry.linear_index(wrap(pi, di, pv), wrap(pj, dj, ph)));
            }
            else
            {
                const std::ptrdiff_t dj = dir == 2 ? -(left + 1) : right + 1;
                for (std::ptrdiff_t di = -up; di <= down; ++di)
                    cells.push_back(geometry.linear_index(wrap(pi, di, pv), wrap(pj, dj, ph)));
            }
            std::erase_if(cells, [&](std::size_t c) { return chosen[c] != 0; });
            return cells;
        };
        const std::ptrdiff_t lim_v = static_cast<std::ptrdiff_t>(wv), lim_h = static_cast<std::ptrdiff_t>(wh);

        while (held < cfg.energy_fraction * local && support.size() < sparsity)
        {
            int best_dir = -1;
            double best_gain = -1.0;
            SupportSet best_cells;
            for (int dir = 0; dir < 4; ++dir)
            {
                const bool open = (dir == 0 && up < lim_v) || (dir == 1 && down < lim_v) ||
                                  (dir == 2 && left < lim_h) || (dir == 3 && right < lim_h);
                if (!open)
                    continue;
                SupportSet cells = extension(dir);
                if (support.size() + cells.size() > sparsity)
                    continue;
                double gain = 0.0;
                for (const auto c : cells)
                    gain += power[c];
                if (gain > best_gain)
                {
                    best_gain = gain;
                    best_dir = dir;
                    best_cells = std::move(cells);
                }
            }
            if (best_dir < 0)
                break;
            (best_dir == 0 ? up : best_dir == 1 ? down : best_dir == 2 ? left : right) += 1;
            for (const auto c : best_cells)
            {
                support.push_back(c);
                chosen[c] = 1;
            }
            held += best_gain;
        }

        fit = solver.solve(support);
        trace.push_back(fit.residual_energy);
    }
    return finish(p, support, fit, y_energy, it, std::move(trace));
}

EstimateReport asd(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                   std::size_t sparsity, const AsdConfig &cfg)
{
    Dictionary dict(phi);
    return asd(y, dict, geometry, sparsity, cfg);
}

} // namespace beamest

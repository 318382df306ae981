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

// Sparse recovery of beam-domain channels from y = Phi h_B + n.
//
// All estimators return an EstimateReport whose h_hat is exactly zero off the
// reported support and whose coefficients on the support are the least-squares fit
// of y on those columns. Beam indices are 0-based linear indices (column stacking of
// the P_v x P_h beam grid).
//
// Each estimator has two entry points: one taking the measurement matrix directly
// and one taking a Dictionary, which lets several estimators share the Gram cache
// built for one matrix.

#include "beamest/channel.hpp"
#include "beamest/dictionary.hpp"
#include "beamest/linalg.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace beamest
{

using SupportSet = std::vector<std::size_t>;

enum class NeighborRule
{
    as_paper, // refine when the power ratio is >= mu
    inverted, // refine when the power ratio is < mu
    disabled, // never refine (plain SAMP)
};

enum class StopReason
{
    threshold,
    pilot_exhausted,
    max_support,
};

std::string to_string(NeighborRule rule);
std::string to_string(StopReason reason);
NeighborRule parse_neighbor_rule(const std::string &text);

struct BdsSampConfig
{
    double mu = 0.9;
    std::size_t initial_step = 1;
    double snr_db = 20.0;
    std::size_t max_support = 0; // 0 means K
    NeighborRule neighbor_rule = NeighborRule::as_paper;
};

struct EstimateReport
{
    ComplexVector h_hat;
    SupportSet support; // ascending
    // Passes through the selection loop; for SAMP-type runs this includes the passes
    // that only grew the step size.
    std::size_t iterations = 0;
    double final_residual_energy = 0.0;
    StopReason converged_by = StopReason::threshold;
    // Accepted residual energies, one per accepted iteration.
    std::vector<double> residual_trace;
    // Number of iterations in which the neighbor refinement was applied (BDS-SAMP).
    std::size_t refinements = 0;
};

// Four toroidal grid neighbours (row +-1, column +-1 with wrap-around), excluding
// the index itself and duplicates on degenerate grids. Ascending order.
SupportSet cross_block_neighbors(std::size_t idx, const ArrayGeometry &geometry);

// Indices of the `count` largest values, ties broken by lower index; returned in
// descending-value order.
std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t count);

// Stopping level ||y||^2 / (10^{SNR/10} + 1), floored at kResidualFloor ||y||^2 so that
// noiseless runs terminate once the fit is exact to working precision.
double stopping_threshold(double y_energy, double snr_db);
inline constexpr double kResidualFloor = 1e-24;

EstimateReport bds_samp(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry,
                        const BdsSampConfig &cfg);
EstimateReport bds_samp(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                        const BdsSampConfig &cfg);

// BDS-SAMP without the neighbour refinement stage.
EstimateReport samp(std::span<const cplx> y, Dictionary &dict, const BdsSampConfig &cfg);
EstimateReport samp(std::span<const cplx> y, const ComplexMatrix &phi, const BdsSampConfig &cfg);

EstimateReport omp(std::span<const cplx> y, Dictionary &dict, std::size_t sparsity);
EstimateReport omp(std::span<const cplx> y, const ComplexMatrix &phi, std::size_t sparsity);

struct BlockShape
{
    std::size_t rows = 4;
    std::size_t cols = 4;

    bool operator==(const BlockShape &) const = default;
};

// Block OMP over a fixed rectangular tiling of the beam grid. Throws InvalidBlockShape.
EstimateReport bomp(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry, BlockShape block,
                    std::size_t sparsity_blocks);
EstimateReport bomp(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                    BlockShape block, std::size_t sparsity_blocks);

struct AsdConfig
{
    // Stop growing a rectangle once it holds this fraction of the correlation energy
    // inside the local window.
    double energy_fraction = 0.8;
    // Half-width of the (2w + 1) x (2w + 1) toroidal window defining "local energy".
    std::size_t window = 2;

    bool operator==(const AsdConfig &) const = default;
};

// Adaptive rectangular support detection with known sparsity.
EstimateReport asd(std::span<const cplx> y, Dictionary &dict, const ArrayGeometry &geometry, std::size_t sparsity,
                   const AsdConfig &cfg = {});
EstimateReport asd(std::span<const cplx> y, const ComplexMatrix &phi, const ArrayGeometry &geometry,
                   std::size_t sparsity, const AsdConfig &cfg = {});

// Smallest set of largest-|h| indices holding >= energy_fraction of ||h||^2.
SupportSet dominant_support(std::span<const cplx> h_true, double energy_fraction);

// Genie-aided LS on the dominant support of the true channel. Throws SupportTooLarge.
EstimateReport oracle_ls(std::span<const cplx> y, Dictionary &dict, std::span<const cplx> h_true,
                         double energy_fraction = 0.99);
EstimateReport oracle_ls(std::span<const cplx> y, const ComplexMatrix &phi, std::span<const cplx> h_true,
                         double energy_fraction = 0.99);

// Genie support sized for a known noise level: the prefix of the magnitude-sorted true
// channel minimising the predicted LS error
//   E + (sigma2 + E / K) |S| K / (K - |S| - 1),   E = energy outside S,
// i.e. the missed energy plus the LS noise gain on |S| random +-1/sqrt(K) columns, with
// the missed tail counted as additional white measurement noise. The result has at
// most K - 2 entries.
SupportSet mse_optimal_support(std::span<const cplx> h_true, double sigma2, std::size_t k);

// Least-squares fit of y on a given support (used by the oracle). Throws SupportTooLarge.
EstimateReport fit_support(std::span<const cplx> y, Dictionary &dict, std::span<const std::size_t> support);

// ||h_true - h_hat||^2 / ||h_true||^2. Throws ZeroReference and DimensionMismatch.
double nmse(std::span<const cplx> h_true, std::span<const cplx> h_hat);

} // namespace beamest

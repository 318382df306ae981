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

// Spatially non-stationary UPA channel drops and their beam-domain representation.
//
// Index conventions:
//  - Array elements and beams are 0-based (row p / beam i in [0, P_v), column q /
//    beam j in [0, P_h)). Beam (i, j) has linear index j * P_v + i (column stacking).
//  - Visibility regions use 1-based inclusive element numbers, the same numbers that
//    parameterize the Dirichlet kernel f_{I_s, I_e}.

#include "beamest/linalg.hpp"
#include "beamest/random.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace beamest
{

struct ArrayGeometry
{
    std::size_t pv = 32; // vertical elements (rows)
    std::size_t ph = 32; // horizontal elements (columns)
    double element_spacing = 0.5;

    std::size_t total() const noexcept { return pv * ph; }
    std::size_t linear_index(std::size_t i, std::size_t j) const noexcept { return j * pv + i; }
    std::size_t row_of(std::size_t idx) const noexcept { return idx % pv; }
    std::size_t col_of(std::size_t idx) const noexcept { return idx / pv; }

    // Throws InvalidParams.
    void validate() const;

    bool operator==(const ArrayGeometry &) const = default;
};

struct VisibilityRegion
{
    std::size_t row_start = 1;
    std::size_t row_end = 1;
    std::size_t col_start = 1;
    std::size_t col_end = 1;

    static VisibilityRegion full(const ArrayGeometry &g) { return {1, g.pv, 1, g.ph}; }

    std::size_t rows() const noexcept { return row_end - row_start + 1; }
    std::size_t cols() const noexcept { return col_end - col_start + 1; }
    bool is_full(const ArrayGeometry &g) const noexcept
    {
        return row_start == 1 && col_start == 1 && row_end == g.pv && col_end == g.ph;
    }
    bool valid_for(const ArrayGeometry &g) const noexcept
    {
        return row_start >= 1 && row_start <= row_end && row_end <= g.pv && col_start >= 1 &&
               col_start <= col_end && col_end <= g.ph;
    }

    bool operator==(const VisibilityRegion &) const = default;
};

struct PathComponent
{
    double beta = 0.0;     // amplitude
    double phi = 0.0;      // initial phase [rad]
    double tau = 0.0;      // delay [s]
    double theta_az = 0.0; // azimuth spatial frequency in [-0.5, 0.5]
    double theta_el = 0.0; // elevation spatial frequency in [-0.5, 0.5]
    VisibilityRegion vr;

    // -2 pi f tau + phi
    double phase(double carrier_freq) const;

    bool operator==(const PathComponent &) const = default;
};

struct ClusterSet
{
    std::vector<PathComponent> wv_paths;
    std::vector<PathComponent> pv_paths;
    double rho = 0.0;
    double carrier_freq = 11e9;

    double total_power() const;
    std::size_t path_count() const noexcept { return wv_paths.size() + pv_paths.size(); }

    bool operator==(const ClusterSet &) const = default;
};

// Simplified cluster statistics. Defaults: 20 clusters x 20 rays, 11 GHz carrier.
struct ChannelGenParams
{
    std::size_t clusters = 20;
    std::size_t rays_per_cluster = 20;
    double rho = 0.45;
    double carrier_freq = 11e9;
    // Standard deviation of per-ray spatial-frequency offsets around the cluster centre.
    double angular_spread = 0.01;
    // RMS of the exponential cluster-delay distribution [s].
    double delay_spread = 100e-9;
    // Cluster power P_n ~ exp(-tau_n (r - 1) / (r * delay_spread)); r is this value.
    double power_decay = 2.1;
    // Per-dimension VR length drawn uniformly from [floor(P_dim * min), floor(P_dim * max)].
    double vr_min_fraction = 0.125;
    double vr_max_fraction = 0.5;

    bool operator==(const ChannelGenParams &) const = default;
};

struct ChannelRealization
{
    ComplexMatrix h_array; // P_v x P_h
    ComplexMatrix h_beam;  // P_v x P_h
    ComplexVector h;       // column stacking of h_array
    ComplexVector h_b;     // column stacking of h_beam
};

// beta e^{j psi}, the complex gain of one path at the given carrier.
cplx path_gain(const PathComponent &path, double carrier_freq);

ClusterSet sample_clusters(const ArrayGeometry &geometry, const ChannelGenParams &params, Rng &rng);

// P_v x P_h 0/1 grid, column-stacked.
struct BinaryMask
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return bits[c * rows + r]; }
    std::size_t count() const;
};

// Entry (p, q) is 1 iff element (p + 1, q + 1) lies inside `vr`.
BinaryMask vr_mask(const VisibilityRegion &vr, const ArrayGeometry &geometry);

ComplexMatrix array_ctf(const ClusterSet &clusters, const ArrayGeometry &geometry);

// conj(F_el) H conj(F_az)^T; beam (i, j) sits at grid frequencies (theta_i, theta_j).
ComplexMatrix beam_transform(const ComplexMatrix &h, const ArrayGeometry &geometry);
// Inverse of beam_transform: F_el^T H_B F_az.
ComplexMatrix inverse_beam_transform(const ComplexMatrix &h_beam, const ArrayGeometry &geometry);

ChannelRealization realize(const ClusterSet &clusters, const ArrayGeometry &geometry);

// Closed-form beam entry (i, j), 0-based, from Dirichlet kernels. Throws IndexOutOfRange.
cplx beam_element_oracle(const ClusterSet &clusters, std::size_t i, std::size_t j, const ArrayGeometry &geometry);

// f_{I_s, I_e}(x) = e^{j pi x (I_s + I_e - 2)} sin(pi x L) / sin(pi x), L = I_e - I_s + 1.
// Uses the analytic limit where |sin(pi x)| < 1e-12.
cplx dirichlet_kernel(std::size_t is, std::size_t ie, double x);

// |f_{I_s,I_e}(theta0 - theta_j)| / (I_e - I_s + 1) sampled on the P-point beam grid.
std::vector<double> leakage_envelope(std::size_t is, std::size_t ie, double theta0, std::size_t p_grid);

} // namespace beamest

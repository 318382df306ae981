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

// Cluster sampling. The statistics are a compact stand-in for the 3GPP UMi tables:
//  - cluster delays: i.i.d. exponential with mean `delay_spread`, shifted so the first is 0
//  - cluster powers: exp(-tau (r - 1) / (r * delay_spread)), r = `power_decay`
//  - cluster centres: uniform on [-0.5, 0.5) in both spatial frequencies
//  - rays: centre + Gaussian offset (std `angular_spread`), wrapped to [-0.5, 0.5];
//    equal power within a cluster; uniform initial phase
//  - ceil(rho N) randomly chosen clusters are partially visible; each gets one
//    axis-aligned rectangular VR shared by all of its rays

#include "beamest/channel.hpp"

#include "beamest/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace beamest
{
namespace
{

double wrap_frequency(double x) { return x - std::round(x); }

struct LengthRange
{
    std::size_t lo;
    std::size_t hi;
};

LengthRange vr_length_range(std::size_t p_dim, const ChannelGenParams &params)
{
    const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(p_dim) * params.vr_min_fraction)));
    const auto hi = std::max<std::size_t>(lo, static_cast<std::size_t>(std::floor(static_cast<double>(p_dim) * params.vr_max_fraction)));
    return {lo, hi};
}

void check_params(const ArrayGeometry &geometry, const ChannelGenParams &params)
{
    geometry.validate();
    if (params.clusters < 1)
        throw InvalidParams("cluster count must be >= 1");
    if (params.rays_per_cluster < 1)
        throw InvalidParams("rays per cluster must be >= 1");
    if (!(params.rho >= 0.0 && params.rho <= 1.0))
        throw InvalidParams("rho must lie in [0, 1], got " + std::to_string(params.rho));
    if (!(params.angular_spread >= 0.0) || !std::isfinite(params.angular_spread))
        throw InvalidParams("angular spread must be finite and >= 0");
    if (!(params.delay_spread > 0.0) || !std::isfinite(params.delay_spread))
        throw InvalidParams("delay spread must be finite and > 0");
    if (!(params.power_decay > 1.0) || !std::isfinite(params.power_decay))
        throw InvalidParams("power decay factor must be finite and > 1");
    if (!(params.carrier_freq > 0.0) || !std::isfinite(params.carrier_freq))
        throw InvalidParams("carrier frequency must be finite and > 0");
    if (!(params.vr_min_fraction > 0.0) || !(params.vr_min_fraction <= params.vr_max_fraction))
        throw InvalidParams("VR size fractions must satisfy 0 < min <= max");

    const auto rv = vr_length_range(geometry.pv, params);
    const auto rh = vr_length_range(geometry.ph, params);
    if (rv.hi > geometry.pv || rh.hi > geometry.ph)
        throw InvalidParams("VR size range exceeds array dimensions");
    if (params.rho > 0.0 && rv.lo == geometry.pv && rh.lo == geometry.ph)
        throw InvalidParams("VR size range admits no partially visible region on a " + std::to_string(geometry.pv) +
                            "x" + std::to_string(geometry.ph) + " array");
}

std::size_t uniform_index(Rng &rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

VisibilityRegion draw_vr(const ArrayGeometry &geometry, const ChannelGenParams &params, Rng &rng)
{
    const auto rv = vr_length_range(geometry.pv, params);
    const auto rh = vr_length_range(geometry.ph, params);
    for (;;)
    {
        const std::size_t lv = uniform_index(rng, rv.lo, rv.hi);
        const std::size_t lh = uniform_index(rng, rh.lo, rh.hi);
        const std::size_t sv = uniform_index(rng, 1, geometry.pv - lv + 1);
        const std::size_t sh = uniform_index(rng, 1, geometry.ph - lh + 1);
        VisibilityRegion vr{sv, sv + lv - 1, sh, sh + lh - 1};
        if (!vr.is_full(geometry))
            return vr;
    }
}

} // namespace

void ArrayGeometry::validate() const
{
    if (pv < 1 || ph < 1)
        throw InvalidParams("array dimensions must be >= 1, got " + std::to_string(pv) + "x" + std::to_string(ph));
    if (!(element_spacing > 0.0))
        throw InvalidParams("element spacing must be > 0");
}

double PathComponent::phase(double carrier_freq) const
{
    return -2.0 * std::numbers::pi * carrier_freq * tau + phi;
}

cplx path_gain(const PathComponent &path, double carrier_freq)
{
    // Phase in cycles, reduced before the trig evaluation (f tau is ~1e3 cycles).
    const double cycles = -carrier_freq * path.tau + path.phi / (2.0 * std::numbers::pi);
    return path.beta * unit_phasor(cycles);
}

double ClusterSet::total_power() const
{
    double p = 0.0;
    for (const auto &c : wv_paths)
        p += c.beta * c.beta;
    for (const auto &c : pv_paths)
        p += c.beta * c.beta;
    return p;
}

ClusterSet sample_clusters(const ArrayGeometry &geometry, const ChannelGenParams &params, Rng &rng)
{
    check_params(geometry, params);

    const std::size_t n = params.clusters;
    const std::size_t m = params.rays_per_cluster;
    const auto n_pv = static_cast<std::size_t>(std::ceil(params.rho * static_cast<double>(n) - 1e-9));

    std::exponential_distribution<double> delay_dist(1.0 / params.delay_spread);
    std::uniform_real_distribution<double> centre_dist(-0.5, 0.5);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> offset_dist(0.0, 1.0);

    std::vector<double> delays(n);
    for (auto &t : delays)
        t = delay_dist(rng);
    const double t0 = *std::min_element(delays.begin(), delays.end());
    const double r = params.power_decay;
    std::vector<double> powers(n);
    for (std::size_t c = 0; c < n; ++c)
    {
        delays[c] -= t0;
        powers[c] = std::exp(-delays[c] * (r - 1.0) / (r * params.delay_spread));
    }
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);

    // Fisher-Yates over cluster ids; the first n_pv become partially visible.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[uniform_index(rng, 0, i - 1)]);
    std::vector<bool> partial(n, false);
    for (std::size_t i = 0; i < n_pv; ++i)
        partial[order[i]] = true;

    ClusterSet set;
    set.rho = params.rho;
    set.carrier_freq = params.carrier_freq;
    set.wv_paths.reserve((n - n_pv) * m);
    set.pv_paths.reserve(n_pv * m);

    for (std::size_t c = 0; c < n; ++c)
    {
        const double centre_az = centre_dist(rng);
        const double centre_el = centre_dist(rng);
        const VisibilityRegion vr = partial[c] ? draw_vr(geometry, params, rng) : VisibilityRegion::full(geometry);
        const double beta = std::sqrt(powers[c] / total / static_cast<double>(m));
        for (std::size_t ray = 0; ray < m; ++ray)
        {
            PathComponent p;
            p.beta = beta;
            p.tau = delays[c];
            p.theta_az = wrap_frequency(centre_az + params.angular_spread * offset_dist(rng));
            p.theta_el = wrap_frequency(centre_el + params.angular_spread * offset_dist(rng));
            p.phi = phase_dist(rng);
            p.vr = vr;
            (partial[c] ? set.pv_paths : set.wv_paths).push_back(p);
        }
    }
    return set;
}

std::size_t BinaryMask::count() const
{
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BinaryMask vr_mask(const VisibilityRegion &vr, const ArrayGeometry &geometry)
{
    BinaryMask mask{geometry.pv, geometry.ph, std::vector<std::uint8_t>(geometry.total(), 0)};
    for (std::size_t q = vr.col_start; q <= vr.col_end; ++q)
        for (std::size_t p = vr.row_start; p <= vr.row_end; ++p)
            mask.bits[(q - 1) * geometry.pv + (p - 1)] = 1;
    return mask;
}

} // namespace beamest

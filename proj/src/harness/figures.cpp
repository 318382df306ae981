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


#include "beamest/harness.hpp"

#include "beamest/error.hpp"

#include <cstdio>
#include <numbers>
#include <ostream>

namespace beamest
{

std::vector<LeakageSample> run_leakage(std::size_t is, std::size_t ie, double theta0, std::size_t p_grid)
{
    const auto env = leakage_envelope(is, ie, theta0, p_grid);
    std::vector<LeakageSample> out(p_grid);
    for (std::size_t j = 0; j < p_grid; ++j)
        out[j] = {grid_frequency(j, p_grid), env[j]};
    return out;
}

void write_leakage_csv(const std::vector<LeakageSample> &samples, std::ostream &out)
{
    out << "theta,envelope\n";
    char buf[96];
    for (const auto &s : samples)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.theta, s.envelope);
        out << buf;
    }
}

ChannelRealization draw_channel(const ExperimentConfig &cfg, std::uint64_t trial)
{
    Rng rng = make_rng(cfg.seed, {0, trial}); // same stream as the sweep's channel draw
    ClusterSet clusters;
    if (cfg.channel_model == ChannelModel::single_path)
    {
        clusters.rho = 0.0;
        clusters.carrier_freq = cfg.channel.carrier_freq;
        PathComponent p;
        p.beta = 1.0;
        p.theta_el = grid_frequency(std::uniform_int_distribution<std::size_t>(0, cfg.geometry.pv - 1)(rng),
                                    cfg.geometry.pv);
        p.theta_az = grid_frequency(std::uniform_int_distribution<std::size_t>(0, cfg.geometry.ph - 1)(rng),
                                    cfg.geometry.ph);
        p.phi = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
        p.vr = VisibilityRegion::full(cfg.geometry);
        clusters.wv_paths.push_back(p);
    }
    else
    {
        clusters = sample_clusters(cfg.geometry, cfg.channel, rng);
    }
    return realize(clusters, cfg.geometry);
}

void write_channel_dump(const ExperimentConfig &cfg, std::uint64_t trial, std::ostream &out)
{
    const ChannelRealization ch = draw_channel(cfg, trial);
    char buf[96];
    std::snprintf(buf, sizeof buf, "pv=%zu,ph=%zu,rho=%.15g,seed=%llu\n", cfg.geometry.pv, cfg.geometry.ph, cfg.channel.rho,
                  static_cast<unsigned long long>(cfg.seed));
    out << buf;
    for (std::size_t i = 0; i < cfg.geometry.pv; ++i)
    {
        for (std::size_t j = 0; j < cfg.geometry.ph; ++j)
        {
            const cplx v = ch.h_beam(i, j);
            std::snprintf(buf, sizeof buf, "%s%.17g%+.17gj", j ? "," : "", v.real(), v.imag());
            out << buf;
        }
        out << "\n";
    }
}

} // namespace beamest

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
#include <numeric>
#include <string>

namespace beamest
{

std::string to_string(NeighborRule rule)
{
    switch (rule)
    {
    case NeighborRule::as_paper:
        return "as-paper";
    case NeighborRule::inverted:
        return "inverted";
    case NeighborRule::disabled:
        return "disabled";
    }
    return "unknown";
}

std::string to_string(StopReason reason)
{
    switch (reason)
    {
    case StopReason::threshold:
        return "threshold";
    case StopReason::pilot_exhausted:
        return "pilot-exhausted";
    case StopReason::max_support:
        return "max-support";
    }
    return "unknown";
}

NeighborRule parse_neighbor_rule(const std::string &text)
{
    if (text == "as-paper")
        return NeighborRule::as_paper;
    if (text == "inverted")
        return NeighborRule::inverted;
    if (text == "disabled")
        return NeighborRule::disabled;
    throw InvalidParams("unknown neighbor rule '" + text + "' (expected as-paper, inverted or disabled)");
}

SupportSet cross_block_neighbors(std::size_t idx, const ArrayGeometry &geometry)
{
    geometry.validate();
    if (idx >= geometry.total())
        throw IndexOutOfRange("cross_block_neighbors: index " + std::to_string(idx) + " outside grid of " +
                              std::to_string(geometry.total()));
    const std::size_t pv = geometry.pv, ph = geometry.ph;
    const std::size_t i = geometry.row_of(idx), j = geometry.col_of(idx);
    SupportSet out{
        geometry.linear_index((i + pv - 1) % pv, j),
        geometry.linear_index((i + 1) % pv, j),
        geometry.linear_index(i, (j + ph - 1) % ph),
        geometry.linear_index(i, (j + 1) % ph),
    };
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase(out, idx);
    return out;
}

std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t count)
{
    count = std::min(count, values.size());
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto before = [&](std::size_t a, std::size_t b) {
        return values[a] > values[b] || (values[a] == values[b] && a < b);
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(), before);
    idx.resize(count);
    return idx;
}

double stopping_threshold(double y_energy, double snr_db)
{
    const double level = std::isinf(snr_db) && snr_db > 0 ? 0.0 : y_energy / (std::pow(10.0, snr_db / 10.0) + 1.0);
    return std::max(level, kResidualFloor * y_energy);
}

double nmse(std::span<const cplx> h_true, std::span<const cplx> h_hat)
{
    if (h_true.size() != h_hat.size())
        throw DimensionMismatch("nmse: lengths " + std::to_string(h_true.size()) + " and " +
                                std::to_string(h_hat.size()) + " differ");
    // Same accumulation order for both sums, so h_hat = 0 gives exactly 1.
    double ref = 0.0, err = 0.0;
    for (std::size_t i = 0; i < h_true.size(); ++i)
    {
        ref += std::norm(h_true[i]);
        err += std::norm(h_true[i] - h_hat[i]);
    }
    if (!(ref > 0.0))
        throw ZeroReference("nmse: reference channel has zero energy");
    return err / ref;
}

namespace detail
{

void require_observation(std::span<const cplx> y, const Dictionary &dict, const char *who)
{
    if (y.size() != dict.rows())
        throw DimensionMismatch(std::string(who) + ": y has " + std::to_string(y.size()) + " entries, Phi has " +
                                std::to_string(dict.rows()) + " rows");
}

EstimateReport make_report(std::size_t p, std::span<const std::size_t> support, const SubsetFit &fit)
{
    EstimateReport rep;
    rep.h_hat = ComplexVector(p);
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    rep.support.reserve(support.size());
    for (const auto o : order)
    {
        rep.support.push_back(support[o]);
        rep.h_hat[support[o]] = fit.coeffs[o];
    }
    rep.final_residual_energy = fit.residual_energy;
    return rep;
}

EstimateReport zero_report(std::size_t p)
{
    EstimateReport rep;
    rep.h_hat = ComplexVector(p);
    return rep;
}

} // namespace detail
} // namespace beamest

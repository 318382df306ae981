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

#include "beamest/channel.hpp"

#include "beamest/error.hpp"
#include "beamest/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace beamest
{
namespace
{

void require_shape(const ComplexMatrix &h, const ArrayGeometry &geometry, const char *what)
{
    if (h.rows() != geometry.pv || h.cols() != geometry.ph)
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + ", geometry is " + std::to_string(geometry.pv) + "x" +
                                std::to_string(geometry.ph));
}

void add_path(ComplexMatrix &h, const PathComponent &path, const VisibilityRegion &vr, double carrier_freq)
{
    const auto &k = kernels::active();
    const cplx g = path_gain(path, carrier_freq);
    const std::size_t r0 = vr.row_start - 1, nrows = vr.rows();

    // Elevation steering entries for the visible rows: b_p = e^{j 2 pi p theta_el}.
    std::vector<cplx> b(nrows);
    for (std::size_t r = 0; r < nrows; ++r)
        b[r] = unit_phasor(static_cast<double>(r0 + r) * path.theta_el);

    for (std::size_t q = vr.col_start - 1; q < vr.col_end; ++q)
    {
        const cplx aq = g * unit_phasor(static_cast<double>(q) * path.theta_az);
        k.caxpy(aq, b.data(), h.col(q).data() + r0, nrows);
    }
}

} // namespace

ComplexMatrix array_ctf(const ClusterSet &clusters, const ArrayGeometry &geometry)
{
    geometry.validate();
    ComplexMatrix h(geometry.pv, geometry.ph);
    const auto full = VisibilityRegion::full(geometry);
    for (const auto &p : clusters.wv_paths)
        add_path(h, p, full, clusters.carrier_freq);
    for (const auto &p : clusters.pv_paths)
    {
        if (!p.vr.valid_for(geometry))
            throw InvalidParams("path visibility region does not fit the array");
        add_path(h, p, p.vr, clusters.carrier_freq);
    }
    return h;
}

ComplexMatrix beam_transform(const ComplexMatrix &h, const ArrayGeometry &geometry)
{
    require_shape(h, geometry, "beam_transform");
    const ComplexMatrix f_el = dft_basis(geometry.pv);
    const ComplexMatrix f_az = dft_basis(geometry.ph);
    return multiply(multiply(conjugate(f_el), h), adjoint(f_az));
}

ComplexMatrix inverse_beam_transform(const ComplexMatrix &h_beam, const ArrayGeometry &geometry)
{
    require_shape(h_beam, geometry, "inverse_beam_transform");
    const ComplexMatrix f_el = dft_basis(geometry.pv);
    const ComplexMatrix f_az = dft_basis(geometry.ph);
    return multiply(multiply(transpose(f_el), h_beam), f_az);
}

ChannelRealization realize(const ClusterSet &clusters, const ArrayGeometry &geometry)
{
    ChannelRealization out;
    out.h_array = array_ctf(clusters, geometry);
    out.h_beam = beam_transform(out.h_array, geometry);
    out.h = vectorize(out.h_array);
    out.h_b = vectorize(out.h_beam);
    return out;
}

cplx dirichlet_kernel(std::size_t is, std::size_t ie, double x)
{
    if (is < 1 || ie < is)
        throw InvalidParams("dirichlet_kernel: need 1 <= I_s <= I_e");
    const auto len = static_cast<double>(ie - is + 1);
    const double n = std::nearbyint(x);
    const double xr = x - n;
    // e^{j pi x (I_s + I_e - 2)}
    const cplx phase = unit_phasor(0.5 * x * static_cast<double>(is + ie - 2));
    // (-1)^{n (L - 1)}
    const bool odd = std::fmod(std::abs(n) * (len - 1.0), 2.0) == 1.0;
    const double sign = odd ? -1.0 : 1.0;
    const double den = std::sin(std::numbers::pi * xr);
    if (std::abs(den) < 1e-12)
        return sign * len * phase;
    return sign * (std::sin(std::numbers::pi * len * xr) / den) * phase;
}

cplx beam_element_oracle(const ClusterSet &clusters, std::size_t i, std::size_t j, const ArrayGeometry &geometry)
{
    geometry.validate();
    if (i >= geometry.pv || j >= geometry.ph)
        throw IndexOutOfRange("beam_element_oracle: beam (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") outside " + std::to_string(geometry.pv) + "x" + std::to_string(geometry.ph));
    const double theta_i = grid_frequency(i, geometry.pv);
    const double theta_j = grid_frequency(j, geometry.ph);

    cplx sum = 0.0;
    for (const auto &p : clusters.wv_paths)
        sum += path_gain(p, clusters.carrier_freq) * dirichlet_kernel(1, geometry.pv, p.theta_el - theta_i) *
               dirichlet_kernel(1, geometry.ph, p.theta_az - theta_j);
    for (const auto &p : clusters.pv_paths)
        sum += path_gain(p, clusters.carrier_freq) *
               dirichlet_kernel(p.vr.row_start, p.vr.row_end, p.theta_el - theta_i) *
               dirichlet_kernel(p.vr.col_start, p.vr.col_end, p.theta_az - theta_j);
    return sum / std::sqrt(static_cast<double>(geometry.total()));
}

std::vector<double> leakage_envelope(std::size_t is, std::size_t ie, double theta0, std::size_t p_grid)
{
    if (is < 1 || ie < is)
        throw InvalidParams("leakage_envelope: need 1 <= I_s <= I_e");
    if (p_grid < 1)
        throw InvalidParams("leakage_envelope: grid size must be >= 1");
    const auto len = static_cast<double>(ie - is + 1);
    std::vector<double> env(p_grid);
    for (std::size_t j = 0; j < p_grid; ++j)
        env[j] = std::abs(dirichlet_kernel(is, ie, theta0 - grid_frequency(j, p_grid))) / len;
    return env;
}

} // namespace beamest

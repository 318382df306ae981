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

// Compressed pilot observations y = Phi h_B + n.
//
// SNR is defined on the compressed observation: the noise variance per measurement is
// sigma2 = ||Phi h_B||^2 / (K 10^{SNR/10}), so E||n||^2 = ||Phi h_B||^2 / 10^{SNR/10}.
// An infinite snr_db gives a noiseless observation.

#include "beamest/linalg.hpp"
#include "beamest/random.hpp"

#include <cstddef>

namespace beamest
{

struct MeasurementModel
{
    ComplexMatrix phi;
    double snr_db = 0.0;
    double sigma2 = 0.0;

    std::size_t k() const noexcept { return phi.rows(); }
    std::size_t p() const noexcept { return phi.cols(); }
};

struct Observation
{
    ComplexVector y;
    ComplexVector h_b_true; // scoring only
    ComplexVector noise;
    double sigma2 = 0.0;
    double snr_db = 0.0;
};

// K x P matrix with i.i.d. equiprobable entries in {-1/sqrt(K), +1/sqrt(K)}.
ComplexMatrix bernoulli_matrix(std::size_t k, std::size_t p, Rng &rng);

// max_{i != j} |Phi_i^H Phi_j|. Throws InvalidParams for fewer than two columns.
double coherence(const ComplexMatrix &phi);

// Throws DimensionMismatch and ZeroChannel.
Observation observe(const ComplexMatrix &phi, std::span<const cplx> h_b, double snr_db, Rng &rng);

// Noise variance for a given noiseless observation energy and SNR (0 for +inf).
double noise_variance(double signal_energy, std::size_t k, double snr_db);

} // namespace beamest

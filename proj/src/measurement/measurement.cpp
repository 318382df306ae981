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

#include "beamest/measurement.hpp"

#include "beamest/dictionary.hpp"
#include "beamest/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamest
{

ComplexMatrix bernoulli_matrix(std::size_t k, std::size_t p, Rng &rng)
{
    if (k < 1 || p < 1)
        throw InvalidParams("bernoulli_matrix: K and P must be >= 1");
    const double amp = 1.0 / std::sqrt(static_cast<double>(k));
    ComplexMatrix phi(k, p);
    cplx *out = phi.data();
    const std::size_t n = k * p;
    // 64 signs per engine draw, consumed in storage order.
    for (std::size_t i = 0; i < n; i += 64)
    {
        std::uint64_t bits = rng();
        const std::size_t end = std::min(n, i + 64);
        for (std::size_t t = i; t < end; ++t, bits >>= 1)
            out[t] = (bits & 1U) ? amp : -amp;
    }
    return phi;
}

double coherence(const ComplexMatrix &phi)
{
    if (phi.cols() < 2)
        throw InvalidParams("coherence: need at least two columns");
    Dictionary dict(phi);
    double eta = 0.0;
    for (std::size_t j = 1; j < phi.cols(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            eta = std::max(eta, std::abs(dict.gram(i, j)));
    return eta;
}

double noise_variance(double signal_energy, std::size_t k, double snr_db)
{
    if (std::isinf(snr_db) && snr_db > 0)
        return 0.0;
    return signal_energy / (static_cast<double>(k) * std::pow(10.0, snr_db / 10.0));
}

Observation observe(const ComplexMatrix &phi, std::span<const cplx> h_b, double snr_db, Rng &rng)
{
    if (phi.cols() != h_b.size())
        throw DimensionMismatch("observe: Phi has " + std::to_string(phi.cols()) + " columns, channel has " +
                                std::to_string(h_b.size()) + " entries");
    if (std::isnan(snr_db))
        throw InvalidParams("observe: SNR is NaN");
    if (norm2_squared(h_b) == 0.0)
        throw ZeroChannel("observe: channel vector is identically zero");

    Observation obs;
    obs.snr_db = snr_db;
    obs.h_b_true = ComplexVector(std::vector<cplx>(h_b.begin(), h_b.end()));
    const ComplexVector signal = multiply(phi, h_b);
    obs.sigma2 = noise_variance(norm2_squared(signal), phi.rows(), snr_db);

    obs.noise = ComplexVector(phi.rows());
    obs.y = signal;
    if (obs.sigma2 > 0.0)
    {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double sd = std::sqrt(obs.sigma2 / 2.0);
        for (std::size_t i = 0; i < phi.rows(); ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            obs.noise[i] = {sd * re, sd * im};
            obs.y[i] += obs.noise[i];
        }
    }
    return obs;
}

} // namespace beamest

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
#include "beamest/measurement.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

namespace beamest
{
namespace
{

// Stream tags for derive_seed paths.
constexpr std::uint64_t kChannelStream = 0;
constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

struct Cell
{
    double nmse = 0.0;
    double support = 0.0;
    double iterations = 0.0;
    double seconds = 0.0;
    bool ok = false;
};

std::mutex log_mutex;

void log_failure(std::size_t trial, double snr, const std::string &name, const char *what)
{
    const std::lock_guard lock(log_mutex);
    std::cerr << "beamest: trial " << trial << ", snr " << snr << " dB, " << name << " failed: " << what << "\n";
}

EstimateReport run_estimator(const std::string &name, const ExperimentConfig &cfg, std::span<const cplx> y,
                             Dictionary &dict, std::span<const std::size_t> oracle_support, double snr_db)
{
    BdsSampConfig bc;
    bc.mu = cfg.mu;
    bc.initial_step = cfg.initial_step;
    bc.snr_db = snr_db;
    bc.max_support = cfg.effective_max_support();
    bc.neighbor_rule = cfg.neighbor_rule;
    const std::size_t genie = std::min(oracle_support.size(), cfg.k);

    if (name == "oracle-ls")
        return fit_support(y, dict, oracle_support);
    if (name == "bds-samp")
        return bds_samp(y, dict, cfg.geometry, bc);
    if (name == "bds-samp-inv")
    {
        bc.neighbor_rule = NeighborRule::inverted;
        return bds_samp(y, dict, cfg.geometry, bc);
    }
    if (name == "samp")
        return samp(y, dict, bc);
    if (name == "omp")
        return omp(y, dict, genie);
    if (name == "bomp")
    {
        const std::size_t tile = cfg.bomp_block.rows * cfg.bomp_block.cols;
        return bomp(y, dict, cfg.geometry, cfg.bomp_block, (genie + tile - 1) / tile);
    }
    if (name == "asd")
        return asd(y, dict, cfg.geometry, genie, cfg.asd);
    throw InvalidParams("unregistered estimator '" + name + "'");
}

// Cells of one trial, indexed [snr][estimator].
std::vector<Cell> run_trial(const ExperimentConfig &cfg, std::size_t trial)
{
    const std::size_t n_snr = cfg.snr_grid_db.size(), n_est = cfg.estimators.size();
    std::vector<Cell> cells(n_snr * n_est);

    const ChannelRealization ch = draw_channel(cfg, trial);
    Rng phi_rng = cfg.freeze_phi ? make_rng(cfg.seed, {kMatrixStream}) : make_rng(cfg.seed, {kMatrixStream, trial});
    const ComplexMatrix phi = bernoulli_matrix(cfg.k, cfg.geometry.total(), phi_rng);
    Dictionary dict(phi);
    const auto h = ch.h_b.span();

    for (std::size_t si = 0; si < n_snr; ++si)
    {
        const double snr = cfg.snr_grid_db[si];
        Rng noise_rng = make_rng(cfg.seed, {kNoiseStream, si, trial});
        const Observation obs = observe(phi, h, snr, noise_rng);
        const SupportSet oracle_support = cfg.oracle_energy_fraction == 0.0
                                              ? mse_optimal_support(h, obs.sigma2, cfg.k)
                                              : dominant_support(h, cfg.oracle_energy_fraction);
        for (std::size_t ei = 0; ei < n_est; ++ei)
        {
            Cell &cell = cells[si * n_est + ei];
            const auto &name = cfg.estimators[ei];
            try
            {
                const auto t0 = std::chrono::steady_clock::now();
                const EstimateReport rep = run_estimator(name, cfg, obs.y.span(), dict, oracle_support, snr);
                cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                cell.nmse = nmse(h, rep.h_hat.span());
                cell.support = static_cast<double>(rep.support.size());
                cell.iterations = static_cast<double>(rep.iterations);
                cell.ok = true;
            }
            catch (const Error &e)
            {
                log_failure(trial, snr, name, e.what());
            }
        }
    }
    return cells;
}

} // namespace

const SweepRow &SweepResult::at(double snr_db, const std::string &estimator) const
{
    for (const auto &r : rows)
        if (r.snr_db == snr_db && r.estimator == estimator)
            return r;
    throw InvalidParams("no sweep row for " + estimator + " at " + std::to_string(snr_db) + " dB");
}

SweepResult run_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    const std::size_t n_snr = cfg.snr_grid_db.size(), n_est = cfg.estimators.size();
    std::vector<std::vector<Cell>> per_trial(cfg.trials);

    std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;)
        {
            const std::size_t t = next.fetch_add(1);
            if (t >= cfg.trials)
                return;
            try
            {
                per_trial[t] = run_trial(cfg, t);
            }
            catch (...)
            {
                const std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                next.store(cfg.trials);
                return;
            }
        }
    };
    if (workers <= 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (first_error)
        std::rethrow_exception(first_error);

    // Aggregation in trial order, so the sums do not depend on scheduling.
    SweepResult result;
    for (std::size_t si = 0; si < n_snr; ++si)
        for (std::size_t ei = 0; ei < n_est; ++ei)
        {
            SweepRow row;
            row.snr_db = cfg.snr_grid_db[si];
            row.estimator = cfg.estimators[ei];
            double sum = 0.0, sup = 0.0, its = 0.0, secs = 0.0;
            for (const auto &cells : per_trial)
            {
                const Cell &c = cells[si * n_est + ei];
                secs += c.seconds;
                if (!c.ok)
                {
                    ++row.failures;
                    continue;
                }
                ++row.trials;
                sum += c.nmse;
                sup += c.support;
                its += c.iterations;
            }
            if (row.trials > 0)
            {
                const auto n = static_cast<double>(row.trials);
                row.nmse_mean = sum / n;
                double ss = 0.0;
                for (const auto &cells : per_trial)
                {
                    const Cell &c = cells[si * n_est + ei];
                    if (c.ok)
                        ss += (c.nmse - row.nmse_mean) * (c.nmse - row.nmse_mean);
                }
                row.nmse_std = row.trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
                row.nmse_stderr = row.nmse_std / std::sqrt(n);
                row.mean_support_size = sup / n;
                row.mean_iterations = its / n;
            }
            else
            {
                row.nmse_mean = row.nmse_std = row.nmse_stderr = std::numeric_limits<double>::quiet_NaN();
            }
            row.wall_time_s = secs;
            result.rows.push_back(std::move(row));
        }

    std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return a.snr_db < b.snr_db || (a.snr_db == b.snr_db && a.estimator < b.estimator);
    });
    return result;
}

} // namespace beamest

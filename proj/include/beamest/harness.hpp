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

// Monte-Carlo experiment driver.
//
// A sweep runs `trials` independent channel drops. Each drop draws its channel and its
// Bernoulli measurement matrix from streams keyed on (seed, trial); the matrix is shared
// by all SNR points of that trial (or by every trial with freeze_phi), and the noise for
// SNR point i comes from the stream (seed, i, trial). Every estimator sees the same
// (y, Phi, h_B) triple. Results depend only on the configuration, never on scheduling
// or the number of worker threads.

#include "beamest/channel.hpp"
#include "beamest/estimators.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamest
{

enum class ChannelModel
{
    clusters,    // stochastic cluster drop (sample_clusters)
    single_path, // one wholly visible path on a random grid beam
};

struct ExperimentConfig
{
    ArrayGeometry geometry{32, 32, 0.5};
    std::size_t k = 256;
    std::vector<double> snr_grid_db{-5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
    std::size_t trials = 500;
    std::vector<std::string> estimators{"oracle-ls", "bds-samp", "samp", "bomp", "asd"};
    std::uint64_t seed = 1;
    std::size_t threads = 0; // 0: one per hardware thread
    bool freeze_phi = false;  // reuse one measurement matrix for every trial

    ChannelModel channel_model = ChannelModel::clusters;
    ChannelGenParams channel; // holds rho and the carrier frequency

    // BDS-SAMP / SAMP
    double mu = 0.9;
    std::size_t initial_step = 1;
    std::size_t max_support = 0; // 0: floor(K / 2)
    NeighborRule neighbor_rule = NeighborRule::as_paper;

    // Oracle LS support: 0 selects the noise-matched size (mse_optimal_support),
    // otherwise the dominant support holding this energy fraction.
    double oracle_energy_fraction = 0.0;

    // Genie-sparsity baselines take |oracle support| as their sparsity.
    AsdConfig asd;
    BlockShape bomp_block{4, 4};

    bool operator==(const ExperimentConfig &) const = default;

    std::size_t effective_max_support() const noexcept { return max_support == 0 ? k / 2 : max_support; }
    // Throws ConfigError naming the offending key.
    void validate() const;
};

// Registered estimator names, in canonical order.
const std::vector<std::string> &estimator_names();
bool is_registered_estimator(const std::string &name);

// Flat `key = value` text; '#' starts a comment. Unknown keys, malformed values and
// duplicate keys raise ConfigError with the key and 1-based line number.
ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig parse_config(const std::filesystem::path &path);
// Canonical text form; parse_config_text(format_config(c)) == c.
std::string format_config(const ExperimentConfig &cfg);

struct SweepRow
{
    double snr_db = 0.0;
    std::string estimator;
    double nmse_mean = 0.0;
    double nmse_std = 0.0;
    double nmse_stderr = 0.0;
    std::size_t trials = 0; // successful trials
    double mean_support_size = 0.0;
    double mean_iterations = 0.0;
    double wall_time_s = 0.0; // total time spent in the estimator across trials
    std::size_t failures = 0; // trials whose estimator raised an error (not in the CSV)

    bool operator==(const SweepRow &) const = default;
};

struct SweepResult
{
    std::vector<SweepRow> rows; // sorted by (snr_db, estimator)

    // Throws InvalidParams if the pair is absent.
    const SweepRow &at(double snr_db, const std::string &estimator) const;
};

SweepResult run_sweep(const ExperimentConfig &cfg);

void write_csv(const SweepResult &result, std::ostream &out);
void emit_csv(const SweepResult &result, const std::filesystem::path &path);
SweepResult read_csv(std::istream &in);
SweepResult parse_csv(const std::filesystem::path &path);

inline constexpr const char *kCsvHeader =
    "snr_db,estimator,nmse_mean,nmse_std,nmse_stderr,trials,mean_support_size,mean_iterations,wall_time_s";

struct LeakageSample
{
    double theta = 0.0; // grid spatial frequency
    double envelope = 0.0;
};

std::vector<LeakageSample> run_leakage(std::size_t is, std::size_t ie, double theta0, std::size_t p_grid);
void write_leakage_csv(const std::vector<LeakageSample> &samples, std::ostream &out);

// Beam-domain drop of the given trial (the channel a sweep with this config would use).
ChannelRealization draw_channel(const ExperimentConfig &cfg, std::uint64_t trial);
// Header line "pv=..,ph=..,rho=..,seed=.." (the config seed), then one line per beam row
// with comma-separated entries formatted as re+imj.
void write_channel_dump(const ExperimentConfig &cfg, std::uint64_t trial, std::ostream &out);

} // namespace beamest

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


// Command-line front end.
//
//   beamest sweep   --config <path> --out <csv> [--threads n]
//   beamest channel --config <path> --seed <n> --out <path>
//   beamest leakage --is <n> --ie <n> --theta0 <x> --grid <P> --out <csv>
//
// Exit status: 0 success, 1 configuration or usage error, 2 runtime error.

#include "beamest/error.hpp"
#include "beamest/harness.hpp"
#include "beamest/kernels.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>

namespace
{

std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw beamest::IoError("cannot open " + path + " for writing");
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Beam-domain channel estimation benchmarks for spatially non-stationary massive MIMO"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::size_t threads = 0;
    auto *sweep = app.add_subcommand("sweep", "Monte-Carlo NMSE sweep over SNR, written as CSV");
    sweep->add_option("--config", config_path, "Experiment configuration file")->required();
    sweep->add_option("--out", out_path, "Output CSV")->required();
    sweep->add_option("--threads", threads, "Worker threads (overrides the config; 0 keeps it)");

    std::uint64_t seed = 1;
    auto *channel = app.add_subcommand("channel", "Dump one beam-domain channel drop");
    channel->add_option("--config", config_path, "Experiment configuration file")->required();
    channel->add_option("--seed", seed, "Drop seed")->required();
    channel->add_option("--out", out_path, "Output file")->required();

    std::size_t is = 1, ie = 1, grid = 32;
    double theta0 = 0.0;
    auto *leakage = app.add_subcommand("leakage", "Normalized leakage envelope over the beam grid");
    leakage->add_option("--is", is, "First visible element (1-based)")->required();
    leakage->add_option("--ie", ie, "Last visible element (1-based)")->required();
    leakage->add_option("--theta0", theta0, "Path spatial frequency")->required();
    leakage->add_option("--grid", grid, "Beam grid size")->required();
    leakage->add_option("--out", out_path, "Output CSV")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (*sweep)
        {
            auto cfg = beamest::parse_config(config_path);
            if (threads != 0)
                cfg.threads = threads;
            std::cerr << "beamest: kernels " << beamest::kernels::isa_name(beamest::kernels::active_isa()) << ", "
                      << cfg.trials << " trials x " << cfg.snr_grid_db.size() << " SNR points\n";
            const auto result = beamest::run_sweep(cfg);
            beamest::emit_csv(result, out_path);
            for (const auto &r : result.rows)
                if (r.failures > 0)
                    std::cerr << "beamest: " << r.estimator << " at " << r.snr_db << " dB failed on " << r.failures
                              << " trials\n";
        }
        else if (*channel)
        {
            auto cfg = beamest::parse_config(config_path);
            cfg.seed = seed;
            auto out = open_out(out_path);
            beamest::write_channel_dump(cfg, 0, out);
        }
        else if (*leakage)
        {
            auto out = open_out(out_path);
            beamest::write_leakage_csv(beamest::run_leakage(is, ie, theta0, grid), out);
        }
    }
    catch (const beamest::ConfigError &e)
    {
        std::cerr << "beamest: " << e.what() << "\n";
        return 1;
    }
    catch (const beamest::InvalidParams &e)
    {
        std::cerr << "beamest: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "beamest: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

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


// Acceptance checks. Each criterion prints exactly one line
//   criterion N: PASS|FAIL <measurements>
// and the process exits non-zero when any selected criterion fails.
//
//   beamest_acceptance --criterion 4 [--trials 500] [--threads 0]
//   beamest_acceptance --all

#include "beamest/channel.hpp"
#include "beamest/dictionary.hpp"
#include "beamest/estimators.hpp"
#include "beamest/harness.hpp"
#include "beamest/measurement.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace beamest;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Options
{
    std::size_t trials = 500;
    std::size_t threads = 0;
};

std::string fmt(const char *format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ----- 1: transform vs closed form -------------------------------------------

Outcome transform_correctness(const Options &)
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst_oracle = 0.0, worst_parseval = 0.0;
    std::size_t drops = 0;
    for (const auto &[p, n] : {std::pair<std::size_t, std::size_t>{8, 50}, {32, 10}})
    {
        const ArrayGeometry g{p, p, 0.5};
        const ChannelGenParams params;
        for (std::uint64_t s = 0; s < n; ++s, ++drops)
        {
            auto rng = make_rng(0xacce55, {1, p, s});
            const auto set = sample_clusters(g, params, rng);
            const auto real = realize(set, g);
            const double fro = frobenius_norm(real.h_beam);
            double dev = 0.0;
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j)
                    dev = std::max(dev, std::abs(beam_element_oracle(set, i, j, g) - real.h_beam(i, j)));
            worst_oracle = std::max(worst_oracle, dev / fro);
            worst_parseval = std::max(worst_parseval, std::abs(fro / frobenius_norm(real.h_array) - 1.0));
        }
    }
    const double t = seconds_since(t0);
    return {worst_oracle < 1e-9 && worst_parseval < 1e-9 && t < 30.0,
            fmt("%zu drops, max oracle deviation %.3g x ||H_B||_F, max Parseval error %.3g, %.2f s", drops,
                worst_oracle, worst_parseval, t)};
}

// ----- 2: Dirichlet kernel ---------------------------------------------------

Outcome dirichlet(const Options &)
{
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const std::size_t p : {1, 8, 32})
        ok = ok && dirichlet_kernel(1, p, 0.0) == cplx(static_cast<double>(p), 0.0);

    double worst_zero = 0.0;
    for (const auto &[is, ie] : {std::pair<std::size_t, std::size_t>{1, 8}, {8, 15}, {1, 32}, {3, 7}})
    {
        const std::size_t l = ie - is + 1;
        for (std::size_t k = 1; k < l; ++k)
        {
            const double x = static_cast<double>(k) / static_cast<double>(l);
            worst_zero = std::max({worst_zero, std::abs(dirichlet_kernel(is, ie, x)),
                                   std::abs(dirichlet_kernel(is, ie, -x))});
        }
    }

    // Reference case: VR columns 8..15 on a 32-wide array, theta0 = 0.
    const double peak = std::abs(dirichlet_kernel(8, 15, 0.0));
    const auto env = leakage_envelope(8, 15, 0.0, 32);
    std::vector<double> nulls;
    for (std::size_t j = 0; j < env.size(); ++j)
        if (env[j] < 1e-10)
            nulls.push_back(grid_frequency(j, 32));
    // Consecutive nulls are 1/8 apart; the gap around the peak at 0 is the 2/8 main lobe.
    double spacing_err = nulls.size() < 2 ? INFINITY : 0.0;
    for (std::size_t i = 1; i < nulls.size(); ++i)
    {
        const double expected = nulls[i - 1] < 0.0 && nulls[i] > 0.0 ? 0.25 : 0.125;
        spacing_err = std::max(spacing_err, std::abs(nulls[i] - nulls[i - 1] - expected));
    }
    // The main lobe spans the two nulls adjacent to the peak at theta = 0.
    const bool lobe = std::abs(env[15] - 1.0) < 1e-12 && env[11] < 1e-10 && env[19] < 1e-10 && env[12] > 1e-3 &&
                      env[18] > 1e-3;

    const double t = seconds_since(t0);
    ok = ok && worst_zero < 1e-10 && std::abs(peak - 8.0) < 1e-12 && spacing_err < 1e-12 && lobe && t < 1.0;
    return {ok, fmt("f_{1,P}(0) = P for P in {1,8,32}, max |f| at nulls %.3g, VR 8..15 peak %.15g, %zu grid nulls "
                    "with spacing error %.3g, %.4f s",
                    worst_zero, peak, nulls.size(), spacing_err, t)};
}

// ----- 3: exact-sparse recovery vs exhaustive search ------------------------

Outcome exact_sparse(const Options &)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t k = 32, p = 64, s = 3, n = 200;
    const ArrayGeometry g{8, 8, 0.5};
    BdsSampConfig cfg;
    cfg.snr_db = std::numeric_limits<double>::infinity();

    std::size_t matched[3] = {0, 0, 0}, exact_on_match[3] = {0, 0, 0};
    for (std::uint64_t t = 0; t < n; ++t)
    {
        auto rng = make_rng(0xacce55, {3, t});
        const auto phi = bernoulli_matrix(k, p, rng);
        std::vector<std::size_t> idx(p);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        ComplexVector h(p);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t i = 0; i < s; ++i)
            h[idx[i]] = {gauss(rng), gauss(rng)};
        const auto y = multiply(phi, h);

        Dictionary dict(phi);
        SubsetSolver solver(dict, y);
        double best = INFINITY;
        SupportSet best_set;
        std::vector<std::size_t> trial(3);
        for (trial[0] = 0; trial[0] < p; ++trial[0])
            for (trial[1] = trial[0] + 1; trial[1] < p; ++trial[1])
                for (trial[2] = trial[1] + 1; trial[2] < p; ++trial[2])
                {
                    const double e = solver.solve(trial).residual_energy;
                    if (e < best)
                    {
                        best = e;
                        best_set = trial;
                    }
                }

        const EstimateReport reps[3] = {bds_samp(y, dict, g, cfg), samp(y, dict, cfg), omp(y, dict, s)};
        for (std::size_t e = 0; e < 3; ++e)
            if (reps[e].support == best_set)
            {
                ++matched[e];
                exact_on_match[e] += nmse(h, reps[e].h_hat) < 1e-16 ? 1u : 0u;
            }
    }
    const double t = seconds_since(t0);
    bool ok = t < 600.0;
    for (std::size_t e = 0; e < 3; ++e)
        ok = ok && matched[e] * 100 >= 95 * n && exact_on_match[e] == matched[e];
    return {ok, fmt("support matches (exact NMSE on match) over %zu instances: bds-samp %zu (%zu), samp %zu (%zu), "
                    "omp %zu (%zu), %.1f s",
                    n, matched[0], exact_on_match[0], matched[1], exact_on_match[1], matched[2], exact_on_match[2], t)};
}

// ----- 4-7: Monte-Carlo sweeps -----------------------------------------------

ExperimentConfig benchmark_config(const Options &opt)
{
    ExperimentConfig cfg; // 32x32, K = 256, rho = 0.45, mu = 0.9
    cfg.trials = opt.trials;
    cfg.threads = opt.threads;
    return cfg;
}

Outcome headline(const Options &opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = benchmark_config(opt);
    cfg.snr_grid_db = {20.0};
    cfg.estimators = {"bds-samp", "bds-samp-inv", "samp"};
    const auto r = run_sweep(cfg);
    const double bds = r.at(20.0, "bds-samp").nmse_mean;
    const double inv = r.at(20.0, "bds-samp-inv").nmse_mean;
    const double samp_nmse = r.at(20.0, "samp").nmse_mean;
    const double ratio = bds / samp_nmse, ratio_inv = inv / samp_nmse;
    const double t = seconds_since(t0);
    return {ratio <= 0.9 && opt.trials >= 500 && t < 1200.0,
            fmt("neighbor rule as-paper, %zu trials: bds-samp %.4f / samp %.4f = ratio %.3f (bar 0.9, target 0.8 %s); "
                "inverted rule ratio %.3f; %.0f s",
                cfg.trials, bds, samp_nmse, ratio, ratio <= 0.8 ? "met" : "not met", ratio_inv, t)};
}

double two_se(const SweepRow &a, const SweepRow &b)
{
    return 2.0 * std::sqrt(a.nmse_stderr * a.nmse_stderr + b.nmse_stderr * b.nmse_stderr);
}

Outcome ordering(const Options &opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checks = 0;
    std::vector<std::string> violations;
    for (const double rho : {0.45, 0.0})
    {
        auto cfg = benchmark_config(opt);
        cfg.channel.rho = rho;
        const auto r = run_sweep(cfg);
        for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si)
        {
            const double snr = cfg.snr_grid_db[si];
            const auto &oracle = r.at(snr, "oracle-ls");
            for (const auto &name : cfg.estimators)
            {
                const auto &row = r.at(snr, name);
                if (row.failures != 0)
                    violations.push_back(fmt("rho %.2f snr %g %s: %zu failed trials", rho, snr, name.c_str(),
                                             row.failures));
                if (name != "oracle-ls")
                {
                    ++checks;
                    if (oracle.nmse_mean > row.nmse_mean + two_se(oracle, row))
                        violations.push_back(fmt("rho %.2f snr %g: oracle %.4f above %s %.4f", rho, snr,
                                                 oracle.nmse_mean, name.c_str(), row.nmse_mean));
                }
                if (si > 0)
                {
                    ++checks;
                    const auto &prev = r.at(cfg.snr_grid_db[si - 1], name);
                    if (row.nmse_mean > prev.nmse_mean + two_se(prev, row))
                        violations.push_back(fmt("rho %.2f %s rises from %.4f to %.4f at %g dB", rho, name.c_str(),
                                                 prev.nmse_mean, row.nmse_mean, snr));
                }
            }
        }
    }
    const double t = seconds_since(t0);
    std::string detail = fmt("%zu comparisons at %zu trials, %zu violations, %.0f s", checks, opt.trials,
                             violations.size(), t);
    for (const auto &v : violations)
        detail += "; " + v;
    return {violations.empty() && opt.trials >= 500 && t < 2700.0, detail};
}

Outcome low_snr(const Options &opt)
{
    auto cfg = benchmark_config(opt);
    cfg.channel.rho = 0.0;
    cfg.snr_grid_db = {-5.0};
    cfg.estimators = {"bds-samp", "asd"};
    const auto r = run_sweep(cfg);
    const auto &a = r.at(-5.0, "asd"), &b = r.at(-5.0, "bds-samp");
    return {a.nmse_mean <= b.nmse_mean + 2.0 * b.nmse_stderr,
            fmt("rho 0, -5 dB, %zu trials: asd %.4f, bds-samp %.4f +- %.4f (stderr)", cfg.trials, a.nmse_mean,
                b.nmse_mean, b.nmse_stderr)};
}

Outcome array_size(const Options &opt)
{
    double nmse_at[2] = {0.0, 0.0}, se_at[2] = {0.0, 0.0};
    const std::size_t sizes[2] = {16, 32};
    for (std::size_t i = 0; i < 2; ++i)
    {
        auto cfg = benchmark_config(opt);
        cfg.geometry = {sizes[i], sizes[i], 0.5};
        cfg.k = cfg.geometry.total() / 4;
        cfg.snr_grid_db = {10.0};
        cfg.estimators = {"bds-samp"};
        const auto &row = run_sweep(cfg).at(10.0, "bds-samp");
        nmse_at[i] = row.nmse_mean;
        se_at[i] = row.nmse_stderr;
    }
    return {nmse_at[1] < nmse_at[0],
            fmt("bds-samp at 10 dB, K = P/4, %zu trials: 16x16 %.4f +- %.4f, 32x32 %.4f +- %.4f", opt.trials,
                nmse_at[0], se_at[0], nmse_at[1], se_at[1])};
}

// ----- 8: reproducibility -----------------------------------------------------

std::string csv_without_timing(const SweepResult &r)
{
    std::ostringstream full;
    write_csv(r, full);
    std::istringstream in(full.str());
    std::string line, out;
    while (std::getline(in, line))
        out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

Outcome reproducibility(const Options &)
{
    ExperimentConfig cfg;
    cfg.geometry = {16, 16, 0.5};
    cfg.k = 64;
    cfg.snr_grid_db = {-5.0, 5.0, 20.0};
    cfg.trials = 24;
    cfg.estimators = estimator_names();

    std::vector<std::string> runs;
    for (const std::size_t threads : {1, 4, 4, 2})
    {
        cfg.threads = threads;
        runs.push_back(csv_without_timing(run_sweep(cfg)));
    }
    const bool same = std::all_of(runs.begin(), runs.end(), [&](const std::string &s) { return s == runs.front(); });
    cfg.seed += 1;
    const bool seed_matters = csv_without_timing(run_sweep(cfg)) != runs.front();
    return {same && seed_matters,
            fmt("4 runs with 1/4/4/2 threads %s (%zu bytes without timing); different seed %s", same ? "identical" : "DIFFER",
                runs.front().size(), seed_matters ? "differs" : "IDENTICAL")};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"beamest acceptance checks"};
    std::vector<int> selected;
    bool all = false;
    Options opt;
    app.add_option("--criterion", selected, "Criterion number (1-8), repeatable")->check(CLI::Range(1, 8));
    app.add_flag("--all", all, "Run every criterion");
    app.add_option("--trials", opt.trials, "Monte-Carlo trials for criteria 4-7")->check(CLI::PositiveNumber);
    app.add_option("--threads", opt.threads, "Worker threads for sweeps (0: hardware)");
    CLI11_PARSE(app, argc, argv);

    const std::function<Outcome(const Options &)> criteria[] = {transform_correctness, dirichlet, exact_sparse,
                                                                headline,              ordering,  low_snr,
                                                                array_size,            reproducibility};
    if (all || selected.empty())
    {
        selected.resize(8);
        std::iota(selected.begin(), selected.end(), 1);
    }

    int failed = 0;
    for (const int c : selected)
    {
        Outcome o;
        try
        {
            o = criteria[c - 1](opt);
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %d: %s %s\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}

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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace beamest
{
namespace
{

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double real_field(const std::string &s, int line)
{
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw IoError("CSV line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

} // namespace

void write_csv(const SweepResult &result, std::ostream &out)
{
    out << kCsvHeader << "\n";
    for (const auto &r : result.rows)
        out << num(r.snr_db) << ',' << r.estimator << ',' << num(r.nmse_mean) << ',' << num(r.nmse_std) << ','
            << num(r.nmse_stderr) << ',' << r.trials << ',' << num(r.mean_support_size) << ','
            << num(r.mean_iterations) << ',' << num(r.wall_time_s) << "\n";
}

void emit_csv(const SweepResult &result, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    write_csv(result, out);
    out.flush();
    if (!out)
        throw IoError("write to " + path.string() + " failed");
}

SweepResult read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw IoError("CSV header mismatch");
    SweepResult result;
    int n = 1;
    while (std::getline(in, line))
    {
        ++n;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ','))
            f.push_back(item);
        if (f.size() != 9)
            throw IoError("CSV line " + std::to_string(n) + ": expected 9 fields, got " + std::to_string(f.size()));
        SweepRow r;
        r.snr_db = real_field(f[0], n);
        r.estimator = f[1];
        r.nmse_mean = real_field(f[2], n);
        r.nmse_std = real_field(f[3], n);
        r.nmse_stderr = real_field(f[4], n);
        r.trials = static_cast<std::size_t>(real_field(f[5], n));
        r.mean_support_size = real_field(f[6], n);
        r.mean_iterations = real_field(f[7], n);
        r.wall_time_s = real_field(f[8], n);
        result.rows.push_back(std::move(r));
    }
    return result;
}

SweepResult parse_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return read_csv(in);
}

} // namespace beamest

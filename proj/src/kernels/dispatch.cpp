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

#include "beamest/kernels.hpp"

#include "beamest/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace beamest::kernels
{
namespace
{

bool probe_avx2()
{
#if defined(BEAMEST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool cpu_has_avx2()
{
    static const bool has = probe_avx2();
    return has;
}

Isa detect()
{
    if (const char *env = std::getenv("BEAMEST_ISA"))
    {
        if (std::string(env) == "scalar")
            return Isa::scalar;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

const KernelTable &table_for(Isa isa)
{
#if defined(BEAMEST_HAVE_AVX2)
    if (isa == Isa::avx2)
        return detail::avx2_table();
#endif
    (void)isa;
    return detail::scalar_table();
}

struct Selection
{
    std::atomic<Isa> isa;
    std::atomic<const KernelTable *> table;
};

Selection &current()
{
    static Selection sel{detect(), nullptr};
    static const bool init = [] {
        sel.table.store(&table_for(sel.isa.load()));
        return true;
    }();
    (void)init;
    return sel;
}

} // namespace

bool isa_supported(Isa isa)
{
    switch (isa)
    {
    case Isa::scalar:
        return true;
    case Isa::avx2:
        return cpu_has_avx2();
    }
    return false;
}

const KernelTable &table(Isa isa)
{
    if (!isa_supported(isa))
        throw InvalidParams("kernel ISA '" + std::string(isa_name(isa)) + "' not supported on this CPU/build");
    return table_for(isa);
}

const KernelTable &active() { return *current().table.load(std::memory_order_acquire); }

Isa active_isa() { return current().isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa)
{
    if (!isa_supported(isa))
        throw InvalidParams("kernel ISA '" + std::string(isa_name(isa)) + "' not supported on this CPU/build");
    current().isa.store(isa, std::memory_order_relaxed);
    current().table.store(&table_for(isa), std::memory_order_release);
}

std::string_view isa_name(Isa isa)
{
    switch (isa)
    {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

} // namespace beamest::kernels

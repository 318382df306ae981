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

// Helpers shared by the estimator translation units.

#include "beamest/estimators.hpp"

#include <span>
#include <vector>

namespace beamest::detail
{

void require_observation(std::span<const cplx> y, const Dictionary &dict, const char *who);

// Builds the report for a final least-squares fit on `support` (any order);
// the stored support is sorted ascending with coefficients permuted to match.
EstimateReport make_report(std::size_t p, std::span<const std::size_t> support, const SubsetFit &fit);

// Report for y = 0: empty support, zero estimate.
EstimateReport zero_report(std::size_t p);

} // namespace beamest::detail

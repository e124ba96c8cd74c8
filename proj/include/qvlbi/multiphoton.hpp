// Copyright 2026 The qvlbi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace qvlbi::protocols {

/// Post-selected single-photon weight c = M eps / [((1 + eps)^M - 1)(1 + eps)]
/// for a block of M bins.
double multiphoton_fidelity(std::size_t bins, double epsilon);

struct Trinomial {
    double p_vac;
    double p_single;
    double p_multi;
};

/// Block-level vacuum / single / multiphoton probabilities over M thermal bins.
Trinomial trinomial_decode(std::size_t bins, double epsilon);

/// Multiplier applied to the consumption rate to mitigate multiphoton events
/// by running smaller blocks.
inline constexpr double kMultiphotonOverhead = 10.0;

/// Bell pairs per second, delta_nu * eps * log2(1 / eps), times `overhead`.
double consumption_rate(double delta_nu, double epsilon, double overhead = 1.0);

enum class MemoryScheme { Unary, Binary, BroadbandBinary };

MemoryScheme parse_memory_scheme(std::string_view s);

/// Memory qubits per station for M bins and R frequency bands.
std::size_t memory_requirements(std::size_t bins, std::size_t bands, MemoryScheme scheme);

struct ConsumptionRow {
    double wavelength;  // m
    double delta_nu;    // Hz, as tabulated
    double delta_lambda;  // m
    double epsilon;
    double published_value;  // pairs / s
};

/// Published consumption-rate rows.
std::vector<ConsumptionRow> consumption_rows();

/// Relative disagreement |published - formula| / formula above which a row is
/// flagged as inconsistent with the formula.
inline constexpr double kConsumptionTolerance = 0.15;

struct ConsumptionCheck {
    ConsumptionRow row;
    double computed;
    double relative_discrepancy;
    bool discrepant;
};

ConsumptionCheck check_consumption(const ConsumptionRow& row);

struct CFactorPoint {
    double epsilon;
    std::size_t bins;
    double c;
};

/// c along a log-spaced epsilon grid with the block mean fixed to
/// M eps = `block_mean` (M rounded to the nearest integer, at least 1).
std::vector<CFactorPoint> c_factor_curve(double block_mean, double eps_min, double eps_max, std::size_t points);

}  // namespace qvlbi::protocols

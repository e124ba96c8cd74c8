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

#include "qvlbi/multiphoton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qvlbi/protocols.hpp"

namespace qvlbi::protocols {

namespace {

void require_bins(std::size_t bins) {
    if (bins == 0) {
        throw std::invalid_argument("need at least one bin");
    }
}

void require_epsilon(double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and non-negative");
    }
}

}  // namespace

double multiphoton_fidelity(std::size_t bins, double epsilon) {
    require_bins(bins);
    require_epsilon(epsilon);
    if (epsilon == 0.0) {
        throw std::invalid_argument("c factor undefined at epsilon = 0");
    }
    const double m = static_cast<double>(bins);
    // (1 + eps)^M - 1 without cancellation for small eps.
    const double growth = std::expm1(m * std::log1p(epsilon));
    return m * epsilon / (growth * (1.0 + epsilon));
}

Trinomial trinomial_decode(std::size_t bins, double epsilon) {
    require_bins(bins);
    require_epsilon(epsilon);
    const double m = static_cast<double>(bins);
    const double log_p0 = -std::log1p(epsilon);
    const double p_vac = std::exp(m * log_p0);
    const double p_single = m * epsilon * std::exp((m + 1.0) * log_p0);
    // Assign the remainder so the three sum to one in floating point.
    const double p_multi = std::max(0.0, 1.0 - p_vac - p_single);
    return {p_vac, p_single, p_multi};
}

double consumption_rate(double delta_nu, double epsilon, double overhead) {
    if (!(delta_nu > 0.0)) {
        throw std::invalid_argument("bandwidth must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("consumption rate needs 0 < epsilon < 1");
    }
    if (!(overhead >= 1.0)) {
        throw std::invalid_argument("overhead multiplier must be >= 1");
    }
    return overhead * delta_nu * epsilon * std::log2(1.0 / epsilon);
}

MemoryScheme parse_memory_scheme(std::string_view s) {
    if (s == "unary") {
        return MemoryScheme::Unary;
    }
    if (s == "binary") {
        return MemoryScheme::Binary;
    }
    if (s == "broadband" || s == "broadband-binary") {
        return MemoryScheme::BroadbandBinary;
    }
    throw std::invalid_argument("unknown memory scheme '" + std::string(s) + "'");
}

std::size_t memory_requirements(std::size_t bins, std::size_t bands, MemoryScheme scheme) {
    require_bins(bins);
    if (bands == 0) {
        throw std::invalid_argument("need at least one frequency band");
    }
    switch (scheme) {
        case MemoryScheme::Unary:
            return bins;
        case MemoryScheme::Binary:
            return register_width(bins);
        case MemoryScheme::BroadbandBinary:
            return bands * register_width(bins);
    }
    return 0;
}

std::vector<ConsumptionRow> consumption_rows() {
    constexpr double nm = 1e-9;
    return {
        {555 * nm, 1e12, 1 * nm, 1e-7, 2e6},
        {555 * nm, 1e12, 1 * nm, 1e-10, 3e3},
        {555 * nm, 1e12, 1 * nm, 1e-11, 40.0},
        {760 * nm, 500e9, 1 * nm, 1e-7, 1.2e6},
        {760 * nm, 500e9, 1 * nm, 1e-10, 1.2e3},
        {760 * nm, 500e9, 1 * nm, 1e-12, 20.0},
        {1650 * nm, 110e9, 1 * nm, 1e-7, 2.5e5},
        {1650 * nm, 110e9, 1 * nm, 1e-10, 3.6e2},
        {1650 * nm, 110e9, 1 * nm, 1e-12, 4.4},
    };
}

ConsumptionCheck check_consumption(const ConsumptionRow& row) {
    const double computed = consumption_rate(row.delta_nu, row.epsilon);
    const double rel = std::abs(row.published_value - computed) / computed;
    return {row, computed, rel, rel > kConsumptionTolerance};
}

std::vector<CFactorPoint> c_factor_curve(double block_mean, double eps_min, double eps_max, std::size_t points) {
    if (!(block_mean > 0.0) || !(eps_min > 0.0) || !(eps_max > eps_min) || points < 2) {
        throw std::invalid_argument("invalid c-factor grid");
    }
    std::vector<CFactorPoint> out;
    out.reserve(points);
    const double lo = std::log10(eps_min);
    const double hi = std::log10(eps_max);
    for (std::size_t i = 0; i < points; ++i) {
        const double eps = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
        const auto bins = static_cast<std::size_t>(std::max(1.0, std::round(block_mean / eps)));
        out.push_back({eps, bins, multiphoton_fidelity(bins, eps)});
    }
    return out;
}

}  // namespace qvlbi::protocols

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
#include <cstdint>
#include <vector>

#include "qvlbi/estimation.hpp"
#include "qvlbi/geodesy.hpp"

// Monte Carlo and sweep kernels. Work is cut into fixed-size batches and
// batch b draws from lane_seed(seed, b), so the OpenMP versions below and the
// serial versions in `reference` return identical results for any thread
// count.
namespace qvlbi::kernels {

inline constexpr std::size_t kTrialsPerBatch = 1u << 14;
inline constexpr std::size_t kBinsPerBatch = 1u << 16;

struct ClassCounts {
    std::uint64_t vacuum = 0;
    std::uint64_t single = 0;
    std::uint64_t multi = 0;

    std::uint64_t total() const { return vacuum + single + multi; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Blocks of `bins` thermal bins classified by total photon number
/// (0, 1, or more), over `trials` independent blocks.
ClassCounts trinomial_counts(std::size_t bins, double epsilon, std::size_t trials, std::uint64_t seed);

/// Per-bin photon-number classes over `bins` independent thermal bins.
ClassCounts bin_counts(double epsilon, std::size_t bins, std::uint64_t seed);

/// One MLE phase estimate per shot; shot s draws from lane s.
std::vector<double> phase_estimates(const geodesy::PhaseMcConfig& config);

struct QfiGridPoint {
    double epsilon;
    double gamma;
    double phi;
    estimation::Parameter parameter;
    double analytic;
    double numerical;
    /// Relative disagreement, or the absolute one where `analytic` is zero.
    double relative_error;

    friend bool operator==(const QfiGridPoint&, const QfiGridPoint&) = default;
};

struct QfiGridAxes {
    std::vector<double> epsilons;
    std::vector<double> gammas;
    std::vector<double> phis;
};

/// 3 x 4 x 3 parameter tuples spanning the weak-source regime. The 12
/// phase entries at gamma = 0 are exact zeros; the other 60 comparisons are
/// relative.
QfiGridAxes default_qfi_grid();

/// Accepted relative disagreement between the closed form and the oracle.
inline double qfi_tolerance(double epsilon) { return 5.0 * epsilon + 1e-6; }

/// Closed-form versus SLD QFI over the Cartesian product of the grids, for
/// both parameters.
std::vector<QfiGridPoint> qfi_sweep(const std::vector<double>& epsilons, const std::vector<double>& gammas,
                                    const std::vector<double>& phis);

struct LedgerFuzzReport {
    std::uint64_t runs = 0;
    std::uint64_t ledger_violations = 0;
    std::uint64_t location_errors = 0;
    std::size_t max_bins = 0;

    friend bool operator==(const LedgerFuzzReport&, const LedgerFuzzReport&) = default;
};

/// For every M in [1, max_bins]: `positions` binary-search runs with a
/// uniformly placed photon, and one unary run on a trace with up to eight
/// random photons. Each run's pair count is compared with M (unary) or
/// ceil(log2 M) (binary search) and every located index with the truth.
LedgerFuzzReport ledger_fuzz(std::size_t max_bins, std::size_t positions, std::uint64_t seed);

namespace reference {

ClassCounts trinomial_counts(std::size_t bins, double epsilon, std::size_t trials, std::uint64_t seed);
ClassCounts bin_counts(double epsilon, std::size_t bins, std::uint64_t seed);
std::vector<double> phase_estimates(const geodesy::PhaseMcConfig& config);
std::vector<QfiGridPoint> qfi_sweep(const std::vector<double>& epsilons, const std::vector<double>& gammas,
                                    const std::vector<double>& phis);
LedgerFuzzReport ledger_fuzz(std::size_t max_bins, std::size_t positions, std::uint64_t seed);

}  // namespace reference

}  // namespace qvlbi::kernels

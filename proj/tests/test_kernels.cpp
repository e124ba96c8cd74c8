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

#include "qvlbi/kernels.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qvlbi/multiphoton.hpp"

using namespace qvlbi;
using namespace qvlbi::kernels;

TEST(kernels, trinomial_parallel_matches_reference) {
    for (std::size_t trials : {std::size_t{1}, kTrialsPerBatch - 1, kTrialsPerBatch * 3 + 17}) {
        const auto p = trinomial_counts(500, 2e-3, trials, 99);
        const auto s = reference::trinomial_counts(500, 2e-3, trials, 99);
        EXPECT_EQ(p, s);
        EXPECT_EQ(p.total(), trials);
    }
}

TEST(kernels, trinomial_counts_within_three_sigma) {
    const std::size_t m = 10000;
    const double eps = 1e-4;
    const std::size_t trials = 200000;
    const auto counts = trinomial_counts(m, eps, trials, kDefaultSeed);
    const auto t = protocols::trinomial_decode(m, eps);
    const double n = static_cast<double>(trials);
    auto check = [n](std::uint64_t k, double p) {
        EXPECT_NEAR(static_cast<double>(k) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
    };
    check(counts.vacuum, t.p_vac);
    check(counts.single, t.p_single);
    check(counts.multi, t.p_multi);
}

TEST(kernels, bin_counts_parallel_matches_reference) {
    const std::size_t bins = kBinsPerBatch * 2 + 5;
    EXPECT_EQ(bin_counts(0.3, bins, 5), reference::bin_counts(0.3, bins, 5));
    EXPECT_EQ(bin_counts(0.3, bins, 5).total(), bins);
    EXPECT_FALSE(bin_counts(0.3, bins, 5) == bin_counts(0.3, bins, 6));
}

TEST(kernels, bin_counts_follow_thermal_statistics) {
    const double eps = 0.5;
    const std::size_t bins = 1000000;
    const auto c = bin_counts(eps, bins, 1);
    const double p0 = 1 / (1 + eps);
    const double p1 = eps / ((1 + eps) * (1 + eps));
    const double n = static_cast<double>(bins);
    EXPECT_NEAR(c.vacuum / n, p0, 3 * std::sqrt(p0 * (1 - p0) / n));
    EXPECT_NEAR(c.single / n, p1, 3 * std::sqrt(p1 * (1 - p1) / n));
}

TEST(kernels, phase_estimates_parallel_matches_reference) {
    geodesy::PhaseMcConfig cfg;
    cfg.phi_true = 0.7;
    cfg.n_photons = 2000;
    cfg.shots = 40;
    cfg.seed = 8;
    const auto p = phase_estimates(cfg);
    const auto s = reference::phase_estimates(cfg);
    ASSERT_EQ(p.size(), 40u);
    EXPECT_EQ(p, s);
}

TEST(kernels, qfi_sweep_parallel_matches_reference) {
    const auto g = default_qfi_grid();
    const auto p = qfi_sweep(g.epsilons, g.gammas, g.phis);
    const auto s = reference::qfi_sweep(g.epsilons, g.gammas, g.phis);
    EXPECT_EQ(p, s);
    EXPECT_EQ(p.size(), 72u);
}

TEST(kernels, qfi_sweep_agrees_with_weak_limit_formula) {
    const auto g = default_qfi_grid();
    std::size_t relative = 0;
    for (const auto& pt : qfi_sweep(g.epsilons, g.gammas, g.phis)) {
        if (pt.analytic != 0.0) {
            ++relative;
        }
        EXPECT_LE(pt.relative_error, qfi_tolerance(pt.epsilon))
            << pt.epsilon << " " << pt.gamma << " " << pt.phi;
    }
    EXPECT_EQ(relative, 63u);
}

TEST(kernels, ledger_fuzz_parallel_matches_reference) {
    const auto p = ledger_fuzz(300, 20, 4);
    const auto s = reference::ledger_fuzz(300, 20, 4);
    EXPECT_EQ(p, s);
    EXPECT_EQ(p.max_bins, 300u);
    EXPECT_EQ(p.runs, 300u * 21u);
    EXPECT_EQ(p.ledger_violations, 0u);
    EXPECT_EQ(p.location_errors, 0u);
}

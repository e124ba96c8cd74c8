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

#include "qvlbi/source_model.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace qvlbi::source;

TEST(source_model, params_wrap_phase_and_validate) {
    const auto p = SourceParams::make(0.1, 0.5, -0.5);
    EXPECT_NEAR(p.phi, 2.0 * M_PI - 0.5, 1e-15);
    EXPECT_NEAR(SourceParams::make(0.1, 0.5, 7.0).phi, 7.0 - 2.0 * M_PI, 1e-15);
    EXPECT_THROW(SourceParams::make(-1e-3, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(SourceParams::make(1e-3, 1.1, 0.0), std::invalid_argument);
    EXPECT_THROW(SourceParams::make(1e-3, -0.1, 0.0), std::invalid_argument);
}

TEST(source_model, vacuum_covariance_is_identity) {
    const auto c = covariance(SourceParams::make(0.0, 0.7, 1.0));
    EXPECT_TRUE(c.sigma.isApprox(Eigen::Matrix4d::Identity()));
    EXPECT_TRUE(c.mean.isZero());
}

TEST(source_model, covariance_blocks) {
    const auto c = covariance(SourceParams::make(0.2, 1.0, 0.0));
    for (int i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(c.sigma(i, i), 1.2);
    }
    EXPECT_DOUBLE_EQ(c.sigma(0, 2), 0.2);
    EXPECT_DOUBLE_EQ(c.sigma(1, 3), 0.2);
    EXPECT_DOUBLE_EQ(c.sigma(0, 3), 0.0);

    const double phi = 0.9;
    const auto r = covariance(SourceParams::make(0.3, 0.6, phi));
    const double k = 0.3 * 0.6;
    EXPECT_NEAR(r.sigma(0, 2), k * std::cos(phi), 1e-15);
    EXPECT_NEAR(r.sigma(0, 3), -k * std::sin(phi), 1e-15);
    EXPECT_NEAR(r.sigma(1, 2), k * std::sin(phi), 1e-15);
    EXPECT_NEAR(r.sigma(1, 3), k * std::cos(phi), 1e-15);
}

TEST(source_model, covariance_is_physical_on_a_grid) {
    for (double e : {0.0, 1e-7, 1e-2, 0.5, 3.0}) {
        for (double g : {0.0, 0.3, 0.99, 1.0}) {
            for (double phi : {0.0, 1.0, 4.0}) {
                const auto c = covariance(SourceParams::make(e, g, phi));
                EXPECT_TRUE(c.sigma.isApprox(c.sigma.transpose(), 0.0));
                const auto nu = symplectic_eigenvalues(c.sigma);
                EXPECT_GE(nu[0], 1.0 - 1e-12);
                EXPECT_LE(nu[0], nu[1]);
                EXPECT_GE(uncertainty_margin(c.sigma), -1e-12);
                // Single-mode variance eps + 1.
                EXPECT_DOUBLE_EQ(c.sigma(0, 0), e + 1.0);
            }
        }
    }
}

TEST(source_model, non_physical_matrix_fails_uncertainty_check) {
    Eigen::Matrix4d squeezed = Eigen::Matrix4d::Identity() * 0.5;
    EXPECT_LT(uncertainty_margin(squeezed), 0.0);
    EXPECT_LT(symplectic_eigenvalues(squeezed)[0], 1.0);
    EXPECT_TRUE((symplectic_form() * symplectic_form()).isApprox(-Eigen::Matrix4d::Identity()));
}

TEST(source_model, weak_state_probabilities) {
    const auto a = weak_state(SourceParams::make(1e-7, 1.0, 0.0));
    EXPECT_DOUBLE_EQ(a.p_minus, 0.0);
    EXPECT_DOUBLE_EQ(a.p_plus, 1e-7);

    const auto b = weak_state(SourceParams::make(1e-2, 0.5, 0.0));
    EXPECT_NEAR(b.p_vac, 0.99, 1e-15);
    EXPECT_NEAR(b.p_plus, 0.0075, 1e-15);
    EXPECT_NEAR(b.p_minus, 0.0025, 1e-15);

    const auto c = weak_state(SourceParams::make(0.0, 0.3, 0.0));
    EXPECT_EQ(c.p_vac, 1.0);
    EXPECT_EQ(c.p_plus + c.p_minus, 0.0);
}

TEST(source_model, weak_state_invariants) {
    for (double e : {1e-9, 1e-4, 0.05, 0.1}) {
        for (double g : {0.0, 0.25, 0.8, 1.0}) {
            const auto s = weak_state(SourceParams::make(e, g, 2.0));
            EXPECT_NEAR(s.p_vac + s.p_plus + s.p_minus, 1.0, 1e-15);
            EXPECT_NEAR(s.p_plus - s.p_minus, e * g, 1e-17);
            EXPECT_NEAR(s.epsilon(), e, 1e-17);
            EXPECT_NEAR(s.gamma(), g, 1e-9);
            EXPECT_FALSE(s.beyond_weak_limit);
            // Mean photon number agrees with the Gaussian description: two
            // modes, eps / 2 each.
            const auto c = covariance(SourceParams::make(e, g, 2.0));
            const double gaussian_mean = (c.sigma(0, 0) - 1.0) / 2.0 + (c.sigma(2, 2) - 1.0) / 2.0;
            EXPECT_NEAR(s.epsilon(), gaussian_mean, 1e-15);
        }
    }
}

TEST(source_model, weak_limit_needs_override) {
    const auto strong = SourceParams::make(0.5, 0.5, 0.0);
    EXPECT_THROW(weak_state(strong), std::invalid_argument);
    const auto s = weak_state(strong, true);
    EXPECT_TRUE(s.beyond_weak_limit);
    EXPECT_THROW(weak_state(SourceParams::make(1.5, 0.5, 0.0), true), std::invalid_argument);
}

TEST(source_model, thermal_pmf) {
    for (double e : {1e-7, 0.3, 1.0, 4.0}) {
        EXPECT_DOUBLE_EQ(thermal_pmf(e, 0), 1.0 / (1.0 + e));
        EXPECT_NEAR(thermal_pmf(e, 1), e / ((1.0 + e) * (1.0 + e)), 1e-16);
        const long n_max = static_cast<long>(std::ceil(40.0 * std::max(e, 1.0)));
        double total = 0.0;
        for (long n = 0; n <= n_max; ++n) {
            total += thermal_pmf(e, n);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
    EXPECT_DOUBLE_EQ(thermal_pmf(1.0, 2), 0.125);
    EXPECT_THROW(thermal_pmf(0.5, -1), std::invalid_argument);
}

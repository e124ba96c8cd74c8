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

#include <array>

#include <Eigen/Dense>

namespace qvlbi::source {

/// Two-site stellar state: mean photon number per bin, visibility modulus
/// and visibility phase.
struct SourceParams {
    double epsilon = 0.0;
    double gamma = 0.0;
    double phi = 0.0;

    /// Checks epsilon >= 0 and gamma in [0, 1] and wraps phi into [0, 2 pi).
    static SourceParams make(double epsilon, double gamma, double phi);
    void validate() const;
};

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double phi);

/// Gaussian description in quadrature order (q_A, p_A, q_B, p_B), with
/// vacuum variance 1.
struct TwoModeCovariance {
    Eigen::Matrix4d sigma;
    Eigen::Vector4d mean;
};

TwoModeCovariance covariance(const SourceParams& params);

/// Block-antisymmetric symplectic form in the same quadrature order.
Eigen::Matrix4d symplectic_form();

/// Symplectic eigenvalues (each listed once, ascending).
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& sigma);

/// Smallest eigenvalue of the Hermitian matrix sigma + i Omega; non-negative
/// for every physical state.
double uncertainty_margin(const Eigen::Matrix4d& sigma);

/// Weak-source truncation: vacuum plus the two single-photon states
/// (|1,vac> +- e^{i phi}|vac,1>)/sqrt(2).
struct WeakSourceState {
    double p_vac;
    double p_plus;
    double p_minus;
    double phi;
    /// Set when epsilon exceeds kWeakLimit (allowed only with an override).
    bool beyond_weak_limit = false;

    double epsilon() const { return p_plus + p_minus; }
    double gamma() const;
};

inline constexpr double kWeakLimit = 0.1;

/// Throws for epsilon > 1, and for epsilon > kWeakLimit unless
/// `allow_beyond_limit` is set.
WeakSourceState weak_state(const SourceParams& params, bool allow_beyond_limit = false);

/// Bose-Einstein occupation probability eps^n / (1 + eps)^(n + 1).
double thermal_pmf(double epsilon, long n);

}  // namespace qvlbi::source

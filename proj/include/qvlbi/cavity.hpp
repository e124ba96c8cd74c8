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
#include <cstddef>
#include <vector>

#include "qvlbi/constants.hpp"

namespace qvlbi::cavity {

struct CavitySpec {
    double lambda = 780e-9;     // m
    double finesse = 2e5;
    double waist = 2e-6;        // m
    double length = 40e-6;      // m
    double gamma_atom = constants::two_pi * 6e6;  // angular Hz

    void validate() const;
};

/// Rb cavity operating point quoted alongside the design values above.
inline constexpr double kQuotedCoupling = constants::two_pi * 400e6;
inline constexpr double kQuotedKappa = constants::two_pi * 20e6;
inline constexpr double kQuotedCooperativity = 1500.0;

/// 3 lambda^2 F / (2 pi^3 w^2).
double cooperativity(const CavitySpec& spec);

/// Field decay pi c / (L F) in angular Hz.
double cavity_kappa(double length, double finesse);

/// g from C = g^2 / (kappa gamma).
double coupling_from_cooperativity(double cooperativity, double kappa, double gamma);

/// exp(-T kappa / 2) for a transfer time T (s).
double decay_fidelity(double duration, double kappa);

struct CavityReport {
    double cooperativity;
    double kappa;
    double gamma;
    double coupling;
    double gamma_over_kappa;
};

CavityReport evaluate(const CavitySpec& spec);

enum class DetuningModel {
    /// (g^2 + Omega^2) / g, in units of the peak coupling.
    Scaled,
    /// g^2 + Omega^2 taken literally with frequencies in rad/ns.
    Captioned,
};

/// Three-level adiabatic passage. Times are in units of 1 / g, where g is the
/// peak coupling; pulse peaks are in units of g and centres are fractions of
/// the total time.
struct StirapConfig {
    double g = kQuotedCoupling;         // angular Hz
    double kappa = kQuotedKappa;        // angular Hz
    double gamma = constants::two_pi * 6e6;  // angular Hz
    double coupling_peak = 1.0;
    double omega_peak = 5.0;
    double width = 10.0;
    double omega_centre = 0.275;
    double coupling_centre = 0.725;
    double total_time = 50.0;
    std::size_t steps = 100000;
    /// Keep every n-th step in the trajectory (the last step is always kept).
    std::size_t record_every = 100;
    bool include_decay = false;
    DetuningModel detuning = DetuningModel::Scaled;

    double dt() const { return total_time / static_cast<double>(steps); }
    void validate() const;
};

/// Coupling g(t) and drive Omega(t) envelopes, in units of the peak coupling.
double coupling_at(const StirapConfig& config, double t);
double drive_at(const StirapConfig& config, double t);

/// Per-sample populations of (|0>_R with the photon, |e>, |1>_R).
using Populations = std::array<double, 3>;

struct StirapTrajectory {
    std::vector<double> times;  // units of 1 / g
    std::vector<Populations> populations;
    double final_transfer = 0.0;
    double norm_loss = 0.0;
    double max_excited = 0.0;
};

/// Drift tolerance (per unit time) of the closed-system norm.
inline constexpr double kNormDriftPerTime = 1e-6;

/// Fixed-step RK4. Throws std::runtime_error when the closed-system norm drifts
/// beyond kNormDriftPerTime.
StirapTrajectory stirap_simulate(const StirapConfig& config);

}  // namespace qvlbi::cavity

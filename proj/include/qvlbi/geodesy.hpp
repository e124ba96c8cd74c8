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

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qvlbi/rng.hpp"

namespace qvlbi::geodesy {

struct BaselineGeometry {
    Eigen::Vector3d baseline;    // m, r2 - r1
    Eigen::Vector3d source_dir;  // unit vector
    double theta = 0.0;          // angle entering B sin(theta), rad
    double wavelength = 0.0;     // m

    void validate() const;
};

/// Geometric delay -(B . s) / c in seconds.
double geometric_delay(const BaselineGeometry& geom);

/// Interferometric phase 2 pi B sin(theta) / lambda wrapped into [0, 2 pi).
/// The fringe fraction is taken before scaling by 2 pi, so long baselines keep
/// full relative precision.
double phase_from_baseline(double baseline, double theta, double wavelength);

struct BaselineBound {
    bool identifiable = false;
    double delta_b = 0.0;  // m
};

/// Baseline precision lambda dphi / (2 pi sin(theta) sqrt(n)) for n detected
/// photons, each contributing unit phase information by default.
BaselineBound baseline_crb(double theta, double wavelength, long n_photons, double delta_phi = 1.0);

struct SettingCounts {
    double delta;
    long trials;
    long ones;
};

/// Detection probability of the "ones" outcome at reference phase delta.
double click_probability(double phi, double delta);

/// Splits n photons round-robin over the reference settings and draws the
/// Bernoulli outcomes.
std::vector<SettingCounts> simulate_counts(double phi_true, long n_photons, const std::vector<double>& deltas,
                                           Rng& rng);

double log_likelihood(double phi, const std::vector<SettingCounts>& counts);

inline constexpr int kMleGridPoints = 4096;

/// Grid search over [0, 2 pi) followed by golden-section refinement.
double mle_phase(const std::vector<SettingCounts>& counts);

struct PhaseMcConfig {
    double phi_true = 0.0;
    long n_photons = 10000;
    std::vector<double> deltas{0.0, 1.5707963267948966};
    long shots = 200;
    std::uint64_t seed = kDefaultSeed;

    /// Rejects n < 100, fewer than one shot, and reference sets in which
    /// every pair of settings differs by a multiple of pi.
    void validate() const;
};

struct PhaseMcResult {
    std::vector<double> estimates;
    /// Circular mean of the estimates.
    double phi_hat;
    /// Sample variance of the estimates about phi_hat (wrapped differences).
    double variance;
    double stddev;
    /// Standard error of phi_hat.
    double standard_error;
    /// phi_hat - phi_true wrapped into [-pi, pi).
    double bias;
};

enum class Execution { Serial, Parallel };

PhaseMcResult phase_mc(const PhaseMcConfig& config, Execution exec = Execution::Parallel);

/// Summary statistics of a set of phase estimates.
PhaseMcResult summarize_phases(std::vector<double> estimates, double phi_true);

/// Angle wrapped into [-pi, pi).
double wrap_signed(double angle);

}  // namespace qvlbi::geodesy

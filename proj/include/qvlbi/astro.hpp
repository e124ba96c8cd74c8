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

#include <string>
#include <vector>

namespace qvlbi::astro {

struct OrbitSpec {
    double central_mass = 0.0;  // kg
    double semi_major = 0.0;    // m
    double eccentricity = 0.0;  // [0, 1)
    double spin = 0.0;          // dimensionless, [0, 1]

    /// Throws for e >= 1 (the precession per orbit diverges as e -> 1),
    /// non-positive mass or axis, and spin outside [0, 1].
    static OrbitSpec make(double central_mass, double semi_major, double eccentricity, double spin = 0.0);
    void validate() const;

    /// 2 G M / c^2 in metres.
    double schwarzschild_radius() const;
};

/// Small-angle separation in arcseconds for an orbit of `a_au` astronomical
/// units seen from `d_pc` parsecs.
double angular_separation(double a_au, double d_pc);
double angular_separation_microarcsec(double a_au, double d_pc);

/// Diffraction-limited resolution lambda / B in microarcseconds.
double angular_resolution_microarcsec(double wavelength, double baseline);

/// 6 pi G M / (a (1 - e^2) c^2), radians per orbit.
double schwarzschild_precession(const OrbitSpec& orbit);

/// 2 chi (R_S / (a (1 - e^2)))^(3/2), radians per orbit.
double lense_thirring_precession(const OrbitSpec& orbit);

struct PrecessionReport {
    double schwarzschild;   // rad / orbit
    double lense_thirring;  // rad / orbit
    /// schwarzschild / lense_thirring; infinite for a non-spinning mass.
    double ratio;
};

PrecessionReport precession(const OrbitSpec& orbit);

/// S2 around the Galactic-centre black hole, taking a maximally spinning
/// 4.3e6 solar-mass hole. These are external literature values.
OrbitSpec s2_orbit();

/// Mercury around the Sun.
OrbitSpec mercury_orbit();

/// reference_baseline * resolution_ratio.
double required_baseline(double reference_baseline, double resolution_ratio);

/// Baseline matching the resolution of `reference_baseline` at
/// `reference_wavelength` when observing at `wavelength`.
double baseline_for_wavelength(double reference_baseline, double reference_wavelength, double wavelength);

inline constexpr double kEhtBaseline = 12000e3;   // m
inline constexpr double kEhtWavelength = 3e-3;    // m
inline constexpr double kNearInfraredBaseline = 130.0;  // m

struct ExoplanetRow {
    std::string name;
    double semi_major_au;
    double distance_pc;
    double published_separation;  // arcsec, as tabulated
};

std::vector<ExoplanetRow> exoplanet_rows();

double radians_to_arcsec(double rad);
double radians_to_arcmin(double rad);

}  // namespace qvlbi::astro

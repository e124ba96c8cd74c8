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

#include "qvlbi/astro.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qvlbi/constants.hpp"

namespace qvlbi::astro {

using namespace qvlbi::constants;

OrbitSpec OrbitSpec::make(double central_mass, double semi_major, double eccentricity, double spin) {
    OrbitSpec o{central_mass, semi_major, eccentricity, spin};
    o.validate();
    return o;
}

void OrbitSpec::validate() const {
    if (!(central_mass > 0.0) || !(semi_major > 0.0)) {
        throw std::invalid_argument("central mass and semi-major axis must be positive");
    }
    if (!(eccentricity >= 0.0)) {
        throw std::invalid_argument("eccentricity must be non-negative");
    }
    if (!(eccentricity < 1.0)) {
        throw std::invalid_argument("eccentricity must be below 1: precession per orbit diverges for unbound orbits");
    }
    if (!(spin >= 0.0 && spin <= 1.0)) {
        throw std::invalid_argument("spin must lie in [0, 1]");
    }
}

double OrbitSpec::schwarzschild_radius() const {
    return 2.0 * gravitational * central_mass / (speed_of_light * speed_of_light);
}

double angular_separation(double a_au, double d_pc) {
    if (!(a_au > 0.0 && d_pc > 0.0)) {
        throw std::invalid_argument("semi-major axis and distance must be positive");
    }
    return a_au / d_pc;
}

double angular_separation_microarcsec(double a_au, double d_pc) {
    return angular_separation(a_au, d_pc) * microarcsec_per_arcsec;
}

double angular_resolution_microarcsec(double wavelength, double baseline) {
    if (!(wavelength > 0.0 && baseline > 0.0)) {
        throw std::invalid_argument("wavelength and baseline must be positive");
    }
    return wavelength / baseline * arcsec_per_radian * microarcsec_per_arcsec;
}

double schwarzschild_precession(const OrbitSpec& orbit) {
    orbit.validate();
    const double semi_latus = orbit.semi_major * (1.0 - orbit.eccentricity * orbit.eccentricity);
    return 6.0 * pi * gravitational * orbit.central_mass / (semi_latus * speed_of_light * speed_of_light);
}

double lense_thirring_precession(const OrbitSpec& orbit) {
    orbit.validate();
    const double semi_latus = orbit.semi_major * (1.0 - orbit.eccentricity * orbit.eccentricity);
    return 2.0 * orbit.spin * std::pow(orbit.schwarzschild_radius() / semi_latus, 1.5);
}

PrecessionReport precession(const OrbitSpec& orbit) {
    PrecessionReport r;
    r.schwarzschild = schwarzschild_precession(orbit);
    r.lense_thirring = lense_thirring_precession(orbit);
    r.ratio = r.lense_thirring > 0.0 ? r.schwarzschild / r.lense_thirring : std::numeric_limits<double>::infinity();
    return r;
}

OrbitSpec s2_orbit() {
    return OrbitSpec::make(4.3e6 * solar_mass, 1031.0 * astronomical_unit, 0.884, 1.0);
}

OrbitSpec mercury_orbit() {
    return OrbitSpec::make(solar_mass, 5.79e10, 0.2056, 0.0);
}

double required_baseline(double reference_baseline, double resolution_ratio) {
    if (!(reference_baseline > 0.0 && resolution_ratio > 0.0)) {
        throw std::invalid_argument("baseline and ratio must be positive");
    }
    return reference_baseline * resolution_ratio;
}

double baseline_for_wavelength(double reference_baseline, double reference_wavelength, double wavelength) {
    if (!(reference_wavelength > 0.0 && wavelength > 0.0)) {
        throw std::invalid_argument("wavelengths must be positive");
    }
    return required_baseline(reference_baseline, wavelength / reference_wavelength);
}

std::vector<ExoplanetRow> exoplanet_rows() {
    return {
        {"Proxima Centauri b", 0.0485, 1.301, 0.037},
        {"Barnard's Star b", 0.0406, 1.834, 0.022},
        {"Ross 128 b", 0.0496, 3.374, 0.015},
        {"Luyten's Star b", 0.0911, 3.785, 0.024},
        {"Wolf 1061 c", 0.084, 4.287, 0.020},
    };
}

double radians_to_arcsec(double rad) { return rad * arcsec_per_radian; }
double radians_to_arcmin(double rad) { return rad * arcsec_per_radian / 60.0; }

}  // namespace qvlbi::astro

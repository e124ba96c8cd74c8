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

#include <optional>
#include <variant>
#include <vector>

namespace qvlbi::photometry {

struct WavelengthBandwidth {
    double meters;
};

struct FrequencyBandwidth {
    double hertz;
};

using Bandwidth = std::variant<WavelengthBandwidth, FrequencyBandwidth>;

/// Observation of a star through a single band. Invariants: wavelength,
/// bandwidth and area strictly positive.
struct PhotometrySpec {
    double m_ab = 0.0;
    double wavelength = 0.0;  // m
    Bandwidth bandwidth = WavelengthBandwidth{0.0};
    double area = 0.0;  // m^2

    void validate() const;
};

/// Builds a spec from optional bandwidth representations; exactly one of
/// `delta_lambda` and `delta_nu` must be given.
PhotometrySpec make_spec(double m_ab, double wavelength, std::optional<double> delta_lambda,
                         std::optional<double> delta_nu, double area);

struct PhotometryResult {
    double flux_nu;         // W m^-2 Hz^-1
    double photon_rate;     // photons / s over band and area
    double coherence_time;  // s
    double epsilon;         // mean photons per time bin
};

/// AB magnitude to spectral flux density in W m^-2 Hz^-1.
double flux_from_magnitude(double m_ab);

/// Frequency bandwidth of a wavelength band centred on `wavelength`.
double frequency_bandwidth(double wavelength, double delta_lambda);
/// Wavelength bandwidth of a frequency band centred on `wavelength`.
double wavelength_bandwidth(double wavelength, double delta_nu);

double coherence_time(double delta_nu);

/// Photons per second collected over the full band and area, assuming the
/// spectral density is flat across the band.
double photon_rate(const PhotometrySpec& spec);

/// Mean photon number per coherence-time bin.
double epsilon_per_bin(const PhotometrySpec& spec);

PhotometryResult evaluate(const PhotometrySpec& spec);

/// One row of the host-star photon budget table.
struct AppendixRow {
    PhotometrySpec spec;
    double published_rate;
    double published_epsilon;
};

/// Host-star rows (10 m^2 collecting area) with their published values.
std::vector<AppendixRow> appendix_rows();

/// Contrast assumed between a planet and its host star.
inline constexpr double kPlanetContrast = 1e-9;

}  // namespace qvlbi::photometry

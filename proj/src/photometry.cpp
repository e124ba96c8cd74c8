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

#include "qvlbi/photometry.hpp"

#include <cmath>
#include <stdexcept>

#include "qvlbi/constants.hpp"

namespace qvlbi::photometry {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

double delta_lambda_of(const PhotometrySpec& spec) {
    if (const auto* dl = std::get_if<WavelengthBandwidth>(&spec.bandwidth)) {
        return dl->meters;
    }
    return wavelength_bandwidth(spec.wavelength, std::get<FrequencyBandwidth>(spec.bandwidth).hertz);
}

double delta_nu_of(const PhotometrySpec& spec) {
    if (const auto* dnu = std::get_if<FrequencyBandwidth>(&spec.bandwidth)) {
        return dnu->hertz;
    }
    return frequency_bandwidth(spec.wavelength, std::get<WavelengthBandwidth>(spec.bandwidth).meters);
}

}  // namespace

void PhotometrySpec::validate() const {
    if (!std::isfinite(m_ab)) {
        throw std::invalid_argument("magnitude must be finite");
    }
    require_positive(wavelength, "wavelength");
    require_positive(area, "collection area");
    std::visit([](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, WavelengthBandwidth>) {
            require_positive(b.meters, "wavelength bandwidth");
        } else {
            require_positive(b.hertz, "frequency bandwidth");
        }
    }, bandwidth);
}

PhotometrySpec make_spec(double m_ab, double wavelength, std::optional<double> delta_lambda,
                         std::optional<double> delta_nu, double area) {
    if (delta_lambda.has_value() == delta_nu.has_value()) {
        throw std::invalid_argument("exactly one of the wavelength and frequency bandwidths must be given");
    }
    PhotometrySpec spec{m_ab, wavelength,
                        delta_lambda ? Bandwidth{WavelengthBandwidth{*delta_lambda}}
                                     : Bandwidth{FrequencyBandwidth{*delta_nu}},
                        area};
    spec.validate();
    return spec;
}

double flux_from_magnitude(double m_ab) {
    // AB zero point in cgs (erg s^-1 cm^-2 Hz^-1), then 1e-3 to SI.
    return std::pow(10.0, -0.4 * (m_ab + 48.6)) * 1e-3;
}

double frequency_bandwidth(double wavelength, double delta_lambda) {
    require_positive(wavelength, "wavelength");
    require_positive(delta_lambda, "wavelength bandwidth");
    return delta_lambda * constants::speed_of_light / (wavelength * wavelength);
}

double wavelength_bandwidth(double wavelength, double delta_nu) {
    require_positive(wavelength, "wavelength");
    require_positive(delta_nu, "frequency bandwidth");
    return delta_nu * wavelength * wavelength / constants::speed_of_light;
}

double coherence_time(double delta_nu) {
    require_positive(delta_nu, "frequency bandwidth");
    return 1.0 / delta_nu;
}

double photon_rate(const PhotometrySpec& spec) {
    spec.validate();
    const double per_wavelength = flux_from_magnitude(spec.m_ab) / (constants::planck * spec.wavelength);
    return per_wavelength * delta_lambda_of(spec) * spec.area;
}

double epsilon_per_bin(const PhotometrySpec& spec) {
    return photon_rate(spec) * coherence_time(delta_nu_of(spec));
}

PhotometryResult evaluate(const PhotometrySpec& spec) {
    const double rate = photon_rate(spec);
    const double tau = coherence_time(delta_nu_of(spec));
    return {flux_from_magnitude(spec.m_ab), rate, tau, rate * tau};
}

std::vector<AppendixRow> appendix_rows() {
    constexpr double nm = 1e-9;
    constexpr double area = 10.0;
    auto row = [&](double m, double lambda, double dlambda, double rate, double eps) {
        return AppendixRow{PhotometrySpec{m, lambda, WavelengthBandwidth{dlambda}, area}, rate, eps};
    };
    return {
        row(9.0, 760 * nm, 1 * nm, 181106.0, 3.5e-7),
        row(9.0, 1650 * nm, 1 * nm, 83418.0, 7.5e-7),
        row(11.0, 760 * nm, 10 * nm, 287035.0, 5.5e-8),
        row(11.0, 1650 * nm, 10 * nm, 132210.0, 1.2e-7),
        row(11.0, 760 * nm, 1 * nm, 28703.0, 5.5e-8),
        row(11.0, 1650 * nm, 1 * nm, 13221.0, 1.2e-7),
        row(13.0, 760 * nm, 1 * nm, 4549.0, 9e-9),
        row(13.0, 1650 * nm, 1 * nm, 2095.0, 1.9e-8),
    };
}

}  // namespace qvlbi::photometry

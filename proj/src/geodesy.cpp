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

#include "qvlbi/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qvlbi/constants.hpp"
#include "qvlbi/kernels.hpp"
#include "qvlbi/source_model.hpp"

namespace qvlbi::geodesy {

void BaselineGeometry::validate() const {
    if (!baseline.allFinite() || !source_dir.allFinite()) {
        throw std::invalid_argument("geometry vectors must be finite");
    }
    if (std::abs(source_dir.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("source direction must be a unit vector");
    }
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
}

double geometric_delay(const BaselineGeometry& geom) {
    geom.validate();
    return -geom.baseline.dot(geom.source_dir) / constants::speed_of_light;
}

double phase_from_baseline(double baseline, double theta, double wavelength) {
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
    const double fringes = baseline * std::sin(theta) / wavelength;
    const double frac = fringes - std::floor(fringes);
    return source::wrap_phase(constants::two_pi * frac);
}

BaselineBound baseline_crb(double theta, double wavelength, long n_photons, double delta_phi) {
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
    if (n_photons < 1) {
        throw std::invalid_argument("need at least one detected photon");
    }
    if (!(delta_phi > 0.0)) {
        throw std::invalid_argument("phase uncertainty must be positive");
    }
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-15) {
        return {false, std::numeric_limits<double>::infinity()};
    }
    return {true, wavelength * delta_phi / (constants::two_pi * std::abs(s) * std::sqrt(static_cast<double>(n_photons)))};
}

double click_probability(double phi, double delta) {
    return 0.5 * (1.0 + std::cos(phi - delta));
}

std::vector<SettingCounts> simulate_counts(double phi_true, long n_photons, const std::vector<double>& deltas,
                                           Rng& rng) {
    if (deltas.empty() || n_photons < 1) {
        throw std::invalid_argument("need at least one setting and one photon");
    }
    const auto k = static_cast<long>(deltas.size());
    std::vector<SettingCounts> counts;
    counts.reserve(deltas.size());
    for (long j = 0; j < k; ++j) {
        counts.push_back({deltas[static_cast<std::size_t>(j)], n_photons / k + (j < n_photons % k ? 1 : 0), 0});
    }
    for (auto& c : counts) {
        const double p = click_probability(phi_true, c.delta);
        for (long i = 0; i < c.trials; ++i) {
            c.ones += uniform01(rng) < p ? 1 : 0;
        }
    }
    return counts;
}

double log_likelihood(double phi, const std::vector<SettingCounts>& counts) {
    constexpr double tiny = 1e-300;
    double ll = 0.0;
    for (const auto& c : counts) {
        const double p = click_probability(phi, c.delta);
        if (c.ones > 0) {
            ll += static_cast<double>(c.ones) * std::log(std::max(p, tiny));
        }
        if (c.trials - c.ones > 0) {
            ll += static_cast<double>(c.trials - c.ones) * std::log(std::max(1.0 - p, tiny));
        }
    }
    return ll;
}

double mle_phase(const std::vector<SettingCounts>& counts) {
    const double step = constants::two_pi / kMleGridPoints;
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMleGridPoints; ++i) {
        const double ll = log_likelihood(step * i, counts);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    // Golden-section search on the bracketing cell pair.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = step * (best - 1);
    double b = step * (best + 1);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = log_likelihood(c, counts);
    double fd = log_likelihood(d, counts);
    for (int it = 0; it < 100 && (b - a) > 1e-13; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = log_likelihood(c, counts);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = log_likelihood(d, counts);
        }
    }
    const double refined = (a + b) / 2.0;
    // Keep the grid point if refinement wandered off a boundary optimum.
    const double result = log_likelihood(refined, counts) >= best_ll ? refined : step * best;
    return source::wrap_phase(result);
}

void PhaseMcConfig::validate() const {
    if (n_photons < 100) {
        throw std::invalid_argument("phase Monte Carlo needs at least 100 photons per shot");
    }
    if (shots < 1) {
        throw std::invalid_argument("need at least one shot");
    }
    if (!std::isfinite(phi_true)) {
        throw std::invalid_argument("true phase must be finite");
    }
    bool resolving = false;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        for (std::size_t j = i + 1; j < deltas.size(); ++j) {
            if (std::abs(std::sin(deltas[i] - deltas[j])) > 1e-9) {
                resolving = true;
            }
        }
    }
    if (!resolving) {
        throw std::invalid_argument(
            "reference phases must include two settings not separated by a multiple of pi (sign ambiguity)");
    }
}

double wrap_signed(double angle) {
    double w = std::fmod(angle + constants::pi, constants::two_pi);
    if (w < 0.0) {
        w += constants::two_pi;
    }
    return w - constants::pi;
}

PhaseMcResult summarize_phases(std::vector<double> estimates, double phi_true) {
    if (estimates.size() < 2) {
        throw std::invalid_argument("need at least two estimates");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const double e : estimates) {
        sx += std::cos(e);
        sy += std::sin(e);
    }
    const double centre = source::wrap_phase(std::atan2(sy, sx));
    // Mean offset from the circular centre refines it to the arithmetic mean
    // of the unwrapped estimates.
    double offset = 0.0;
    for (const double e : estimates) {
        offset += wrap_signed(e - centre);
    }
    offset /= static_cast<double>(estimates.size());
    const double phi_hat = source::wrap_phase(centre + offset);
    double ss = 0.0;
    for (const double e : estimates) {
        const double d = wrap_signed(e - phi_hat);
        ss += d * d;
    }
    const double n = static_cast<double>(estimates.size());
    PhaseMcResult out;
    out.variance = ss / (n - 1.0);
    out.stddev = std::sqrt(out.variance);
    out.standard_error = std::sqrt(out.variance / n);
    out.phi_hat = phi_hat;
    out.bias = wrap_signed(phi_hat - phi_true);
    out.estimates = std::move(estimates);
    return out;
}

PhaseMcResult phase_mc(const PhaseMcConfig& config, Execution exec) {
    config.validate();
    auto estimates = exec == Execution::Parallel ? kernels::phase_estimates(config)
                                                 : kernels::reference::phase_estimates(config);
    return summarize_phases(std::move(estimates), config.phi_true);
}

}  // namespace qvlbi::geodesy

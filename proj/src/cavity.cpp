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

#include "qvlbi/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qvlbi::cavity {
namespace {

using cd = std::complex<double>;
using State = std::array<cd, 3>;

double gaussian(double t, double centre, double width) {
    const double x = (t - centre) / width;
    return std::exp(-0.5 * x * x);
}

struct Hamiltonian {
    const StirapConfig& cfg;
    double decay_photon;  // kappa / g
    double decay_excited;  // gamma / g
    double caption_scale;  // g in rad/ns

    State apply(double t, const State& c) const {
        const double g = coupling_at(cfg, t);
        const double om = drive_at(cfg, t);
        double delta = 0.0;
        if (cfg.detuning == DetuningModel::Scaled) {
            delta = g * g + om * om;
        } else {
            delta = caption_scale * (g * g + om * om);
        }
        const cd minus_i(0.0, -1.0);
        const cd h0 = cd(0.0, -decay_photon / 2.0) * c[0] + g * c[1];
        const cd h1 = g * c[0] + cd(delta, -decay_excited / 2.0) * c[1] + om * c[2];
        const cd h2 = om * c[1];
        return {minus_i * h0, minus_i * h1, minus_i * h2};
    }
};

State axpy(const State& y, double a, const State& k) {
    return {y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]};
}

Populations populations(const State& c) {
    return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2])};
}

}  // namespace

double coupling_at(const StirapConfig& config, double t) {
    return config.coupling_peak * gaussian(t, config.coupling_centre * config.total_time, config.width);
}

double drive_at(const StirapConfig& config, double t) {
    return config.omega_peak * gaussian(t, config.omega_centre * config.total_time, config.width);
}

void CavitySpec::validate() const {
    if (!(lambda > 0.0 && finesse > 0.0 && waist > 0.0 && length > 0.0 && gamma_atom > 0.0)) {
        throw std::invalid_argument("cavity parameters must all be positive");
    }
}

double cooperativity(const CavitySpec& spec) {
    spec.validate();
    const double pi = constants::pi;
    return 3.0 * spec.lambda * spec.lambda * spec.finesse / (2.0 * pi * pi * pi * spec.waist * spec.waist);
}

double cavity_kappa(double length, double finesse) {
    if (!(length > 0.0 && finesse > 0.0)) {
        throw std::invalid_argument("length and finesse must be positive");
    }
    return constants::pi * constants::speed_of_light / (length * finesse);
}

double coupling_from_cooperativity(double cooperativity, double kappa, double gamma) {
    if (!(cooperativity >= 0.0 && kappa >= 0.0 && gamma >= 0.0)) {
        throw std::invalid_argument("cooperativity and rates must be non-negative");
    }
    return std::sqrt(cooperativity * kappa * gamma);
}

double decay_fidelity(double duration, double kappa) {
    if (!(duration >= 0.0 && kappa >= 0.0)) {
        throw std::invalid_argument("duration and kappa must be non-negative");
    }
    return std::exp(-duration * kappa / 2.0);
}

CavityReport evaluate(const CavitySpec& spec) {
    CavityReport r;
    r.cooperativity = cooperativity(spec);
    r.kappa = cavity_kappa(spec.length, spec.finesse);
    r.gamma = spec.gamma_atom;
    r.coupling = coupling_from_cooperativity(r.cooperativity, r.kappa, r.gamma);
    r.gamma_over_kappa = r.gamma / r.kappa;
    return r;
}

void StirapConfig::validate() const {
    if (!(g > 0.0)) {
        throw std::invalid_argument("coupling g must be positive");
    }
    if (!(kappa >= 0.0 && gamma >= 0.0)) {
        throw std::invalid_argument("decay rates must be non-negative");
    }
    if (!(coupling_peak >= 0.0 && omega_peak >= 0.0)) {
        throw std::invalid_argument("pulse peaks must be non-negative");
    }
    if (!(width > 0.0 && total_time > 0.0)) {
        throw std::invalid_argument("pulse width and total time must be positive");
    }
    if (steps < 10000) {
        throw std::invalid_argument("integrator step must not exceed T / 1e4");
    }
    if (record_every == 0) {
        throw std::invalid_argument("record_every must be positive");
    }
}

StirapTrajectory stirap_simulate(const StirapConfig& config) {
    config.validate();
    const Hamiltonian h{config, config.include_decay ? config.kappa / config.g : 0.0,
                        config.include_decay ? config.gamma / config.g : 0.0, config.g * 1e-9};
    const double dt = config.dt();
    State c{cd(1.0, 0.0), cd(0.0, 0.0), cd(0.0, 0.0)};
    StirapTrajectory out;
    const std::size_t samples = config.steps / config.record_every + 2;
    out.times.reserve(samples);
    out.populations.reserve(samples);
    auto record = [&](double t) {
        const auto p = populations(c);
        out.times.push_back(t);
        out.populations.push_back(p);
        out.max_excited = std::max(out.max_excited, p[1]);
    };
    record(0.0);
    double prev_norm = 1.0;
    for (std::size_t n = 0; n < config.steps; ++n) {
        const double t = dt * static_cast<double>(n);
        const State k1 = h.apply(t, c);
        const State k2 = h.apply(t + dt / 2.0, axpy(c, dt / 2.0, k1));
        const State k3 = h.apply(t + dt / 2.0, axpy(c, dt / 2.0, k2));
        const State k4 = h.apply(t + dt, axpy(c, dt, k3));
        for (int j = 0; j < 3; ++j) {
            c[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        const double t_next = dt * static_cast<double>(n + 1);
        const double norm = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
        if (!config.include_decay && std::abs(1.0 - norm) > kNormDriftPerTime * t_next) {
            throw std::runtime_error("integrator norm drift exceeds tolerance; reduce the step");
        }
        if (config.include_decay && norm > prev_norm + 1e-12) {
            throw std::runtime_error("integrator gained norm under decay; reduce the step");
        }
        prev_norm = norm;
        if ((n + 1) % config.record_every == 0 || n + 1 == config.steps) {
            record(t_next);
        } else {
            out.max_excited = std::max(out.max_excited, std::norm(c[1]));
        }
    }
    const auto final_pop = populations(c);
    out.final_transfer = final_pop[2];
    out.norm_loss = 1.0 - (final_pop[0] + final_pop[1] + final_pop[2]);
    return out;
}

}  // namespace qvlbi::cavity

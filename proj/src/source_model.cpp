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

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qvlbi/constants.hpp"

namespace qvlbi::source {

double wrap_phase(double phi) {
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("phase must be finite");
    }
    double wrapped = std::fmod(phi, constants::two_pi);
    if (wrapped < 0.0) {
        wrapped += constants::two_pi;
    }
    // fmod of a tiny negative number can round up to exactly 2 pi.
    return wrapped >= constants::two_pi ? 0.0 : wrapped;
}

void SourceParams::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and non-negative");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
    if (!(phi >= 0.0 && phi < constants::two_pi)) {
        throw std::invalid_argument("phi must lie in [0, 2 pi)");
    }
}

SourceParams SourceParams::make(double epsilon, double gamma, double phi) {
    SourceParams p{epsilon, gamma, wrap_phase(phi)};
    p.validate();
    return p;
}

TwoModeCovariance covariance(const SourceParams& params) {
    params.validate();
    const double diag = params.epsilon + 1.0;
    const double c = params.gamma * params.epsilon * std::cos(params.phi);
    const double s = params.gamma * params.epsilon * std::sin(params.phi);
    TwoModeCovariance out;
    out.sigma << diag, 0.0, c, -s,
                 0.0, diag, s, c,
                 c, s, diag, 0.0,
                 -s, c, 0.0, diag;
    out.mean.setZero();
    return out;
}

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& sigma) {
    // Eigenvalues of Omega sigma come in pairs +-i nu.
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(symplectic_form() * sigma, false);
    std::array<double, 4> moduli{};
    for (int i = 0; i < 4; ++i) {
        moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
    }
    std::sort(moduli.begin(), moduli.end());
    return {moduli[0], moduli[2]};
}

double uncertainty_margin(const Eigen::Matrix4d& sigma) {
    const Eigen::Matrix4cd m = sigma.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double WeakSourceState::gamma() const {
    const double eps = epsilon();
    return eps > 0.0 ? (p_plus - p_minus) / eps : 0.0;
}

WeakSourceState weak_state(const SourceParams& params, bool allow_beyond_limit) {
    params.validate();
    const double eps = params.epsilon;
    if (eps > 1.0) {
        throw std::invalid_argument("weak-source truncation undefined for epsilon > 1");
    }
    const bool beyond = eps > kWeakLimit;
    if (beyond && !allow_beyond_limit) {
        throw std::invalid_argument("epsilon exceeds the weak-source limit 0.1; pass the override to proceed");
    }
    return WeakSourceState{1.0 - eps, eps * (1.0 + params.gamma) / 2.0, eps * (1.0 - params.gamma) / 2.0,
                           params.phi, beyond};
}

double thermal_pmf(double epsilon, long n) {
    if (n < 0) {
        throw std::invalid_argument("occupation number must be non-negative");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and non-negative");
    }
    if (epsilon == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double log_ratio = std::log(epsilon) - std::log1p(epsilon);
    return std::exp(static_cast<double>(n) * log_ratio - std::log1p(epsilon));
}

}  // namespace qvlbi::source

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

#include "qvlbi/gottesman.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qvlbi::protocols {

namespace {

using cd = std::complex<double>;

void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
}

// Input modes: 0 stellar A, 1 stellar B, 2 ground A, 3 ground B.
// Output modes: 0 A1, 1 A2, 2 B1, 3 B2.
Eigen::Matrix4cd beam_splitters() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = r;
    u(1, 0) = r;
    u(0, 2) = r;
    u(1, 2) = -r;
    u(2, 1) = r;
    u(3, 1) = r;
    u(2, 3) = r;
    u(3, 3) = -r;
    return u;
}

// Pattern probabilities for the pure state (sum_i s_i a_i^dag)(sum_j g_j a_j^dag)|0>,
// accumulated with weight `w` into `probs` (upper triangle).
void accumulate(const Eigen::Vector4cd& s, const Eigen::Vector4cd& g, double w, Eigen::Matrix4d& probs) {
    for (int k = 0; k < 4; ++k) {
        for (int l = k; l < 4; ++l) {
            const cd sym = (s[k] * g[l] + s[l] * g[k]) / 2.0;
            // |1_k 1_l> has amplitude 2 sym; |2_k> has amplitude sqrt(2) sym.
            probs(k, l) += w * (k == l ? 2.0 * std::norm(sym) : 4.0 * std::norm(sym));
        }
    }
}

}  // namespace

GottesmanProbs gottesman_probs(double phi, double delta, double gamma) {
    require_gamma(gamma);
    return {0.5 * (1.0 + gamma * std::cos(phi - delta)), 0.5 * (1.0 - gamma * std::cos(phi + delta))};
}

std::string_view name(Port p) {
    switch (p) {
        case Port::A1:
            return "A1";
        case Port::A2:
            return "A2";
        case Port::B1:
            return "B1";
        case Port::B2:
            return "B2";
    }
    return "?";
}

CoincidenceDistribution gottesman_fock(double phi, double delta, double gamma, ReferencePhase reference) {
    require_gamma(gamma);
    const Eigen::Matrix4cd u = beam_splitters();
    const double r = 1.0 / std::sqrt(2.0);
    const cd e_phi = std::exp(cd(0.0, phi));
    const double ref = reference == ReferencePhase::Direct ? delta : -delta;

    // (0, 0, r e^{i ref}, r) up to the global phase e^{-i ref}.
    const Eigen::Vector4cd ground(0.0, 0.0, r, r * std::exp(cd(0.0, -ref)));
    const Eigen::Vector4cd plus(r, r * e_phi, 0.0, 0.0);
    const Eigen::Vector4cd minus(r, -r * e_phi, 0.0, 0.0);

    Eigen::Matrix4d probs = Eigen::Matrix4d::Zero();
    const Eigen::Vector4cd g_out = u * ground;
    accumulate(u * plus, g_out, (1.0 + gamma) / 2.0, probs);
    accumulate(u * minus, g_out, (1.0 - gamma) / 2.0, probs);

    CoincidenceDistribution d{};
    std::size_t n = 0;
    d.total = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = k; l < 4; ++l) {
            d.patterns[n++] = {static_cast<Port>(k), static_cast<Port>(l), probs(k, l)};
            d.total += probs(k, l);
        }
    }
    const double same = probs(0, 2) + probs(1, 3);
    const double crossed = probs(0, 3) + probs(1, 2);
    d.coincidence = same + crossed;
    d.correlated = same / d.coincidence;
    d.anticorrelated = crossed / d.coincidence;
    return d;
}

GottesmanOracle gottesman_oracle(double phi, double delta, double gamma) {
    GottesmanOracle o;
    o.direct = gottesman_fock(phi, delta, gamma, ReferencePhase::Direct);
    o.conjugate = gottesman_fock(phi, delta, gamma, ReferencePhase::Conjugate);
    o.correlated = o.conjugate.correlated;
    o.anticorrelated = o.direct.anticorrelated;
    return o;
}

}  // namespace qvlbi::protocols

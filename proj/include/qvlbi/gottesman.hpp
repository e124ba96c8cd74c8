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
#include <string_view>

namespace qvlbi::protocols {

/// Closed-form outcome probabilities of the repeater-assisted protocol, as
/// published: (1 + Re[gamma e^{-i(phi - delta)}]) / 2 for correlated clicks
/// and (1 - Re[gamma e^{-i(phi + delta)}]) / 2 for anticorrelated clicks.
/// The two do not sum to one unless delta is 0 or pi (or gamma is 0).
struct GottesmanProbs {
    double correlated;
    double anticorrelated;
};

GottesmanProbs gottesman_probs(double phi, double delta, double gamma);

/// Sign of the reference phase carried by the ground photon
/// (|0>_A|1>_B + e^{+-i delta}|1>_A|0>_B)/sqrt(2).
enum class ReferencePhase { Direct, Conjugate };

/// Output ports: A1, A2 at station A and B1, B2 at station B.
enum class Port { A1 = 0, A2 = 1, B1 = 2, B2 = 3 };
std::string_view name(Port p);

struct PatternProbability {
    Port first;
    Port second;  // first <= second; equal ports mean both photons bunched
    double probability;
};

/// Exact two-photon detection statistics after the two 50:50 beam splitters.
struct CoincidenceDistribution {
    /// All ten unordered two-photon patterns; sums to one.
    std::array<PatternProbability, 10> patterns;
    double total;
    /// Probability of one click at each station.
    double coincidence;
    /// Conditional on a coincidence: same-index ports (A1B1, A2B2) versus
    /// crossed ports (A1B2, A2B1).
    double correlated;
    double anticorrelated;
};

/// Brute-force evaluation in the two-photon Fock space of four modes
/// (stellar A, stellar B, ground A, ground B): the weak-source single-photon
/// mixture times the ground photon, propagated through one beam splitter
/// per station, with every output pattern enumerated.
CoincidenceDistribution gottesman_fock(double phi, double delta, double gamma, ReferencePhase reference);

struct GottesmanOracle {
    CoincidenceDistribution direct;
    CoincidenceDistribution conjugate;
    /// Fock-space values matching the published correlated line (conjugate
    /// reference) and anticorrelated line (direct reference).
    double correlated;
    double anticorrelated;
};

GottesmanOracle gottesman_oracle(double phi, double delta, double gamma);

}  // namespace qvlbi::protocols

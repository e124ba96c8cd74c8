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
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "qvlbi/source_model.hpp"

namespace qvlbi::estimation {

enum class Parameter { Phi, Gamma };

std::string_view name(Parameter p);

/// Quantum Fisher information over the parameter order (phi, gamma).
struct QfiMatrix {
    double j_phi = 0.0;
    double j_gamma = 0.0;
    double j_cross = 0.0;
    /// gamma == 1: j_gamma is +infinity.
    bool gamma_divergent = false;

    Eigen::Matrix2d matrix() const;
};

/// Closed-form QFI of the two-site thermal state. Independent of phi.
QfiMatrix qfi_matrix(const source::SourceParams& params);

/// Weak-source density matrix on the basis {|00>, |01>, |10>} (occupations
/// of A then B). No validation: the oracle evaluates it at perturbed
/// parameters that may step just outside the physical range.
Eigen::Matrix3cd weak_density_matrix(double epsilon, double gamma, double phi);

inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr double kSldCutoff = 1e-12;

/// Numerical QFI of the weak-source state from the symmetric logarithmic
/// derivative: 2 sum_{jk} |<j|d rho|k>|^2 / (l_j + l_k) over eigenpairs with
/// l_j + l_k above kSldCutoff, with d rho from a central difference.
double qfi_numerical(const source::WeakSourceState& state, Parameter which);
double qfi_numerical(const source::SourceParams& params, Parameter which);

/// Classical Fisher information of local direct detection with reference
/// phase delta. Rank one, nonzero eigenvalue eps / (1 - (gamma cos delta)^2).
struct FiMatrix {
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();
    double nonzero_eigenvalue = 0.0;
    double delta = 0.0;
    bool divergent = false;

    std::array<double, 2> eigenvalues() const { return {0.0, nonzero_eigenvalue}; }
    double trace_norm() const { return nonzero_eigenvalue; }
    /// Trace norm after `repetitions` independent measurements.
    double trace_norm(long repetitions) const;
};

FiMatrix local_fi(const source::SourceParams& params, double delta);

struct ParameterBound {
    enum class Status { Bounded, Unidentifiable, SingularLimit };
    Status status = Status::Unidentifiable;
    /// Lower bound on the variance; 0 in the singular limit, meaningless when
    /// unidentifiable.
    double variance = 0.0;
};

std::string_view name(ParameterBound::Status s);

/// Cramer-Rao bound J^{-1} / N. A singular J yields per-parameter bounds
/// only for parameters orthogonal to its null space.
struct CrbResult {
    std::array<ParameterBound, 2> bounds;
    bool full_rank = false;
    std::optional<Eigen::Matrix2d> covariance;
    /// For rank-one information: the single identifiable linear combination
    /// of the parameters and its variance bound.
    std::optional<Eigen::Vector2d> identifiable_direction;
    double direction_variance = 0.0;

    const ParameterBound& operator[](Parameter p) const {
        return bounds[p == Parameter::Phi ? 0 : 1];
    }
};

CrbResult crb(const Eigen::Matrix2d& info, long n_copies);
CrbResult crb(const QfiMatrix& info, long n_copies);
CrbResult crb(const FiMatrix& info, long n_copies);

/// Single-parameter bound 1 / (N J).
ParameterBound crb_scalar(double info, long n_copies);

}  // namespace qvlbi::estimation

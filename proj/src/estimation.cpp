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

#include "qvlbi/estimation.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace qvlbi::estimation {

namespace {

using cd = std::complex<double>;

void require_copies(long n_copies) {
    if (n_copies < 1) {
        throw std::invalid_argument("number of copies must be at least 1");
    }
}

void require_psd(const Eigen::Matrix2d& info) {
    if (!info.allFinite() || std::abs(info(0, 1) - info(1, 0)) > 1e-12 * info.cwiseAbs().maxCoeff()) {
        throw std::invalid_argument("information matrix must be finite and symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(info, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, info.cwiseAbs().maxCoeff());
    if (solver.eigenvalues().minCoeff() < -1e-12 * scale) {
        throw std::invalid_argument("information matrix must be positive semidefinite");
    }
}

}  // namespace

std::string_view name(Parameter p) {
    return p == Parameter::Phi ? "phi" : "gamma";
}

std::string_view name(ParameterBound::Status s) {
    switch (s) {
        case ParameterBound::Status::Bounded:
            return "bounded";
        case ParameterBound::Status::Unidentifiable:
            return "unidentifiable";
        case ParameterBound::Status::SingularLimit:
            return "singular_limit";
    }
    return "unknown";
}

Eigen::Matrix2d QfiMatrix::matrix() const {
    Eigen::Matrix2d m;
    m << j_phi, j_cross, j_cross, j_gamma;
    return m;
}

QfiMatrix qfi_matrix(const source::SourceParams& params) {
    params.validate();
    const double e = params.epsilon;
    const double g2 = params.gamma * params.gamma;
    QfiMatrix q;
    q.j_phi = 2.0 * g2 * e / (2.0 + e * (1.0 - g2));
    if (params.gamma >= 1.0) {
        q.j_gamma = std::numeric_limits<double>::infinity();
        q.gamma_divergent = true;
    } else {
        q.j_gamma = 2.0 * e * (2.0 + e + e * g2) / ((1.0 - g2) * (4.0 + 4.0 * e + e * e * (1.0 - g2)));
    }
    return q;
}

Eigen::Matrix3cd weak_density_matrix(double epsilon, double gamma, double phi) {
    // <10|rho|01> = eps gamma e^{-i phi} / 2 for the mixture of |psi_+-> with
    // weights eps (1 +- gamma) / 2.
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(0, 0) = 1.0 - epsilon;
    rho(1, 1) = epsilon / 2.0;
    rho(2, 2) = epsilon / 2.0;
    const cd coherence = gamma * epsilon / 2.0 * std::exp(cd(0.0, -phi));
    rho(2, 1) = coherence;
    rho(1, 2) = std::conj(coherence);
    return rho;
}

double qfi_numerical(const source::SourceParams& params, Parameter which) {
    params.validate();
    if (params.epsilon > source::kWeakLimit) {
        throw std::invalid_argument("numerical QFI oracle requires epsilon <= 0.1");
    }
    const double h = kFiniteDifferenceStep;
    const double e = params.epsilon;
    const double g = params.gamma;
    const double p = params.phi;
    const Eigen::Matrix3cd drho =
        which == Parameter::Phi
            ? ((weak_density_matrix(e, g, p + h) - weak_density_matrix(e, g, p - h)) / (2.0 * h)).eval()
            : ((weak_density_matrix(e, g + h, p) - weak_density_matrix(e, g - h, p)) / (2.0 * h)).eval();

    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(weak_density_matrix(e, g, p));
    const auto& lambda = solver.eigenvalues();
    const Eigen::Matrix3cd drho_eigen = solver.eigenvectors().adjoint() * drho * solver.eigenvectors();
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const double denom = lambda[j] + lambda[k];
            if (denom > kSldCutoff) {
                total += 2.0 * std::norm(drho_eigen(j, k)) / denom;
            }
        }
    }
    return total;
}

double qfi_numerical(const source::WeakSourceState& state, Parameter which) {
    return qfi_numerical(source::SourceParams::make(state.epsilon(), state.gamma(), state.phi), which);
}

double FiMatrix::trace_norm(long repetitions) const {
    require_copies(repetitions);
    return static_cast<double>(repetitions) * nonzero_eigenvalue;
}

FiMatrix local_fi(const source::SourceParams& params, double delta) {
    params.validate();
    const double re = params.gamma * std::cos(delta);
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    FiMatrix fi;
    fi.delta = delta;
    const double denom = 1.0 - re * re;
    if (denom <= 0.0) {
        fi.divergent = true;
        fi.nonzero_eigenvalue = std::numeric_limits<double>::infinity();
        fi.matrix << c * c, s * c, s * c, s * s;
        return fi;
    }
    const double scale = params.epsilon / denom;
    fi.nonzero_eigenvalue = scale;
    fi.matrix << scale * c * c, scale * s * c, scale * s * c, scale * s * s;
    return fi;
}

ParameterBound crb_scalar(double info, long n_copies) {
    require_copies(n_copies);
    if (std::isinf(info) && info > 0.0) {
        return {ParameterBound::Status::SingularLimit, 0.0};
    }
    if (!(info >= 0.0)) {
        throw std::invalid_argument("Fisher information must be non-negative");
    }
    if (info == 0.0) {
        return {ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()};
    }
    return {ParameterBound::Status::Bounded, 1.0 / (static_cast<double>(n_copies) * info)};
}

CrbResult crb(const Eigen::Matrix2d& info, long n_copies) {
    require_copies(n_copies);
    require_psd(info);
    const double n = static_cast<double>(n_copies);
    CrbResult out;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(info);
    const Eigen::Vector2d lambda = solver.eigenvalues();
    const double top = lambda.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * top;

    if (top == 0.0) {
        out.bounds = {ParameterBound{ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()},
                      ParameterBound{ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()}};
        return out;
    }
    if (lambda.minCoeff() > tol) {
        out.full_rank = true;
        const Eigen::Matrix2d cov = info.inverse() / n;
        out.covariance = cov;
        out.bounds = {ParameterBound{ParameterBound::Status::Bounded, cov(0, 0)},
                      ParameterBound{ParameterBound::Status::Bounded, cov(1, 1)}};
        return out;
    }

    // Rank one: eigenvalues ascend, so column 0 spans the null space.
    const Eigen::Vector2d null_vec = solver.eigenvectors().col(0);
    const Eigen::Vector2d range_vec = solver.eigenvectors().col(1);
    out.identifiable_direction = range_vec;
    out.direction_variance = 1.0 / (n * lambda[1]);
    for (int i = 0; i < 2; ++i) {
        auto& b = out.bounds[static_cast<std::size_t>(i)];
        if (std::abs(null_vec[i]) < 1e-9) {
            b = {ParameterBound::Status::Bounded, range_vec[i] * range_vec[i] / (n * lambda[1])};
        } else {
            b = {ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()};
        }
    }
    return out;
}

CrbResult crb(const QfiMatrix& info, long n_copies) {
    require_copies(n_copies);
    if (!info.gamma_divergent) {
        return crb(info.matrix(), n_copies);
    }
    // Diagonal with an infinite gamma entry: the two parameters decouple.
    CrbResult out;
    out.bounds = {crb_scalar(info.j_phi, n_copies), crb_scalar(info.j_gamma, n_copies)};
    return out;
}

CrbResult crb(const FiMatrix& info, long n_copies) {
    require_copies(n_copies);
    if (!info.divergent) {
        return crb(info.matrix, n_copies);
    }
    CrbResult out;
    out.identifiable_direction = Eigen::Vector2d(std::cos(info.delta), std::sin(info.delta));
    out.direction_variance = 0.0;
    out.bounds = {ParameterBound{ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()},
                  ParameterBound{ParameterBound::Status::Unidentifiable, std::numeric_limits<double>::infinity()}};
    // Aligned with one parameter axis: that parameter alone is pinned.
    for (int i = 0; i < 2; ++i) {
        if (std::abs((*out.identifiable_direction)[1 - i]) < 1e-12) {
            out.bounds[static_cast<std::size_t>(i)] = {ParameterBound::Status::SingularLimit, 0.0};
        }
    }
    return out;
}

}  // namespace qvlbi::estimation

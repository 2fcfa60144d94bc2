// Copyright 2026 The qptree Authors
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

#include "qptree/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qptree {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex v = m.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

void fix_phase(ComplexVector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double magnitude = std::abs(v(i));
        if (magnitude > 1e-12) {
            v *= std::conj(v(i)) / magnitude;
            // Exactly real after rotation.
            v(i) = Complex(magnitude, 0.0);
            return;
        }
    }
}

}  // namespace

UnitVector::UnitVector(double x, double y, double z) : x_(x), y_(y), z_(z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("UnitVector: non-finite component");
    }
    const double n2 = x * x + y * y + z * z;
    if (std::abs(n2 - 1.0) > tol::kNormalization) {
        throw std::invalid_argument("UnitVector: squared length " + std::to_string(n2) +
                                    " differs from 1");
    }
}

UnitVector UnitVector::normalized(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("UnitVector: non-finite component");
    }
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0.0) {
        throw std::invalid_argument("UnitVector: zero vector has no direction");
    }
    return UnitVector(x / n, y / n, z / n, Unchecked{});
}

UnitVector UnitVector::from_spherical_deg(double theta_deg, double phi_deg) {
    if (!std::isfinite(theta_deg) || !std::isfinite(phi_deg)) {
        throw std::invalid_argument("UnitVector: non-finite angle");
    }
    const double t = theta_deg * kDegToRad;
    const double p = phi_deg * kDegToRad;
    return UnitVector(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t), Unchecked{});
}

UnitVector UnitVector::in_xz_plane_deg(double theta_deg) { return from_spherical_deg(theta_deg, 0.0); }

double UnitVector::dot(const UnitVector &other) const {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
}

double UnitVector::angle_to(const UnitVector &other) const {
    return std::acos(std::clamp(dot(other), -1.0, 1.0));
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("StateVector: empty amplitude list");
    }
    if (!all_finite(amplitudes_)) {
        throw std::invalid_argument("StateVector: non-finite amplitude");
    }
    const double n2 = amplitudes_.squaredNorm();
    if (std::abs(n2 - 1.0) > tol::kNormalization) {
        throw std::invalid_argument("StateVector: squared norm " + std::to_string(n2) +
                                    " differs from 1");
    }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
    if (!all_finite(amplitudes)) {
        throw std::invalid_argument("StateVector: non-finite amplitude");
    }
    const double n = amplitudes.norm();
    if (n == 0.0) {
        throw std::invalid_argument("StateVector: zero vector cannot be normalized");
    }
    return StateVector(amplitudes / n);
}

StateVector StateVector::spin_up() { return StateVector(ComplexVector::Unit(2, 0)); }

StateVector StateVector::spin_down() { return StateVector(ComplexVector::Unit(2, 1)); }

StateVector StateVector::product(const StateVector &first, const StateVector &second) {
    const auto n1 = first.amplitudes_.size();
    const auto n2 = second.amplitudes_.size();
    ComplexVector out(n1 * n2);
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n2; ++j) {
            out(i * n2 + j) = first.amplitudes_(i) * second.amplitudes_(j);
        }
    }
    return StateVector::normalized(std::move(out));
}

StateVector StateVector::with_global_phase(double phase_rad) const {
    return StateVector(amplitudes_ * std::polar(1.0, phase_rad));
}

Observable::Observable(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("Observable: matrix must be square and nonempty");
    }
    if (!all_finite(entries_)) {
        throw std::invalid_argument("Observable: non-finite entry");
    }
    const double deviation = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (deviation > tol::kHermitian) {
        throw std::invalid_argument("Observable: matrix is not Hermitian (max |A - A^dagger| = " +
                                    std::to_string(deviation) + ")");
    }
}

Observable Observable::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Observable(ComplexMatrix::Identity(d, d));
}

Observable Observable::pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return Observable(m);
}

Observable Observable::pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return Observable(m);
}

Observable Observable::pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return Observable(m);
}

std::vector<double> EigenDecomposition::eigenvalues() const {
    std::vector<double> out;
    out.reserve(spaces.size());
    for (const auto &s : spaces) {
        out.push_back(s.eigenvalue);
    }
    return out;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    if (spaces.empty()) {
        return {};
    }
    ComplexMatrix out = ComplexMatrix::Zero(spaces[0].projector.rows(), spaces[0].projector.cols());
    for (const auto &s : spaces) {
        out += s.eigenvalue * s.projector;
    }
    return out;
}

Observable spin_operator(const UnitVector &n) {
    ComplexMatrix m(2, 2);
    m << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
    return Observable(m);
}

StateVector singlet_state() {
    const double r = 1.0 / std::numbers::sqrt2;
    ComplexVector v(4);
    v << 0.0, r, -r, 0.0;
    return StateVector(v);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Observable tensor(const Observable &a, const Observable &b) { return Observable(kron(a.matrix(), b.matrix())); }

double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    }
    return (a * b - b * a).norm();
}

EigenDecomposition eigendecompose(const Observable &observable) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(observable.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver did not converge");
    }
    // Eigen returns ascending order; walk backwards for descending.
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();
    const auto n = values.size();

    EigenDecomposition out;
    Eigen::Index k = n - 1;
    while (k >= 0) {
        Eigen::Index first = k;
        while (first - 1 >= 0 && values(k) - values(first - 1) < tol::kEigenvalueMerge) {
            --first;
        }
        Eigenspace space;
        double sum = 0.0;
        space.projector = ComplexMatrix::Zero(n, n);
        for (Eigen::Index j = k; j >= first; --j) {
            ComplexVector v = vectors.col(j);
            fix_phase(v);
            space.projector += v * v.adjoint();
            space.basis.push_back(std::move(v));
            sum += values(j);
        }
        space.eigenvalue = sum / static_cast<double>(k - first + 1);
        space.projector = 0.5 * (space.projector + space.projector.adjoint()).eval();
        out.spaces.push_back(std::move(space));
        k = first - 1;
    }
    return out;
}

double born_probability(const StateVector &state, const ComplexMatrix &projector) {
    const auto d = static_cast<Eigen::Index>(state.dim());
    if (projector.rows() != d || projector.cols() != d) {
        throw std::invalid_argument("born_probability: projector is " + std::to_string(projector.rows()) +
                                    "x" + std::to_string(projector.cols()) + " but state has dimension " +
                                    std::to_string(d));
    }
    if ((projector * projector - projector).norm() > tol::kProjector ||
        (projector - projector.adjoint()).norm() > tol::kProjector) {
        throw std::invalid_argument("born_probability: matrix is not an orthogonal projector");
    }
    const auto &psi = state.amplitudes();
    const double p = psi.dot(projector * psi).real();
    return std::clamp(p, 0.0, 1.0);
}

JointDistribution joint_outcome_distribution(const StateVector &state, const UnitVector &dir1,
                                             const UnitVector &dir2) {
    if (state.dim() != 4) {
        throw std::invalid_argument("joint_outcome_distribution: state dimension " +
                                    std::to_string(state.dim()) + " is not a two-particle system");
    }
    const auto first = eigendecompose(spin_operator(dir1));
    const auto second = eigendecompose(spin_operator(dir2));
    JointDistribution out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            out.p[i * 2 + j] =
                born_probability(state, kron(first.spaces[i].projector, second.spaces[j].projector));
        }
    }
    return out;
}

SchmidtResult schmidt(const StateVector &state) {
    if (state.dim() != 4) {
        throw std::invalid_argument("schmidt: state dimension " + std::to_string(state.dim()) +
                                    " is not a 2x2 bipartite system");
    }
    Eigen::Matrix2cd reshaped;
    reshaped << state[0], state[1], state[2], state[3];
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(reshaped);
    const auto &s = svd.singularValues();
    SchmidtResult out;
    out.singular_values = {s(0), s(1)};
    out.rank = s(1) < tol::kSchmidt ? 1 : 2;
    out.is_product = out.rank == 1;
    return out;
}

}  // namespace qptree

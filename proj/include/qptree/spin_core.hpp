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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

/// Small-dimension complex linear algebra for spin-1/2 systems.
///
/// Everything here is a value type that is validated once at construction and
/// never mutated afterwards. Dimensions are 2 (one particle) or 4 (two
/// particles, basis order ++, +-, -+, --, first factor = particle 1).
namespace qptree {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kNormalization = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kProjector = 1e-10;
inline constexpr double kCommutator = 1e-10;
inline constexpr double kEigenvalueMerge = 1e-9;
inline constexpr double kSchmidt = 1e-10;
inline constexpr double kLawTotal = 1e-12;
}  // namespace tol

/// A direction in real 3-space with unit length.
class UnitVector {
   public:
    /// Checked constructor; throws std::invalid_argument unless
    /// x^2 + y^2 + z^2 = 1 within 1e-12.
    UnitVector(double x, double y, double z);

    /// Rescales (x, y, z) to unit length. Throws on a zero or non-finite vector.
    static UnitVector normalized(double x, double y, double z);
    /// Polar angle theta from +z, azimuth phi from +x, both in degrees.
    static UnitVector from_spherical_deg(double theta_deg, double phi_deg);
    /// Direction at angle theta (degrees) from +z inside the x-z plane.
    static UnitVector in_xz_plane_deg(double theta_deg);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    double dot(const UnitVector &other) const;
    /// Angle to `other` in radians, in [0, pi].
    double angle_to(const UnitVector &other) const;

   private:
    struct Unchecked {};
    UnitVector(double x, double y, double z, Unchecked) : x_(x), y_(y), z_(z) {}
    double x_;
    double y_;
    double z_;
};

/// Normalized pure state over a tensor-product outcome basis.
class StateVector {
   public:
    /// Throws std::invalid_argument on non-finite amplitudes or when
    /// sum |a_i|^2 differs from 1 by more than 1e-12.
    explicit StateVector(ComplexVector amplitudes);
    static StateVector normalized(ComplexVector amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
    double norm_squared() const { return amplitudes_.squaredNorm(); }

    /// Single-particle eigenstates of sigma_z.
    static StateVector spin_up();
    static StateVector spin_down();
    /// Tensor product, first argument is the first factor.
    static StateVector product(const StateVector &first, const StateVector &second);
    StateVector with_global_phase(double phase_rad) const;

   private:
    ComplexVector amplitudes_;
};

/// Hermitian matrix.
class Observable {
   public:
    /// Throws std::invalid_argument unless square, finite and Hermitian within 1e-12.
    explicit Observable(ComplexMatrix entries);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix &matrix() const { return entries_; }

    static Observable identity(std::size_t dim);
    static Observable pauli_x();
    static Observable pauli_y();
    static Observable pauli_z();

   private:
    ComplexMatrix entries_;
};

/// One eigenspace: the eigenvalue, its projector and a gauge-fixed orthonormal
/// basis (first nonzero component of each vector real and nonnegative).
struct Eigenspace {
    double eigenvalue;
    ComplexMatrix projector;
    std::vector<ComplexVector> basis;
};

/// Spectral decomposition with distinct eigenvalues in descending order.
struct EigenDecomposition {
    std::vector<Eigenspace> spaces;

    std::vector<double> eigenvalues() const;
    ComplexMatrix reconstruct() const;
};

/// n . (sigma_x, sigma_y, sigma_z), eigenvalues +1 and -1.
Observable spin_operator(const UnitVector &n);

/// (|+-> - |-+>) / sqrt(2).
StateVector singlet_state();

/// Kronecker product A (x) B.
Observable tensor(const Observable &a, const Observable &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Frobenius norm of AB - BA.
double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigenvalues closer than 1e-9 are merged into one eigenspace.
EigenDecomposition eigendecompose(const Observable &observable);

/// <psi|P|psi>, clamped to [0, 1]. Throws std::invalid_argument on a dimension
/// mismatch or when P is not an idempotent Hermitian matrix within 1e-10.
double born_probability(const StateVector &state, const ComplexMatrix &projector);

enum class Sign : int { kPlus = 0, kMinus = 1 };

/// Joint two-particle outcome law, indexed in basis order (++, +-, -+, --).
struct JointDistribution {
    std::array<double, 4> p{};

    double at(Sign first, Sign second) const {
        return p[static_cast<std::size_t>(first) * 2 + static_cast<std::size_t>(second)];
    }
    double total() const { return p[0] + p[1] + p[2] + p[3]; }
};

/// Outcome law of measuring particle 1 along dir1 and particle 2 along dir2.
JointDistribution joint_outcome_distribution(const StateVector &state, const UnitVector &dir1,
                                             const UnitVector &dir2);

struct SchmidtResult {
    bool is_product;
    int rank;
    std::array<double, 2> singular_values;
};

/// Schmidt decomposition of a 2x2 bipartite pure state. Throws
/// std::invalid_argument when dim != 4.
SchmidtResult schmidt(const StateVector &state);
inline bool is_product_state(const StateVector &state) { return schmidt(state).is_product; }

}  // namespace qptree

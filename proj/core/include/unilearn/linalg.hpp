// Copyright 2026 The unilearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace unilearn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Unitarity tolerance on the max-entry norm of U^dagger U - I.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Hermiticity, trace and positivity tolerance for density matrices.
inline constexpr double kDensityTolerance = 1e-10;

double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kDensityTolerance);

/// Number of qubits n for a dimension 2^n; throws DimensionError otherwise.
int qubit_count(Eigen::Index dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
ComplexMatrix H();
} // namespace pauli

/// Embeds a 2x2 operator acting on `qubit` (1-based, qubit 1 most significant)
/// into an n-qubit space.
ComplexMatrix embed(const ComplexMatrix& local, int qubit, int n);

class UnitaryMatrix {
  public:
    /// Validates unitarity to kUnitaryTolerance; throws ValidationError.
    explicit UnitaryMatrix(ComplexMatrix m);

    static UnitaryMatrix identity(Eigen::Index dim);

    Eigen::Index dim() const { return m_.rows(); }
    int num_qubits() const { return qubit_count(dim()); }
    const ComplexMatrix& matrix() const { return m_; }

    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

  private:
    ComplexMatrix m_;
};

/// Max-entry norm of U^dagger U - I.
double unitarity_defect(const ComplexMatrix& u);

class DensityMatrix {
  public:
    /// Validates Hermiticity, unit trace and positivity; throws ValidationError.
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix from_pure(const ComplexVector& psi);
    static DensityMatrix basis_projector(Eigen::Index dim, Eigen::Index index);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return m_.rows(); }
    int num_qubits() const { return qubit_count(dim()); }
    const ComplexMatrix& matrix() const { return m_; }

    /// U rho U^dagger.
    DensityMatrix conjugated(const UnitaryMatrix& u) const;
    DensityMatrix tensor(const DensityMatrix& rhs) const;

    double purity() const;

  private:
    ComplexMatrix m_;
};

struct HermitianEigen {
    RealVector values;     // ascending
    UnitaryMatrix vectors; // columns are eigenvectors
};

/// Eigendecomposition m = Q diag(values) Q^dagger of a Hermitian matrix.
HermitianEigen herm_eig(const ComplexMatrix& m);

/// Ascending eigenvalues only; skips the Hermiticity check.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// e^{-i h t} for Hermitian h.
UnitaryMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t);

} // namespace unilearn

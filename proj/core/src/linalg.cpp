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

#include "unilearn/linalg.hpp"

#include <cmath>
#include <string>

#include "unilearn/error.hpp"

namespace unilearn {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m - m.adjoint()) <= tol;
}

int qubit_count(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) + " is not 2^n with n >= 1");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (const auto& f : factors) {
        out = kron(out, f);
    }
    return out;
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix X() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix Y() {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMatrix Z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix H() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << s, s, s, -s;
    return m;
}
} // namespace pauli

ComplexMatrix embed(const ComplexMatrix& local, int qubit, int n) {
    if (qubit < 1 || qubit > n) {
        throw DimensionError("qubit index " + std::to_string(qubit) + " outside 1.." + std::to_string(n));
    }
    const Eigen::Index left = Eigen::Index{1} << (qubit - 1);
    const Eigen::Index right = Eigen::Index{1} << (n - qubit);
    return kron(kron(ComplexMatrix::Identity(left, left), local), ComplexMatrix::Identity(right, right));
}

double unitarity_defect(const ComplexMatrix& u) {
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("unitary matrix must be square and nonempty");
    }
    if (!all_finite(m_)) {
        throw ValidationError("unitary matrix has non-finite entries");
    }
    const double defect = unitarity_defect(m_);
    if (!(defect < kUnitaryTolerance)) {
        throw ValidationError("matrix is not unitary (max |U^dagger U - I| = " + std::to_string(defect) + ")");
    }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
    return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint()); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
    if (dim() != rhs.dim()) {
        throw DimensionError("unitary product dimension mismatch");
    }
    return UnitaryMatrix(m_ * rhs.m_);
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("density matrix must be square and nonempty");
    }
    if (!all_finite(m_)) {
        throw ValidationError("density matrix has non-finite entries");
    }
    if (!is_hermitian(m_, kDensityTolerance)) {
        throw ValidationError("density matrix is not Hermitian");
    }
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kDensityTolerance) {
        throw ValidationError("density matrix trace " + std::to_string(tr) + " != 1");
    }
    // Symmetrize away sub-tolerance anti-Hermitian noise before the spectrum check.
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
    const double min_eig = hermitian_eigenvalues(m_)(0);
    if (min_eig < -kDensityTolerance) {
        throw ValidationError("density matrix has negative eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
        throw ValidationError("cannot build a pure state from a zero vector");
    }
    const ComplexVector v = psi / norm;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_projector(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw DimensionError("basis index out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::conjugated(const UnitaryMatrix& u) const {
    if (u.dim() != dim()) {
        throw DimensionError("unitary and density matrix dimensions differ");
    }
    return DensityMatrix(u.matrix() * m_ * u.matrix().adjoint());
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& rhs) const {
    return DensityMatrix(kron(m_, rhs.m_));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

HermitianEigen herm_eig(const ComplexMatrix& m) {
    if (!is_hermitian(m, kDensityTolerance)) {
        throw ValidationError("herm_eig requires a Hermitian matrix");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return HermitianEigen{solver.eigenvalues(), UnitaryMatrix(solver.eigenvectors())};
}

UnitaryMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t) {
    const HermitianEigen eig = herm_eig(h);
    const ComplexMatrix& q = eig.vectors.matrix();
    ComplexVector phases(eig.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(-kI * (eig.values(i) * t));
    }
    return UnitaryMatrix(q * phases.asDiagonal() * q.adjoint());
}

} // namespace unilearn

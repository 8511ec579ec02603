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

#include "unilearn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "unilearn/error.hpp"

namespace unilearn {

namespace {
void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch");
    }
}
} // namespace

double trace_norm_hermitian(const ComplexMatrix& m) {
    return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
    const double d = 0.5 * trace_norm_hermitian(rho.matrix() - sigma.matrix());
    return std::clamp(d, 0.0, 1.0);
}

double hs_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "hs_distance_sq");
    return (rho.matrix() - sigma.matrix()).squaredNorm();
}

double trace_overlap(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    require_same_dim(u.dim(), v.dim(), "trace_overlap");
    // tr(U^dagger V) = sum_ij conj(U_ij) V_ij
    return std::abs(u.matrix().cwiseProduct(v.matrix().conjugate()).sum());
}

double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    const double f = trace_overlap(u, v) / static_cast<double>(u.dim());
    return std::min(f, 1.0);
}

} // namespace unilearn

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

#include "unilearn/grover.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unilearn/error.hpp"

namespace unilearn {

void OracleSpec::validate() const {
    if (n < 1 || n > 16) {
        throw ValidationError("oracle qubit count must be in 1..16");
    }
    if (marked.empty()) {
        throw ValidationError("oracle needs at least one marked element");
    }
    const long long dim = 1LL << n;
    for (const long long x : marked) {
        if (x < 0 || x >= dim) {
            throw ValidationError("marked index " + std::to_string(x) + " outside [0, 2^n)");
        }
    }
}

UnitaryMatrix phase_oracle(const OracleSpec& spec) {
    spec.validate();
    const Eigen::Index dim = Eigen::Index{1} << spec.n;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (const long long x : spec.marked) {
        m(x, x) = -1.0;
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix binary_oracle(const OracleSpec& spec) {
    spec.validate();
    const Eigen::Index dim = Eigen::Index{1} << (spec.n + 1);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < (dim >> 1); ++x) {
        const bool flip = spec.marked.contains(x);
        for (Eigen::Index y = 0; y < 2; ++y) {
            const Eigen::Index in = 2 * x + y;
            const Eigen::Index out = 2 * x + (flip ? 1 - y : y);
            m(out, in) = 1.0;
        }
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix diffusion(int n) {
    if (n < 1 || n > 16) {
        throw ValidationError("diffusion qubit count must be in 1..16");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    const ComplexMatrix psi = ComplexMatrix::Constant(dim, 1, 1.0 / std::sqrt(static_cast<double>(dim)));
    return UnitaryMatrix(2.0 * psi * psi.adjoint() - ComplexMatrix::Identity(dim, dim));
}

int grover_iterations(int n) {
    if (n < 2) {
        throw ValidationError("grover_iterations needs n >= 2");
    }
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(1LL << n))));
}

double grover_success(const OracleSpec& spec, const UnitaryMatrix& oracle, int k) {
    spec.validate();
    const Eigen::Index dim = Eigen::Index{1} << spec.n;
    if (oracle.dim() != dim) {
        throw DimensionError("grover_success: oracle dimension does not match n");
    }
    if (k < 0) {
        throw ValidationError("grover_success: negative iteration count");
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexVector state = ComplexVector::Constant(dim, amp);
    for (int i = 0; i < k; ++i) {
        state = oracle.matrix() * state;
        // D = 2|Psi><Psi| - I acts as reflection about the mean amplitude.
        const Complex mean = state.sum() / static_cast<double>(dim);
        state = (2.0 * mean) * ComplexVector::Ones(dim) - state;
    }
    double p = 0.0;
    for (const long long x : spec.marked) {
        p += std::norm(state(x));
    }
    return p;
}

double compiled_grover(const OracleSpec& spec, const Circuit& learned_oracle, int k) {
    if (learned_oracle.num_qubits() != spec.n) {
        throw DimensionError("compiled_grover: oracle circuit acts on the wrong number of qubits");
    }
    return grover_success(spec, circuit_unitary(learned_oracle), k);
}

} // namespace unilearn

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

#include <string>
#include <vector>

#include "unilearn/circuit.hpp"
#include "unilearn/random.hpp"

namespace unilearn {

/// Periodic 1D Heisenberg ring H = sum_j (X_j X_{j+1} + Y_j Y_{j+1} + Z_j Z_{j+1} + h_j Z_j).
struct HeisenbergSpec {
    int n = 3;
    std::vector<double> h;

    void validate() const;
    /// h_j uniform on [lo, hi] from stream "heisenberg-h" of `seed`.
    static HeisenbergSpec random(int n, std::uint64_t seed, double lo = 0.0, double hi = 1.0);
};

ComplexMatrix heisenberg_hamiltonian(const HeisenbergSpec& spec);
UnitaryMatrix exact_evolution(const HeisenbergSpec& spec, double t);

/// Two-qubit circuit for exp(-i angle (XX + YY + ZZ)) with three CNOTs and
/// five single-qubit rotations; the global phase is carried on the circuit.
Circuit decompose_bond_exponential(double angle);

enum class BondForm {
    Elementary, // bond exponentials decomposed into CNOT + rotations
    Fixed,      // bond exponentials as exact FIXED 4x4 gates
};

/// Term order of one forward half-step: bonds (1,2), ..., (n,1), then fields Z_1 .. Z_n.
std::vector<std::string> trotter_term_order(int n);

/// [S2(t/r)]^r with S2(dt) = forward half-steps of every term at dt/2
/// followed by the same terms in reverse order.
Circuit trotter2_circuit(const HeisenbergSpec& spec, double t, int r, BondForm form = BondForm::Elementary);

struct TrotterPlan {
    HeisenbergSpec spec;
    double t = 0.0;
    int r = 0;
    double target_fidelity = 0.0;
    std::vector<std::string> term_order;
    double achieved_fidelity = 0.0;
    Circuit circuit{1};
    CountReport counts;
};

/// Smallest step count found by doubling then bisection such that
/// gate_fidelity(trotter2_circuit, exact_evolution) >= target_fidelity.
/// Throws NumericalError if r would exceed max_steps.
TrotterPlan plan_to_fidelity(const HeisenbergSpec& spec, double t, double target_fidelity = 1.0 - 1e-3,
                             int max_steps = 1'000'000);

Json heisenberg_to_json(const HeisenbergSpec& spec);
Json plan_to_json(const TrotterPlan& plan, bool include_circuit = false);

} // namespace unilearn

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

#include <set>

#include "unilearn/circuit.hpp"

namespace unilearn {

struct OracleSpec {
    int n = 3;
    std::set<long long> marked; // basis indices, qubit 1 most significant

    void validate() const;
};

/// diag((-1)^{f(x)}).
UnitaryMatrix phase_oracle(const OracleSpec& spec);

/// |x>|y> -> |x>|y xor f(x)> on n + 1 qubits; the ancilla y is the last qubit.
UnitaryMatrix binary_oracle(const OracleSpec& spec);

/// 2|Psi><Psi| - I with |Psi> = |+>^{(x)n}.
UnitaryMatrix diffusion(int n);

/// floor(pi/4 * sqrt(2^n)).
int grover_iterations(int n);

/// Probability of measuring a marked index after k applications of
/// D * oracle to |Psi>, by statevector simulation.
double grover_success(const OracleSpec& spec, const UnitaryMatrix& oracle, int k);

/// grover_success with the oracle replaced by circuit_unitary(learned_oracle).
double compiled_grover(const OracleSpec& spec, const Circuit& learned_oracle, int k);

} // namespace unilearn

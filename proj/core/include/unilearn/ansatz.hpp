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

#include <span>

#include "unilearn/circuit.hpp"

namespace unilearn {

/// Direction of every CNOT in the entangling ring.
enum class RingOrientation {
    Forward, // (1,2), (2,3), ..., (n,1)
    Reverse, // (2,1), (3,2), ..., (1,n)
};

/// Layered hardware-efficient ansatz: each layer is a U3 on every qubit
/// (qubit order 1..n) followed by a periodic ring of CNOTs. A single-qubit
/// ansatz (n = 1) has no entangling ring.
struct AnsatzSpec {
    int n = 3;
    int d = 8;
    RingOrientation orientation = RingOrientation::Forward;

    std::size_t num_parameters() const { return static_cast<std::size_t>(3 * n * d); }
    void validate() const;
};

/// Parameters are laid out layer-major, then qubit, then (theta, phi, lambda).
Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> params);

/// Layer counts used for the Hamiltonian-simulation experiments: 8, 25, 100
/// for n = 3, 4, 5; other sizes fall back to ceil(4^n / (3n)).
int default_layers(int n);

} // namespace unilearn

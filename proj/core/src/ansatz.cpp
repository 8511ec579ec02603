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

#include "unilearn/ansatz.hpp"

#include <string>

#include "unilearn/error.hpp"

namespace unilearn {

void AnsatzSpec::validate() const {
    if (n < 1) {
        throw ValidationError("ansatz needs n >= 1 qubits");
    }
    if (d < 1) {
        throw ValidationError("ansatz needs d >= 1 layers");
    }
}

Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> params) {
    spec.validate();
    if (params.size() != spec.num_parameters()) {
        throw DimensionError("ansatz(" + std::to_string(spec.n) + "," + std::to_string(spec.d) + ") expects " +
                             std::to_string(spec.num_parameters()) + " parameters, got " +
                             std::to_string(params.size()));
    }
    Circuit c(spec.n);
    std::size_t k = 0;
    for (int layer = 0; layer < spec.d; ++layer) {
        for (int q = 1; q <= spec.n; ++q) {
            c.add_trainable(Gate::u3(q, params[k], params[k + 1], params[k + 2]));
            k += 3;
        }
        for (int q = 1; q <= spec.n && spec.n >= 2; ++q) {
            const int next = q == spec.n ? 1 : q + 1;
            if (spec.orientation == RingOrientation::Forward) {
                c.add(Gate::cnot(q, next));
            } else {
                c.add(Gate::cnot(next, q));
            }
        }
    }
    c.meta()["ansatz"] = {
        {"n", spec.n},
        {"d", spec.d},
        {"layer_order", "U3 on qubits 1..n, then CNOT ring in index order"},
        {"ring", spec.orientation == RingOrientation::Forward ? "i->i+1" : "i+1->i"},
    };
    return c;
}

int default_layers(int n) {
    switch (n) {
    case 3:
        return 8;
    case 4:
        return 25;
    case 5:
        return 100;
    default: {
        if (n < 1) {
            throw ValidationError("ansatz needs n >= 1 qubits");
        }
        const long long dim_sq = 1LL << (2 * n);
        return static_cast<int>((dim_sq + 3 * n - 1) / (3 * n));
    }
    }
}

} // namespace unilearn

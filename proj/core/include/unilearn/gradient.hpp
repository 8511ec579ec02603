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
#include <vector>

#include "unilearn/circuit.hpp"
#include "unilearn/risk.hpp"

namespace unilearn {

/// Raw input/label matrices of a dataset, for the inner training loop.
struct DatasetMatrices {
    std::vector<ComplexMatrix> inputs;
    std::vector<ComplexMatrix> labels;

    static DatasetMatrices from(const Dataset& d);
};

struct RiskGradient {
    double value = 0.0;
    std::vector<double> gradient; // one entry per trainable slot of the circuit
    ComplexMatrix model;          // circuit matrix at the evaluated parameters
};

/// Empirical risk and its exact gradient with respect to the circuit's
/// trainable slots, by one forward pass and one reverse sweep over the gates.
///
/// With D_j = L_j - V rho_j V^dagger, the risk differential is
/// Re tr(dV M), M = (1/t) sum_j c_j rho_j V^dagger A_j, where A_j = sign(D_j)
/// and c_j = -||D_j||_1 for TRACE_SQ, A_j = D_j and c_j = -4 for HS_SQ.
/// Eigenvalues of D_j with |lambda| <= 1e-13 take sign 0.
RiskGradient empirical_risk_gradient(const Circuit& model, const DatasetMatrices& data, LossKind kind);

/// Empirical risk only, on raw matrices.
double empirical_risk_value(const ComplexMatrix& model, const DatasetMatrices& data, LossKind kind);

} // namespace unilearn

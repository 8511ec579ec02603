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

#include "unilearn/gradient.hpp"

#include <cmath>
#include <map>

#include "unilearn/error.hpp"

namespace unilearn {

DatasetMatrices DatasetMatrices::from(const Dataset& d) {
    DatasetMatrices out;
    out.inputs.reserve(d.pairs.size());
    out.labels.reserve(d.pairs.size());
    for (const auto& p : d.pairs) {
        out.inputs.push_back(p.input.matrix());
        out.labels.push_back(p.label.matrix());
    }
    return out;
}

double empirical_risk_value(const ComplexMatrix& model, const DatasetMatrices& data, LossKind kind) {
    if (data.inputs.empty()) {
        throw ValidationError("empirical risk of an empty dataset");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < data.inputs.size(); ++j) {
        total += loss_raw(kind, data.labels[j], model * data.inputs[j] * model.adjoint());
    }
    return total / static_cast<double>(data.inputs.size());
}

RiskGradient empirical_risk_gradient(const Circuit& model, const DatasetMatrices& data, LossKind kind) {
    if (data.inputs.empty()) {
        throw ValidationError("empirical risk of an empty dataset");
    }
    const int n = model.num_qubits();
    const Eigen::Index dim = model.dim();
    constexpr double kSignCutoff = 1e-13;

    RiskGradient out;
    out.model = circuit_matrix(model);
    const ComplexMatrix& v = out.model;
    const ComplexMatrix v_adj = v.adjoint();
    const double inv_t = 1.0 / static_cast<double>(data.inputs.size());

    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    double total = 0.0;
    for (std::size_t j = 0; j < data.inputs.size(); ++j) {
        const ComplexMatrix& rho = data.inputs[j];
        if (rho.rows() != dim) {
            throw DimensionError("empirical_risk_gradient: model and data dimensions differ");
        }
        ComplexMatrix diff = data.labels[j] - v * rho * v_adj;
        diff = 0.5 * (diff + diff.adjoint()).eval();
        if (kind == LossKind::HS_SQ) {
            total += diff.squaredNorm();
            m.noalias() += (-4.0) * (rho * v_adj * diff);
            continue;
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(diff);
        if (eig.info() != Eigen::Success) {
            throw NumericalError("eigensolver failed in risk gradient");
        }
        const RealVector& lambda = eig.eigenvalues();
        const double half_norm = 0.5 * lambda.cwiseAbs().sum();
        total += half_norm * half_norm;
        RealVector sign(lambda.size());
        for (Eigen::Index k = 0; k < lambda.size(); ++k) {
            sign(k) = lambda(k) > kSignCutoff ? 1.0 : (lambda(k) < -kSignCutoff ? -1.0 : 0.0);
        }
        const ComplexMatrix& q = eig.eigenvectors();
        const ComplexMatrix sign_d = q * sign.cast<Complex>().asDiagonal() * q.adjoint();
        m.noalias() += (-2.0 * half_norm) * (rho * v_adj * sign_d);
    }
    out.value = total * inv_t;
    m *= inv_t;
    if (!std::isfinite(out.value)) {
        throw NumericalError("empirical risk is not finite");
    }

    // Slots grouped by gate so each gate's reduced block is visited once.
    std::multimap<std::size_t, std::pair<std::size_t, std::size_t>> slots_by_gate;
    const auto& refs = model.param_refs();
    for (std::size_t s = 0; s < refs.size(); ++s) {
        slots_by_gate.emplace(refs[s].gate, std::make_pair(s, refs[s].angle));
    }
    out.gradient.assign(refs.size(), 0.0);

    // C_k = P_{k-1} (M V) P_{k-1}^dagger with P_k the product of the first k
    // gates; d risk / d theta = Re tr(G_k^dagger dG_k C_k).
    ComplexMatrix c = m * v;
    const auto& gates = model.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const Gate& g = gates[k];
        auto [lo, hi] = slots_by_gate.equal_range(k);
        if (lo != hi) {
            const ComplexMatrix g_adj = g.local_matrix().adjoint();
            for (auto it = lo; it != hi; ++it) {
                const ComplexMatrix local = g_adj * g.local_derivative(it->second.second);
                out.gradient[it->second.first] += trace_with_local(c, local, g.qubits, n).real();
            }
        }
        apply_gate_left(c, g, n);
        apply_gate_right_adjoint(c, g, n);
    }
    return out;
}

} // namespace unilearn

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

#include "unilearn/risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unilearn/error.hpp"
#include "unilearn/metrics.hpp"

namespace unilearn {

std::string_view to_string(LossKind k) { return k == LossKind::TRACE_SQ ? "TRACE_SQ" : "HS_SQ"; }

LossKind loss_kind_from_string(std::string_view name) {
    if (name == "TRACE_SQ") {
        return LossKind::TRACE_SQ;
    }
    if (name == "HS_SQ") {
        return LossKind::HS_SQ;
    }
    throw ValidationError("unknown loss '" + std::string(name) + "' (expected TRACE_SQ or HS_SQ)");
}

double loss_trace_sq(const DensityMatrix& a, const DensityMatrix& b) {
    const double d = trace_distance(a, b);
    return d * d;
}

double loss(LossKind kind, const DensityMatrix& a, const DensityMatrix& b) {
    return kind == LossKind::TRACE_SQ ? loss_trace_sq(a, b) : hs_distance_sq(a, b);
}

double loss_raw(LossKind kind, const ComplexMatrix& label, const ComplexMatrix& output) {
    const ComplexMatrix diff = label - output;
    if (kind == LossKind::HS_SQ) {
        return diff.squaredNorm();
    }
    const double d = std::min(0.5 * trace_norm_hermitian(diff), 1.0);
    return d * d;
}

double empirical_risk(const UnitaryMatrix& model, const Dataset& data, LossKind kind) {
    if (data.pairs.empty()) {
        throw ValidationError("empirical_risk: empty dataset");
    }
    const ComplexMatrix& v = model.matrix();
    double total = 0.0;
    for (const auto& p : data.pairs) {
        if (p.input.dim() != model.dim()) {
            throw DimensionError("empirical_risk: model and data dimensions differ");
        }
        total += loss_raw(kind, p.label.matrix(), v * p.input.matrix() * v.adjoint());
    }
    return total / static_cast<double>(data.pairs.size());
}

double empirical_risk(const Circuit& model, const Dataset& data, LossKind kind) {
    if (data.pairs.empty()) {
        throw ValidationError("empirical_risk: empty dataset");
    }
    return empirical_risk(circuit_unitary(model), data, kind);
}

double quantum_risk_from_overlap(double trace_overlap, double dim) {
    return 1.0 - (dim + trace_overlap * trace_overlap) / (dim * (dim + 1.0));
}

QuantumRisk quantum_risk(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    if (u.dim() != v.dim()) {
        throw DimensionError("quantum_risk: dimension mismatch");
    }
    const double overlap = trace_overlap(u, v);
    return {quantum_risk_from_overlap(overlap, static_cast<double>(u.dim())), overlap};
}

MonteCarloEstimate quantum_risk_mc(const UnitaryMatrix& u, const UnitaryMatrix& v, std::size_t samples,
                                   const RngStream& rng) {
    if (samples < 1) {
        throw ValidationError("quantum_risk_mc needs at least one sample");
    }
    if (u.dim() != v.dim()) {
        throw DimensionError("quantum_risk_mc: dimension mismatch");
    }
    const int n = u.num_qubits();
    // For pure inputs the squared trace distance is 1 - |<psi|U^dagger V|psi>|^2.
    const ComplexMatrix w = u.matrix().adjoint() * v.matrix();
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        RngStream sample_rng = rng.split("sample-" + std::to_string(i));
        const ComplexVector psi = haar_state_vector(n, sample_rng);
        const double fid = std::norm(psi.dot(w * psi));
        const double x = std::clamp(1.0 - fid, 0.0, 1.0);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    MonteCarloEstimate est;
    est.estimate = mean;
    est.samples = samples;
    est.std_error = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0.0;
    return est;
}

double prop1_bound(long long dim, long long t) {
    if (dim < 1 || 2 * t < dim || t > dim) {
        throw ValidationError("prop1_bound requires N/2 <= t <= N");
    }
    const double N = static_cast<double>(dim);
    const double excess = static_cast<double>(2 * t - dim);
    return 1.0 - (N + excess * excess) / (N * (N + 1.0));
}

namespace {
UnitaryMatrix times_sign_diagonal(const ComplexMatrix& u, Eigen::Index plus_count) {
    ComplexMatrix v = u;
    for (Eigen::Index j = plus_count; j < u.cols(); ++j) {
        v.col(j) = -v.col(j);
    }
    return UnitaryMatrix(std::move(v));
}
} // namespace

UnitaryMatrix worst_case_orthobasis(const UnitaryMatrix& u) {
    if (u.dim() % 2 != 0) {
        throw DimensionError("worst_case_orthobasis requires an even dimension");
    }
    return times_sign_diagonal(u.matrix(), u.dim() / 2);
}

UnitaryMatrix worst_case_subspace(const UnitaryMatrix& u, long long t) {
    if (2 * t < u.dim() || t > u.dim()) {
        throw ValidationError("worst_case_subspace requires N/2 <= t <= N");
    }
    return times_sign_diagonal(u.matrix(), static_cast<Eigen::Index>(t));
}

UnitaryMatrix worst_case_commuting(const DensityMatrix& rho) {
    if (rho.dim() % 2 != 0) {
        throw DimensionError("worst_case_commuting requires an even dimension");
    }
    const ComplexMatrix q = herm_eig(rho.matrix()).vectors.matrix();
    RealVector signs = RealVector::Ones(rho.dim());
    signs.tail(rho.dim() / 2).setConstant(-1.0);
    return UnitaryMatrix(q * signs.cast<Complex>().asDiagonal() * q.adjoint());
}

RiskReport make_risk_report(const UnitaryMatrix& target, const UnitaryMatrix& model, const Dataset& data,
                            LossKind kind) {
    RiskReport r;
    r.loss = kind;
    r.empirical_risk = empirical_risk(model, data, kind);
    const QuantumRisk q = quantum_risk(target, model);
    r.quantum_risk_closed = q.risk;
    r.trace_overlap = q.trace_overlap;
    r.dim = static_cast<int>(target.dim());
    return r;
}

Json risk_report_to_json(const RiskReport& r) {
    Json j{{"loss", std::string(to_string(r.loss))},
           {"dim", r.dim},
           {"empirical_risk", r.empirical_risk},
           {"quantum_risk_closed", r.quantum_risk_closed},
           {"trace_overlap", r.trace_overlap}};
    if (r.quantum_risk_mc) {
        j["quantum_risk_mc"] = {{"estimate", r.quantum_risk_mc->estimate},
                                {"std_error", r.quantum_risk_mc->std_error},
                                {"samples", r.quantum_risk_mc->samples}};
    } else {
        j["quantum_risk_mc"] = nullptr;
    }
    return j;
}

} // namespace unilearn

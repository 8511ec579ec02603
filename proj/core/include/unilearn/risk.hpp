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

#include <cstddef>
#include <optional>
#include <string_view>

#include "unilearn/circuit.hpp"
#include "unilearn/datasets.hpp"
#include "unilearn/linalg.hpp"
#include "unilearn/random.hpp"
#include "unilearn/serialize.hpp"

namespace unilearn {

enum class LossKind {
    TRACE_SQ, // (1/2 ||a - b||_1)^2
    HS_SQ,    // tr[(a - b)^2]
};

std::string_view to_string(LossKind k);
LossKind loss_kind_from_string(std::string_view name);

/// Squared normalized trace distance, in [0, 1].
double loss_trace_sq(const DensityMatrix& a, const DensityMatrix& b);
double loss(LossKind kind, const DensityMatrix& a, const DensityMatrix& b);

/// Loss between a label and V rho V^dagger on raw matrices (no validation).
double loss_raw(LossKind kind, const ComplexMatrix& label, const ComplexMatrix& output);

/// (1/t) sum_j loss(label_j, V rho_j V^dagger) with V the model circuit.
double empirical_risk(const Circuit& model, const Dataset& data, LossKind kind = LossKind::TRACE_SQ);
double empirical_risk(const UnitaryMatrix& model, const Dataset& data, LossKind kind = LossKind::TRACE_SQ);

struct QuantumRisk {
    double risk = 0.0;
    double trace_overlap = 0.0; // |tr(U^dagger V)|
};

/// Haar-averaged squared trace distance, 1 - (N + |tr U^dagger V|^2) / (N (N + 1)).
QuantumRisk quantum_risk(const UnitaryMatrix& u, const UnitaryMatrix& v);
double quantum_risk_from_overlap(double trace_overlap, double dim);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Mean of loss_trace_sq over Haar-random pure inputs. Sample i draws from
/// rng.split("sample-i"), so results do not depend on any sharding.
MonteCarloEstimate quantum_risk_mc(const UnitaryMatrix& u, const UnitaryMatrix& v, std::size_t samples,
                                   const RngStream& rng);

/// Upper bound 1 - (N + (2t - N)^2) / (N (N + 1)) for N/2 <= t <= N.
double prop1_bound(long long dim, long long t);

/// U diag(+1 x N/2, -1 x N/2): zero loss on every basis projector, zero trace overlap.
UnitaryMatrix worst_case_orthobasis(const UnitaryMatrix& u);

/// U diag(+1 x t, -1 x (N - t)): agrees with U on the first t basis directions.
UnitaryMatrix worst_case_subspace(const UnitaryMatrix& u, long long t);

/// Q diag(+1 x N/2, -1 x N/2) Q^dagger with Q the eigenbasis of rho; commutes with rho, traceless.
UnitaryMatrix worst_case_commuting(const DensityMatrix& rho);

struct RiskReport {
    LossKind loss = LossKind::TRACE_SQ;
    double empirical_risk = 0.0;
    double quantum_risk_closed = 0.0;
    std::optional<MonteCarloEstimate> quantum_risk_mc;
    double trace_overlap = 0.0;
    int dim = 0;
};

RiskReport make_risk_report(const UnitaryMatrix& target, const UnitaryMatrix& model, const Dataset& data,
                            LossKind kind = LossKind::TRACE_SQ);
Json risk_report_to_json(const RiskReport& r);

} // namespace unilearn

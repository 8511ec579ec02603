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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "unilearn/linalg.hpp"
#include "unilearn/serialize.hpp"

namespace unilearn {

enum class GateKind { U3, RX, RY, RZ, H, X, Z, CNOT, FIXED };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

/// One gate. Qubits are 1-based; qubit 1 is the most significant bit of a
/// basis index. For CNOT, qubits = {control, target}.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    std::vector<double> params;
    std::optional<ComplexMatrix> payload; // FIXED only

    static Gate u3(int q, double theta, double phi, double lambda);
    static Gate rx(int q, double theta);
    static Gate ry(int q, double theta);
    static Gate rz(int q, double theta);
    static Gate h(int q);
    static Gate x(int q);
    static Gate z(int q);
    static Gate cnot(int control, int target);
    static Gate fixed(std::vector<int> qubits, ComplexMatrix unitary);

    /// Local 2x2 (single-qubit) or 4x4 (two-qubit) matrix. The CNOT local
    /// matrix is ordered (control, target).
    ComplexMatrix local_matrix() const;

    /// d(local_matrix)/d(params[angle]); only rotation kinds are differentiable.
    ComplexMatrix local_derivative(std::size_t angle) const;

    bool operator==(const Gate&) const = default;
};

/// [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
UnitaryMatrix u3_matrix(double theta, double phi, double lambda);

struct ParamRef {
    std::size_t gate = 0;
    std::size_t angle = 0;
    bool operator==(const ParamRef&) const = default;
};

class Circuit {
  public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return Eigen::Index{1} << n_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<ParamRef>& param_refs() const { return refs_; }
    std::size_t num_parameters() const { return refs_.size(); }

    /// Appends a fixed (non-trainable) gate.
    Circuit& add(Gate gate);
    /// Appends a gate and registers every one of its angles as a trainable slot.
    Circuit& add_trainable(Gate gate);
    /// Registers angle `angle` of gate `gate` as the next trainable slot.
    void bind(ParamRef ref);

    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> values);
    Circuit with_parameters(std::span<const double> values) const;

    /// Scalar phase e^{i phi} multiplying the whole circuit.
    double global_phase() const { return global_phase_; }
    void set_global_phase(double phi) { global_phase_ = phi; }

    /// This circuit followed by `next` (next acts after this one).
    Circuit then(const Circuit& next) const;
    /// Copy with every gate's qubit q relabelled to mapping[q-1], on `num_qubits` wires.
    Circuit relabeled(std::span<const int> mapping, int num_qubits) const;

    Json& meta() { return meta_; }
    const Json& meta() const { return meta_; }

  private:
    void validate_gate(const Gate& g) const;

    int n_;
    std::vector<Gate> gates_;
    std::vector<ParamRef> refs_;
    double global_phase_ = 0.0;
    Json meta_ = Json::object();
};

// In-place kernels over dense 2^n x 2^n matrices.
void apply_gate_left(ComplexMatrix& m, const Gate& g, int n);               // m <- G m
void apply_gate_right_adjoint(ComplexMatrix& m, const Gate& g, int n);      // m <- m G^dagger
void apply_local_left(ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n);
void apply_local_right_adjoint(ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n);

/// sum_{a,b} local(a,b) * R(b,a), R the reduced block of m on `qubits`;
/// equals tr(embed(local) m).
Complex trace_with_local(const ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n);

/// Raw (unvalidated) unitary of the circuit, including the global phase.
ComplexMatrix circuit_matrix(const Circuit& c);
UnitaryMatrix circuit_unitary(const Circuit& c);
DensityMatrix apply_to_density(const Circuit& c, const DensityMatrix& rho);

struct CountReport {
    std::size_t single_qubit_rotations = 0;
    std::size_t cnots = 0;
    std::size_t total = 0;
    bool operator==(const CountReport&) const = default;
};

/// U3 counts as three rotations, other single-qubit gates as one. Throws
/// ValidationError ("undecomposed gate") if a FIXED gate is present.
CountReport gate_count(const Circuit& c);

Json count_to_json(const CountReport& r);
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);
Json gate_to_json(const Gate& g);
Gate gate_from_json(const Json& j);

} // namespace unilearn

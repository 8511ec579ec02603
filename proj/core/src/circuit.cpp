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

#include "unilearn/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "unilearn/error.hpp"

namespace unilearn {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 9> kGateNames{{
    {GateKind::U3, "U3"},
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::Z, "Z"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::FIXED, "FIXED"},
}};

std::size_t expected_params(GateKind kind) {
    switch (kind) {
    case GateKind::U3:
        return 3;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    default:
        return 0;
    }
}

Eigen::Index bit_of(int qubit, int n) { return Eigen::Index{1} << (n - qubit); }

// Base indices with all the given bits clear, in ascending order.
template <typename F>
void for_each_base(Eigen::Index dim, Eigen::Index mask, F&& f) {
    for (Eigen::Index i = 0; i < dim; ++i) {
        if ((i & mask) == 0) {
            f(i);
        }
    }
}

} // namespace

std::string_view to_string(GateKind kind) {
    for (const auto& [k, name] : kGateNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    for (const auto& [k, known] : kGateNames) {
        if (known == name) {
            return k;
        }
    }
    throw ValidationError("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::u3(int q, double theta, double phi, double lambda) { return Gate{GateKind::U3, {q}, {theta, phi, lambda}, {}}; }
Gate Gate::rx(int q, double theta) { return Gate{GateKind::RX, {q}, {theta}, {}}; }
Gate Gate::ry(int q, double theta) { return Gate{GateKind::RY, {q}, {theta}, {}}; }
Gate Gate::rz(int q, double theta) { return Gate{GateKind::RZ, {q}, {theta}, {}}; }
Gate Gate::h(int q) { return Gate{GateKind::H, {q}, {}, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::X, {q}, {}, {}}; }
Gate Gate::z(int q) { return Gate{GateKind::Z, {q}, {}, {}}; }
Gate Gate::cnot(int control, int target) { return Gate{GateKind::CNOT, {control, target}, {}, {}}; }

Gate Gate::fixed(std::vector<int> qubits, ComplexMatrix unitary) {
    return Gate{GateKind::FIXED, std::move(qubits), {}, std::move(unitary)};
}

UnitaryMatrix u3_matrix(double theta, double phi, double lambda) {
    return UnitaryMatrix(Gate::u3(1, theta, phi, lambda).local_matrix());
}

ComplexMatrix Gate::local_matrix() const {
    ComplexMatrix m(2, 2);
    switch (kind) {
    case GateKind::U3: {
        const double c = std::cos(params[0] / 2.0);
        const double s = std::sin(params[0] / 2.0);
        const Complex ep = std::exp(kI * params[1]);
        const Complex el = std::exp(kI * params[2]);
        m << c, -el * s, ep * s, ep * el * c;
        return m;
    }
    case GateKind::RX: {
        const double c = std::cos(params[0] / 2.0);
        const double s = std::sin(params[0] / 2.0);
        m << c, -kI * s, -kI * s, c;
        return m;
    }
    case GateKind::RY: {
        const double c = std::cos(params[0] / 2.0);
        const double s = std::sin(params[0] / 2.0);
        m << c, -s, s, c;
        return m;
    }
    case GateKind::RZ:
        m << std::exp(-kI * (params[0] / 2.0)), 0.0, 0.0, std::exp(kI * (params[0] / 2.0));
        return m;
    case GateKind::H:
        return pauli::H();
    case GateKind::X:
        return pauli::X();
    case GateKind::Z:
        return pauli::Z();
    case GateKind::CNOT: {
        ComplexMatrix c = ComplexMatrix::Zero(4, 4);
        c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
        return c;
    }
    case GateKind::FIXED:
        return *payload;
    }
    throw ValidationError("unhandled gate kind");
}

ComplexMatrix Gate::local_derivative(std::size_t angle) const {
    if (angle >= params.size()) {
        throw ValidationError("gate has no angle " + std::to_string(angle));
    }
    ComplexMatrix m(2, 2);
    switch (kind) {
    case GateKind::U3: {
        const double c = std::cos(params[0] / 2.0);
        const double s = std::sin(params[0] / 2.0);
        const Complex ep = std::exp(kI * params[1]);
        const Complex el = std::exp(kI * params[2]);
        if (angle == 0) {
            m << -0.5 * s, -0.5 * el * c, 0.5 * ep * c, -0.5 * ep * el * s;
        } else if (angle == 1) {
            m << 0.0, 0.0, kI * ep * s, kI * ep * el * c;
        } else {
            m << 0.0, -kI * el * s, 0.0, kI * ep * el * c;
        }
        return m;
    }
    case GateKind::RX:
        return -0.5 * kI * pauli::X() * local_matrix();
    case GateKind::RY:
        return -0.5 * kI * pauli::Y() * local_matrix();
    case GateKind::RZ:
        return -0.5 * kI * pauli::Z() * local_matrix();
    default:
        throw ValidationError("gate kind " + std::string(to_string(kind)) + " is not differentiable");
    }
}

Circuit::Circuit(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 16) {
        throw DimensionError("circuit qubit count must be in 1..16");
    }
}

void Circuit::validate_gate(const Gate& g) const {
    const std::size_t arity = g.kind == GateKind::CNOT ? 2 : (g.kind == GateKind::FIXED ? g.qubits.size() : 1);
    if (g.qubits.size() != arity || arity < 1 || arity > 2) {
        throw ValidationError("gate " + std::string(to_string(g.kind)) + " has wrong number of qubits");
    }
    for (const int q : g.qubits) {
        if (q < 1 || q > n_) {
            throw ValidationError("gate qubit " + std::to_string(q) + " outside 1.." + std::to_string(n_));
        }
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) {
        throw ValidationError("two-qubit gate acts on the same qubit twice");
    }
    if (g.kind == GateKind::FIXED) {
        const Eigen::Index local_dim = Eigen::Index{1} << arity;
        if (!g.payload || g.payload->rows() != local_dim || g.payload->cols() != local_dim) {
            throw ValidationError("FIXED gate payload must be a 2^k x 2^k matrix");
        }
        if (!(unitarity_defect(*g.payload) < kUnitaryTolerance)) {
            throw ValidationError("FIXED gate payload is not unitary");
        }
        if (!g.params.empty()) {
            throw ValidationError("FIXED gate carries no angles");
        }
    } else {
        if (g.payload) {
            throw ValidationError("only FIXED gates carry a matrix payload");
        }
        if (g.params.size() != expected_params(g.kind)) {
            throw ValidationError("gate " + std::string(to_string(g.kind)) + " expects " +
                                  std::to_string(expected_params(g.kind)) + " angles");
        }
    }
    for (const double p : g.params) {
        if (!std::isfinite(p)) {
            throw ValidationError("gate angle is not finite");
        }
    }
}

Circuit& Circuit::add(Gate gate) {
    validate_gate(gate);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::add_trainable(Gate gate) {
    const std::size_t angles = gate.params.size();
    add(std::move(gate));
    for (std::size_t a = 0; a < angles; ++a) {
        bind({gates_.size() - 1, a});
    }
    return *this;
}

void Circuit::bind(ParamRef ref) {
    if (ref.gate >= gates_.size() || ref.angle >= gates_[ref.gate].params.size()) {
        throw ValidationError("parameter reference targets a missing angle");
    }
    refs_.push_back(ref);
}

std::vector<double> Circuit::parameters() const {
    std::vector<double> out;
    out.reserve(refs_.size());
    for (const auto& r : refs_) {
        out.push_back(gates_[r.gate].params[r.angle]);
    }
    return out;
}

void Circuit::set_parameters(std::span<const double> values) {
    if (values.size() != refs_.size()) {
        throw DimensionError("expected " + std::to_string(refs_.size()) + " parameters, got " +
                             std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("parameter value is not finite");
        }
        gates_[refs_[i].gate].params[refs_[i].angle] = values[i];
    }
}

Circuit Circuit::with_parameters(std::span<const double> values) const {
    Circuit copy = *this;
    copy.set_parameters(values);
    return copy;
}

Circuit Circuit::then(const Circuit& next) const {
    if (next.n_ != n_) {
        throw DimensionError("cannot compose circuits on different qubit counts");
    }
    Circuit out = *this;
    const std::size_t offset = gates_.size();
    out.gates_.insert(out.gates_.end(), next.gates_.begin(), next.gates_.end());
    for (const auto& r : next.refs_) {
        out.refs_.push_back({r.gate + offset, r.angle});
    }
    out.global_phase_ += next.global_phase_;
    return out;
}

Circuit Circuit::relabeled(std::span<const int> mapping, int num_qubits) const {
    if (mapping.size() != static_cast<std::size_t>(n_)) {
        throw DimensionError("qubit mapping must cover every qubit");
    }
    Circuit out(num_qubits);
    for (Gate g : gates_) {
        for (int& q : g.qubits) {
            q = mapping[static_cast<std::size_t>(q - 1)];
        }
        out.add(std::move(g));
    }
    out.refs_ = refs_;
    out.global_phase_ = global_phase_;
    out.meta_ = meta_;
    return out;
}

void apply_local_left(ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index cols = m.cols();
    if (qubits.size() == 1) {
        const Eigen::Index s = bit_of(qubits[0], n);
        const Complex g00 = local(0, 0), g01 = local(0, 1), g10 = local(1, 0), g11 = local(1, 1);
        for (Eigen::Index c = 0; c < cols; ++c) {
            Complex* col = m.col(c).data();
            for_each_base(dim, s, [&](Eigen::Index i) {
                const Complex a = col[i];
                const Complex b = col[i | s];
                col[i] = g00 * a + g01 * b;
                col[i | s] = g10 * a + g11 * b;
            });
        }
        return;
    }
    const Eigen::Index s1 = bit_of(qubits[0], n);
    const Eigen::Index s2 = bit_of(qubits[1], n);
    for (Eigen::Index c = 0; c < cols; ++c) {
        Complex* col = m.col(c).data();
        for_each_base(dim, s1 | s2, [&](Eigen::Index i) {
            const Eigen::Index idx[4] = {i, i | s2, i | s1, i | s1 | s2};
            const Complex v[4] = {col[idx[0]], col[idx[1]], col[idx[2]], col[idx[3]]};
            for (int r = 0; r < 4; ++r) {
                col[idx[r]] = local(r, 0) * v[0] + local(r, 1) * v[1] + local(r, 2) * v[2] + local(r, 3) * v[3];
            }
        });
    }
}

void apply_local_right_adjoint(ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n) {
    // (m G^dagger)(:, j) = sum_k conj(G(j, k)) m(:, k)
    const Eigen::Index dim = m.cols();
    if (qubits.size() == 1) {
        const Eigen::Index s = bit_of(qubits[0], n);
        const Complex g00 = std::conj(local(0, 0)), g01 = std::conj(local(0, 1));
        const Complex g10 = std::conj(local(1, 0)), g11 = std::conj(local(1, 1));
        for_each_base(dim, s, [&](Eigen::Index i) {
            auto a = m.col(i);
            auto b = m.col(i | s);
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                const Complex x = a(r);
                const Complex y = b(r);
                a(r) = g00 * x + g01 * y;
                b(r) = g10 * x + g11 * y;
            }
        });
        return;
    }
    const Eigen::Index s1 = bit_of(qubits[0], n);
    const Eigen::Index s2 = bit_of(qubits[1], n);
    const ComplexMatrix g = local.conjugate();
    for_each_base(dim, s1 | s2, [&](Eigen::Index i) {
        const Eigen::Index idx[4] = {i, i | s2, i | s1, i | s1 | s2};
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex v[4] = {m(r, idx[0]), m(r, idx[1]), m(r, idx[2]), m(r, idx[3])};
            for (int j = 0; j < 4; ++j) {
                m(r, idx[j]) = g(j, 0) * v[0] + g(j, 1) * v[1] + g(j, 2) * v[2] + g(j, 3) * v[3];
            }
        }
    });
}

void apply_gate_left(ComplexMatrix& m, const Gate& g, int n) {
    const Eigen::Index dim = m.rows();
    if (g.kind == GateKind::CNOT) {
        const Eigen::Index sc = bit_of(g.qubits[0], n);
        const Eigen::Index st = bit_of(g.qubits[1], n);
        for_each_base(dim, sc | st, [&](Eigen::Index i) { m.row(i | sc).swap(m.row(i | sc | st)); });
        return;
    }
    if (g.kind == GateKind::X) {
        const Eigen::Index s = bit_of(g.qubits[0], n);
        for_each_base(dim, s, [&](Eigen::Index i) { m.row(i).swap(m.row(i | s)); });
        return;
    }
    apply_local_left(m, g.local_matrix(), g.qubits, n);
}

void apply_gate_right_adjoint(ComplexMatrix& m, const Gate& g, int n) {
    const Eigen::Index dim = m.cols();
    if (g.kind == GateKind::CNOT) {
        const Eigen::Index sc = bit_of(g.qubits[0], n);
        const Eigen::Index st = bit_of(g.qubits[1], n);
        for_each_base(dim, sc | st, [&](Eigen::Index i) { m.col(i | sc).swap(m.col(i | sc | st)); });
        return;
    }
    if (g.kind == GateKind::X) {
        const Eigen::Index s = bit_of(g.qubits[0], n);
        for_each_base(dim, s, [&](Eigen::Index i) { m.col(i).swap(m.col(i | s)); });
        return;
    }
    apply_local_right_adjoint(m, g.local_matrix(), g.qubits, n);
}

Complex trace_with_local(const ComplexMatrix& m, const ComplexMatrix& local, std::span<const int> qubits, int n) {
    const Eigen::Index dim = m.rows();
    Complex acc = 0.0;
    if (qubits.size() == 1) {
        const Eigen::Index s = bit_of(qubits[0], n);
        Complex r00 = 0.0, r01 = 0.0, r10 = 0.0, r11 = 0.0;
        for_each_base(dim, s, [&](Eigen::Index i) {
            r00 += m(i, i);
            r01 += m(i, i | s);
            r10 += m(i | s, i);
            r11 += m(i | s, i | s);
        });
        // sum_ab L(a,b) R(b,a)
        acc = local(0, 0) * r00 + local(0, 1) * r10 + local(1, 0) * r01 + local(1, 1) * r11;
        return acc;
    }
    const Eigen::Index s1 = bit_of(qubits[0], n);
    const Eigen::Index s2 = bit_of(qubits[1], n);
    Eigen::Matrix4cd reduced = Eigen::Matrix4cd::Zero();
    for_each_base(dim, s1 | s2, [&](Eigen::Index i) {
        const Eigen::Index idx[4] = {i, i | s2, i | s1, i | s1 | s2};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                reduced(a, b) += m(idx[a], idx[b]);
            }
        }
    });
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            acc += local(a, b) * reduced(b, a);
        }
    }
    return acc;
}

ComplexMatrix circuit_matrix(const Circuit& c) {
    ComplexMatrix u = ComplexMatrix::Identity(c.dim(), c.dim());
    for (const Gate& g : c.gates()) {
        apply_gate_left(u, g, c.num_qubits());
    }
    if (c.global_phase() != 0.0) {
        u *= std::exp(kI * c.global_phase());
    }
    return u;
}

UnitaryMatrix circuit_unitary(const Circuit& c) { return UnitaryMatrix(circuit_matrix(c)); }

DensityMatrix apply_to_density(const Circuit& c, const DensityMatrix& rho) {
    if (rho.dim() != c.dim()) {
        throw DimensionError("apply_to_density: circuit and state dimensions differ");
    }
    ComplexMatrix m = rho.matrix();
    for (const Gate& g : c.gates()) {
        apply_gate_left(m, g, c.num_qubits());
        apply_gate_right_adjoint(m, g, c.num_qubits());
    }
    return DensityMatrix(std::move(m));
}

CountReport gate_count(const Circuit& c) {
    CountReport r;
    for (const Gate& g : c.gates()) {
        switch (g.kind) {
        case GateKind::U3:
            r.single_qubit_rotations += 3;
            break;
        case GateKind::CNOT:
            r.cnots += 1;
            break;
        case GateKind::FIXED:
            throw ValidationError("undecomposed gate: FIXED gates must be decomposed before counting");
        default:
            r.single_qubit_rotations += 1;
            break;
        }
    }
    r.total = r.single_qubit_rotations + r.cnots;
    return r;
}

Json count_to_json(const CountReport& r) {
    return Json{{"single_qubit_rotations", r.single_qubit_rotations}, {"cnots", r.cnots}, {"total", r.total}};
}

Json gate_to_json(const Gate& g) {
    Json j{{"kind", std::string(to_string(g.kind))}, {"qubits", g.qubits}, {"params", g.params}};
    if (g.payload) {
        j["matrix"] = matrix_to_json(*g.payload);
    }
    return j;
}

Gate gate_from_json(const Json& j) {
    Gate g;
    g.kind = gate_kind_from_string(j.at("kind").get<std::string>());
    g.qubits = j.at("qubits").get<std::vector<int>>();
    g.params = j.value("params", std::vector<double>{});
    if (j.contains("matrix")) {
        g.payload = matrix_from_json(j.at("matrix"));
    }
    return g;
}

Json circuit_to_json(const Circuit& c) {
    Json gates = Json::array();
    for (const Gate& g : c.gates()) {
        gates.push_back(gate_to_json(g));
    }
    Json refs = Json::array();
    for (const auto& r : c.param_refs()) {
        refs.push_back(Json::array({r.gate, r.angle}));
    }
    return Json{{"n", c.num_qubits()},
                {"gates", std::move(gates)},
                {"param_refs", std::move(refs)},
                {"global_phase", c.global_phase()},
                {"meta", c.meta()}};
}

Circuit circuit_from_json(const Json& j) {
    for (const auto& [key, _] : j.items()) {
        if (key != "n" && key != "gates" && key != "param_refs" && key != "global_phase" && key != "meta") {
            throw ValidationError("unknown circuit field '" + key + "'");
        }
    }
    Circuit c(j.at("n").get<int>());
    for (const Json& g : j.at("gates")) {
        c.add(gate_from_json(g));
    }
    if (j.contains("param_refs")) {
        for (const Json& r : j.at("param_refs")) {
            c.bind({r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>()});
        }
    }
    c.set_global_phase(j.value("global_phase", 0.0));
    if (j.contains("meta")) {
        c.meta() = j.at("meta");
    }
    return c;
}

} // namespace unilearn

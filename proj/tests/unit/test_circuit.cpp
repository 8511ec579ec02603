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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_helpers.hpp"
#include "unilearn/ansatz.hpp"
#include "unilearn/circuit.hpp"
#include "unilearn/error.hpp"
#include "unilearn/random.hpp"

namespace unilearn {
namespace {

using testing::MatrixNear;
constexpr double kPi = std::numbers::pi;

// Oracle: full-space embedding built from Kronecker products, independent of
// the strided kernels used by the library.
ComplexMatrix embed_two(const ComplexMatrix& local, int q1, int q2, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int b1 = static_cast<int>((col >> (n - q1)) & 1);
        const int b2 = static_cast<int>((col >> (n - q2)) & 1);
        const int in = 2 * b1 + b2;
        for (int out_local = 0; out_local < 4; ++out_local) {
            Eigen::Index row = col;
            row &= ~(Eigen::Index{1} << (n - q1));
            row &= ~(Eigen::Index{1} << (n - q2));
            row |= Eigen::Index{(out_local >> 1) & 1} << (n - q1);
            row |= Eigen::Index{out_local & 1} << (n - q2);
            out(row, col) += local(out_local, in);
        }
    }
    return out;
}

ComplexMatrix oracle_unitary(const Circuit& c) {
    const int n = c.num_qubits();
    ComplexMatrix u = ComplexMatrix::Identity(c.dim(), c.dim());
    for (const Gate& g : c.gates()) {
        const ComplexMatrix local = g.local_matrix();
        const ComplexMatrix full =
            g.qubits.size() == 1 ? embed(local, g.qubits[0], n) : embed_two(local, g.qubits[0], g.qubits[1], n);
        u = full * u;
    }
    return u * std::exp(kI * c.global_phase());
}

Circuit random_circuit(int n, int gates, RngStream& rng) {
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        const int q = 1 + static_cast<int>(rng.next_u64() % n);
        switch (rng.next_u64() % 6) {
        case 0: c.add(Gate::u3(q, rng.uniform(0, 6), rng.uniform(0, 6), rng.uniform(0, 6))); break;
        case 1: c.add(Gate::rx(q, rng.uniform(-3, 3))); break;
        case 2: c.add(Gate::ry(q, rng.uniform(-3, 3))); break;
        case 3: c.add(Gate::rz(q, rng.uniform(-3, 3))); break;
        case 4: c.add(Gate::h(q)); break;
        default:
            if (n >= 2) {
                const int t = 1 + (q % n);
                c.add(Gate::cnot(q, t));
            } else {
                c.add(Gate::x(q));
            }
        }
    }
    return c;
}

TEST(U3Matrix, Examples) {
    EXPECT_TRUE(MatrixNear(u3_matrix(0, 0, 0).matrix(), ComplexMatrix::Identity(2, 2), 1e-15));
    EXPECT_TRUE(MatrixNear(u3_matrix(kPi, 0, kPi).matrix(), pauli::X(), 1e-15));
    ComplexMatrix hadamard(2, 2);
    hadamard << 1, 1, 1, -1;
    hadamard /= std::sqrt(2.0);
    EXPECT_TRUE(MatrixNear(u3_matrix(kPi / 2, 0, kPi).matrix(), hadamard, 1e-15));
}

TEST(Ansatz, CountsForExperimentShapes) {
    const Circuit c = build_ansatz({3, 8}, std::vector<double>(72, 0.1));
    std::size_t u3 = 0, cx = 0;
    for (const Gate& g : c.gates()) {
        u3 += g.kind == GateKind::U3;
        cx += g.kind == GateKind::CNOT;
    }
    EXPECT_EQ(u3, 24u);
    EXPECT_EQ(cx, 24u);
    EXPECT_EQ(gate_count(c), (CountReport{72, 24, 96}));
    EXPECT_EQ(gate_count(build_ansatz({4, 25}, std::vector<double>(300))).total, 400u);
    EXPECT_EQ(gate_count(build_ansatz({5, 100}, std::vector<double>(1500))).total, 2000u);
}

TEST(Ansatz, LayerStructureAndRingOrder) {
    const Circuit c = build_ansatz({3, 2}, std::vector<double>(18));
    const std::vector<std::pair<int, int>> ring = {{1, 2}, {2, 3}, {3, 1}};
    for (int layer = 0; layer < 2; ++layer) {
        for (int q = 0; q < 3; ++q) {
            const Gate& g = c.gates()[static_cast<std::size_t>(layer * 6 + q)];
            EXPECT_EQ(g.kind, GateKind::U3);
            EXPECT_EQ(g.qubits, std::vector<int>{q + 1});
        }
        for (int k = 0; k < 3; ++k) {
            const Gate& g = c.gates()[static_cast<std::size_t>(layer * 6 + 3 + k)];
            EXPECT_EQ(g.kind, GateKind::CNOT);
            EXPECT_EQ(g.qubits, (std::vector<int>{ring[k].first, ring[k].second}));
        }
    }
    const Circuit rev = build_ansatz({3, 1, RingOrientation::Reverse}, std::vector<double>(9));
    EXPECT_EQ(rev.gates()[3].qubits, (std::vector<int>{2, 1}));
}

TEST(Ansatz, ParameterLayoutAndCount) {
    RngStream rng(1, "ansatz-layout");
    for (int n = 1; n <= 4; ++n) {
        for (int d = 1; d <= 3; ++d) {
            const AnsatzSpec spec{n, d};
            const auto theta = testing::random_angles(spec.num_parameters(), rng);
            const Circuit c = build_ansatz(spec, theta);
            EXPECT_EQ(c.num_parameters(), static_cast<std::size_t>(3 * n * d));
            EXPECT_EQ(c.parameters(), theta);
        }
    }
    const Circuit c = build_ansatz({2, 1}, std::vector<double>{1, 2, 3, 4, 5, 6});
    EXPECT_EQ(c.gates()[1].params, (std::vector<double>{4, 5, 6}));
}

TEST(Ansatz, RejectsBadShape) {
    EXPECT_THROW(build_ansatz({3, 8}, std::vector<double>(71)), DimensionError);
    EXPECT_THROW(build_ansatz({3, 0}, std::vector<double>()), ValidationError);
    EXPECT_THROW(build_ansatz({0, 1}, std::vector<double>()), ValidationError);
}

TEST(Ansatz, ZeroParametersGiveCnotRings) {
    const Circuit c = build_ansatz({3, 2}, std::vector<double>(18, 0.0));
    Circuit rings(3);
    for (int layer = 0; layer < 2; ++layer) {
        rings.add(Gate::cnot(1, 2)).add(Gate::cnot(2, 3)).add(Gate::cnot(3, 1));
    }
    EXPECT_TRUE(MatrixNear(circuit_matrix(c), circuit_matrix(rings), 1e-15));
}

TEST(Ansatz, UnitaryForRandomParameters) {
    RngStream rng(2, "ansatz-unitary");
    for (int trial = 0; trial < 100; ++trial) {
        const AnsatzSpec spec{2 + trial % 3, 1 + trial % 4};
        const Circuit c = build_ansatz(spec, testing::random_angles(spec.num_parameters(), rng));
        EXPECT_LT(unitarity_defect(circuit_matrix(c)), 1e-9);
    }
}

TEST(DefaultLayers, ExperimentValues) {
    EXPECT_EQ(default_layers(3), 8);
    EXPECT_EQ(default_layers(4), 25);
    EXPECT_EQ(default_layers(5), 100);
}

TEST(CircuitUnitary, Examples) {
    EXPECT_TRUE(MatrixNear(circuit_unitary(Circuit(2)).matrix(), ComplexMatrix::Identity(4, 4), 0.0));
    Circuit c(2);
    c.add(Gate::cnot(1, 2));
    ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
    perm(0, 0) = perm(1, 1) = perm(3, 2) = perm(2, 3) = 1.0;
    EXPECT_TRUE(MatrixNear(circuit_unitary(c).matrix(), perm, 0.0));
}

TEST(CircuitUnitary, MatchesKroneckerOracle) {
    RngStream rng(3, "circuit-oracle");
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 4;
        Circuit c = random_circuit(n, 25, rng);
        c.set_global_phase(rng.uniform(-3, 3));
        EXPECT_TRUE(MatrixNear(circuit_matrix(c), oracle_unitary(c), 1e-12));
    }
}

TEST(CircuitUnitary, FixedGatesMatchOracle) {
    RngStream rng(4, "fixed");
    Circuit c(3);
    const ComplexMatrix a = haar_unitary(2, rng).matrix();
    const ComplexMatrix b = haar_unitary(1, rng).matrix();
    c.add(Gate::fixed({3, 1}, a)).add(Gate::fixed({2}, b)).add(Gate::fixed({1, 2}, a));
    EXPECT_TRUE(MatrixNear(circuit_matrix(c), oracle_unitary(c), 1e-12));
    EXPECT_THROW(gate_count(c), ValidationError);
}

TEST(CircuitUnitary, CompositionOrder) {
    RngStream rng(5, "compose");
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        Circuit a = random_circuit(n, 10, rng);
        Circuit b = random_circuit(n, 10, rng);
        a.set_global_phase(0.3);
        b.set_global_phase(-1.1);
        EXPECT_TRUE(MatrixNear(circuit_matrix(a.then(b)), circuit_matrix(b) * circuit_matrix(a), 1e-10));
    }
}

TEST(ApplyToDensity, Examples) {
    RngStream rng(6, "apply");
    const DensityMatrix rho = hs_random_density(2, rng);
    EXPECT_TRUE(MatrixNear(apply_to_density(Circuit(2), rho).matrix(), rho.matrix(), 1e-15));

    Circuit flip(3);
    flip.add(Gate::x(1));
    const DensityMatrix out = apply_to_density(flip, DensityMatrix::basis_projector(8, 0));
    EXPECT_TRUE(MatrixNear(out.matrix(), DensityMatrix::basis_projector(8, 4).matrix(), 0.0));

    EXPECT_THROW(apply_to_density(flip, rho), DimensionError);
}

TEST(ApplyToDensity, AgreesWithConjugation) {
    RngStream rng(7, "apply-conj");
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 4;
        const Circuit c = random_circuit(n, 20, rng);
        const DensityMatrix rho = hs_random_density(n, rng);
        const DensityMatrix out = apply_to_density(c, rho);
        const ComplexMatrix u = circuit_matrix(c);
        EXPECT_TRUE(MatrixNear(out.matrix(), u * rho.matrix() * u.adjoint(), 1e-10));
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(is_hermitian(out.matrix(), 1e-12));
    }
}

TEST(Kernels, RightAdjointAndTraceWithLocal) {
    RngStream rng(8, "kernels");
    const int n = 3;
    const ComplexMatrix m = ginibre(8, 8, rng);
    const ComplexMatrix local2 = ginibre(4, 4, rng);
    const ComplexMatrix local1 = ginibre(2, 2, rng);
    const std::vector<int> pair{3, 1};
    const std::vector<int> single{2};

    ComplexMatrix right = m;
    apply_local_right_adjoint(right, local2, pair, n);
    EXPECT_TRUE(MatrixNear(right, m * embed_two(local2, 3, 1, n).adjoint(), 1e-12));

    ComplexMatrix left = m;
    apply_local_left(left, local1, single, n);
    EXPECT_TRUE(MatrixNear(left, embed(local1, 2, n) * m, 1e-12));

    EXPECT_NEAR(std::abs(trace_with_local(m, local2, pair, n) - (embed_two(local2, 3, 1, n) * m).trace()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(trace_with_local(m, local1, single, n) - (embed(local1, 2, n) * m).trace()), 0.0, 1e-12);
}

TEST(Gate, LocalDerivativeMatchesDifferenceQuotient) {
    const double h = 1e-6;
    for (int angle = 0; angle < 3; ++angle) {
        Gate g = Gate::u3(1, 0.7, -0.4, 1.9);
        Gate plus = g, minus = g;
        plus.params[angle] += h;
        minus.params[angle] -= h;
        const ComplexMatrix fd = (plus.local_matrix() - minus.local_matrix()) / (2 * h);
        EXPECT_TRUE(MatrixNear(g.local_derivative(static_cast<std::size_t>(angle)), fd, 1e-8));
    }
    for (Gate g : {Gate::rx(1, 0.3), Gate::ry(1, -1.2), Gate::rz(1, 2.5)}) {
        Gate plus = g, minus = g;
        plus.params[0] += h;
        minus.params[0] -= h;
        EXPECT_TRUE(MatrixNear(g.local_derivative(0), (plus.local_matrix() - minus.local_matrix()) / (2 * h), 1e-8));
    }
}

TEST(Gate, ValidationErrors) {
    Circuit c(2);
    EXPECT_THROW(c.add(Gate::cnot(1, 1)), ValidationError);
    EXPECT_THROW(c.add(Gate::x(3)), ValidationError);
    EXPECT_THROW(c.add(Gate::x(0)), ValidationError);
    Gate bad = Gate::u3(1, 0, 0, 0);
    bad.params.pop_back();
    EXPECT_THROW(c.add(bad), ValidationError);
    EXPECT_THROW(c.bind({5, 0}), ValidationError);
    EXPECT_THROW(Circuit(0), DimensionError);
}

TEST(GateCount, Rules) {
    Circuit c(2);
    c.add(Gate::u3(1, 0, 0, 0)).add(Gate::rx(2, 1)).add(Gate::h(1)).add(Gate::z(2)).add(Gate::cnot(2, 1));
    EXPECT_EQ(gate_count(c), (CountReport{6, 1, 7}));
}

TEST(CircuitJson, LosslessRoundTrip) {
    RngStream rng(9, "json");
    Circuit c = build_ansatz({3, 2}, testing::random_angles(18, rng));
    c.add(Gate::fixed({2, 3}, haar_unitary(2, rng).matrix()));
    c.set_global_phase(0.123456789012345678);
    const Json j = circuit_to_json(c);
    const Circuit back = circuit_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.gates(), c.gates());
    EXPECT_EQ(back.param_refs(), c.param_refs());
    EXPECT_EQ(back.global_phase(), c.global_phase());
    EXPECT_EQ(circuit_to_json(back).dump(), j.dump());
    EXPECT_EQ(j.at("meta").at("ansatz").at("d"), 2);
}

TEST(CircuitJson, RejectsUnknownFieldsAndBadGates) {
    Json j = circuit_to_json(build_ansatz({2, 1}, std::vector<double>(6)));
    j["surprise"] = 1;
    EXPECT_THROW(circuit_from_json(j), ValidationError);
    Json g = gate_to_json(Gate::cnot(1, 2));
    g["kind"] = "SWAP";
    EXPECT_THROW(gate_from_json(g), ValidationError);
}

} // namespace
} // namespace unilearn

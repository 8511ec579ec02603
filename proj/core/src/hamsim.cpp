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

#include "unilearn/hamsim.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "unilearn/error.hpp"
#include "unilearn/metrics.hpp"

namespace unilearn {

namespace {

ComplexMatrix two_site(const ComplexMatrix& p, int a, int b, int n) {
    return embed(p, a, n) * embed(p, b, n);
}

ComplexMatrix bond_exponential_exact(double angle) {
    const ComplexMatrix xx = kron(pauli::X(), pauli::X());
    const ComplexMatrix yy = kron(pauli::Y(), pauli::Y());
    const ComplexMatrix zz = kron(pauli::Z(), pauli::Z());
    return matrix_exp_hermitian(xx + yy + zz, angle).matrix();
}

// Dense matrix power by repeated squaring.
ComplexMatrix matrix_power(const ComplexMatrix& base, int exponent) {
    ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
    ComplexMatrix square = base;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * square;
        }
        exponent >>= 1;
        if (exponent > 0) {
            square = square * square;
        }
    }
    return result;
}

} // namespace

void HeisenbergSpec::validate() const {
    if (n < 3) {
        throw ValidationError("Heisenberg ring needs n >= 3 sites (n = 2 double-counts the single bond)");
    }
    if (h.size() != static_cast<std::size_t>(n)) {
        throw DimensionError("Heisenberg field vector must have n entries");
    }
    for (const double x : h) {
        if (!std::isfinite(x)) {
            throw ValidationError("Heisenberg field coefficient is not finite");
        }
    }
}

HeisenbergSpec HeisenbergSpec::random(int n, std::uint64_t seed, double lo, double hi) {
    RngStream rng(seed, "heisenberg-h");
    HeisenbergSpec spec{n, std::vector<double>(static_cast<std::size_t>(std::max(n, 0)))};
    for (double& x : spec.h) {
        x = rng.uniform(lo, hi);
    }
    spec.validate();
    return spec;
}

ComplexMatrix heisenberg_hamiltonian(const HeisenbergSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int j = 1; j <= n; ++j) {
        const int k = j == n ? 1 : j + 1;
        h += two_site(pauli::X(), j, k, n) + two_site(pauli::Y(), j, k, n) + two_site(pauli::Z(), j, k, n);
        h += spec.h[static_cast<std::size_t>(j - 1)] * embed(pauli::Z(), j, n);
    }
    return h;
}

UnitaryMatrix exact_evolution(const HeisenbergSpec& spec, double t) {
    return matrix_exp_hermitian(heisenberg_hamiltonian(spec), t);
}

Circuit decompose_bond_exponential(double angle) {
    // exp(i(a XX + b YY + c ZZ)) with a = b = c = -angle.
    const double a = -angle;
    const double half_pi = std::numbers::pi / 2.0;
    Circuit c(2);
    c.add(Gate::rz(2, -half_pi));
    c.add(Gate::cnot(2, 1));
    c.add(Gate::rz(1, half_pi - 2.0 * a));
    c.add(Gate::ry(2, 2.0 * a - half_pi));
    c.add(Gate::cnot(1, 2));
    c.add(Gate::ry(2, half_pi - 2.0 * a));
    c.add(Gate::cnot(2, 1));
    c.add(Gate::rz(1, half_pi));
    c.set_global_phase(std::numbers::pi / 4.0);
    return c;
}

std::vector<std::string> trotter_term_order(int n) {
    std::vector<std::string> order;
    for (int j = 1; j <= n; ++j) {
        order.push_back("bond(" + std::to_string(j) + "," + std::to_string(j == n ? 1 : j + 1) + ")");
    }
    for (int j = 1; j <= n; ++j) {
        order.push_back("Z" + std::to_string(j));
    }
    return order;
}

Circuit trotter2_circuit(const HeisenbergSpec& spec, double t, int r, BondForm form) {
    spec.validate();
    if (r < 1) {
        throw ValidationError("trotter2_circuit needs r >= 1");
    }
    const int n = spec.n;
    const double half = t / static_cast<double>(r) / 2.0;

    // One half-step of term `idx` (bonds first, then fields).
    Circuit bond_fragment = decompose_bond_exponential(half);
    const ComplexMatrix bond_exact = bond_exponential_exact(half);
    const auto emit = [&](Circuit& c, int idx) {
        if (idx < n) {
            const int a = idx + 1;
            const int b = a == n ? 1 : a + 1;
            if (form == BondForm::Fixed) {
                c.add(Gate::fixed({a, b}, bond_exact));
            } else {
                const int mapping[2] = {a, b};
                const Circuit placed = bond_fragment.relabeled(mapping, n);
                for (const Gate& g : placed.gates()) {
                    c.add(g);
                }
                c.set_global_phase(c.global_phase() + placed.global_phase());
            }
        } else {
            const int q = idx - n + 1;
            // exp(-i h dt/2 Z) = RZ(h dt)
            c.add(Gate::rz(q, 2.0 * spec.h[static_cast<std::size_t>(q - 1)] * half));
        }
    };

    Circuit step(n);
    for (int idx = 0; idx < 2 * n; ++idx) {
        emit(step, idx);
    }
    for (int idx = 2 * n - 1; idx >= 0; --idx) {
        emit(step, idx);
    }

    Circuit out(n);
    for (int s = 0; s < r; ++s) {
        for (const Gate& g : step.gates()) {
            out.add(g);
        }
    }
    out.set_global_phase(std::remainder(step.global_phase() * r, 2.0 * std::numbers::pi));
    out.meta()["trotter"] = {{"order", 2},
                             {"t", t},
                             {"r", r},
                             {"term_order", trotter_term_order(n)},
                             {"second_half", "reversed"},
                             {"bond_form", form == BondForm::Fixed ? "fixed" : "elementary"}};
    return out;
}

TrotterPlan plan_to_fidelity(const HeisenbergSpec& spec, double t, double target_fidelity, int max_steps) {
    spec.validate();
    if (!(target_fidelity > 0.0 && target_fidelity < 1.0)) {
        throw ValidationError("target fidelity must lie in (0, 1)");
    }
    const UnitaryMatrix exact = exact_evolution(spec, t);
    const double dim = static_cast<double>(exact.dim());
    const ComplexMatrix exact_adj = exact.matrix().adjoint();

    // The r-step circuit is the r-th power of one step; search on powers.
    std::map<int, double> cache;
    const auto fidelity_at = [&](int r) {
        if (auto it = cache.find(r); it != cache.end()) {
            return it->second;
        }
        const ComplexMatrix step = circuit_matrix(trotter2_circuit(spec, t / static_cast<double>(r), 1));
        const double f = std::abs((exact_adj * matrix_power(step, r)).trace()) / dim;
        cache.emplace(r, f);
        return f;
    };

    int hi = 1;
    while (fidelity_at(hi) < target_fidelity) {
        if (hi > max_steps / 2) {
            throw NumericalError("plan_to_fidelity: target fidelity needs more than " + std::to_string(max_steps) +
                                 " steps");
        }
        hi *= 2;
    }
    int lo = hi / 2; // fails (or 0)
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (fidelity_at(mid) >= target_fidelity) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    TrotterPlan plan;
    plan.spec = spec;
    plan.t = t;
    plan.r = hi;
    plan.target_fidelity = target_fidelity;
    plan.term_order = trotter_term_order(spec.n);
    plan.circuit = trotter2_circuit(spec, t, hi);
    plan.achieved_fidelity = gate_fidelity(circuit_unitary(plan.circuit), exact);
    plan.counts = gate_count(plan.circuit);
    return plan;
}

Json heisenberg_to_json(const HeisenbergSpec& spec) {
    return Json{{"n", spec.n}, {"h", spec.h}, {"boundary", "periodic"}};
}

Json plan_to_json(const TrotterPlan& plan, bool include_circuit) {
    Json j{{"spec", heisenberg_to_json(plan.spec)},
           {"t", plan.t},
           {"r", plan.r},
           {"target_fidelity", plan.target_fidelity},
           {"term_order", plan.term_order},
           {"achieved_fidelity", plan.achieved_fidelity},
           {"fidelity_definition", "|tr(U^dagger V)|/N"},
           {"counts", count_to_json(plan.counts)}};
    if (include_circuit) {
        j["circuit"] = circuit_to_json(plan.circuit);
    }
    return j;
}

} // namespace unilearn

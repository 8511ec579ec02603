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
#include <set>

#include "unilearn/metrics.hpp"
#include "unilearn/random.hpp"
#include "unilearn/risk.hpp"
#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

constexpr double kExact = 1e-12;

CheckResult check(std::string name, Json expected, Json observed, bool pass) {
    return {std::move(name), std::move(expected), std::move(observed), pass};
}

std::string tag(const char* prefix, int n) { return std::string(prefix) + " n=" + std::to_string(n); }

void worst_cases(const VerifySection& v, std::vector<CheckResult>& out) {
    RngStream rng(0, "verify-haar");
    for (int n = 1; n <= v.max_n; ++n) {
        const double dim = std::ldexp(1.0, n);
        const UnitaryMatrix u = haar_unitary(n, rng);
        const UnitaryMatrix w = worst_case_orthobasis(u);
        const double emp = empirical_risk(w, label_dataset(build_orthobasis(n), u, DatasetFamily::ORTHOBASIS));
        const double risk = quantum_risk(u, w).risk;
        const double expected = 1.0 - 1.0 / (dim + 1.0);
        out.push_back(check(tag("worst case orthobasis", n), Json{{"empirical_risk", 0.0}, {"quantum_risk", expected}},
                            Json{{"empirical_risk", emp}, {"quantum_risk", risk}},
                            std::abs(emp) <= kExact && std::abs(risk - expected) <= kExact));
    }
    for (int n = 1; n <= v.max_n; ++n) {
        const double dim = std::ldexp(1.0, n);
        const DensityMatrix rho = hs_random_density(n, rng);
        const UnitaryMatrix w = worst_case_commuting(rho);
        const double drift = max_abs(w.matrix() * rho.matrix() * w.matrix().adjoint() - rho.matrix());
        const double risk = quantum_risk(UnitaryMatrix::identity(rho.dim()), w).risk;
        const double expected = 1.0 - 1.0 / (dim + 1.0);
        out.push_back(check(tag("worst case single mixed state", n), Json{{"label_drift_max", 1e-9}, {"quantum_risk", expected}},
                            Json{{"label_drift", drift}, {"quantum_risk", risk}},
                            drift <= 1e-9 && std::abs(risk - expected) <= kExact));
    }
}

void bound_attainment(const VerifySection& v, std::vector<CheckResult>& out) {
    RngStream rng(0, "verify-bound");
    for (int n = 2; n <= std::min(v.max_n, 4); ++n) {
        const long long dim = 1LL << n;
        const UnitaryMatrix u = haar_unitary(n, rng);
        for (long long t = dim / 2; t <= dim; ++t) {
            const double risk = quantum_risk(u, worst_case_subspace(u, t)).risk;
            const double bound = prop1_bound(dim, t);
            out.push_back(check("bound attainment N=" + std::to_string(dim) + " t=" + std::to_string(t), bound, risk,
                                std::abs(risk - bound) <= kExact));
        }
    }
}

void commutants(const VerifySection& v, std::vector<CheckResult>& out) {
    RngStream rng(0, "verify-commutant");
    for (int n = 1; n <= std::min(v.max_n, 4); ++n) {
        const int full = 1 << n;
        auto d1 = build_d1(n);
        const std::vector<DensityMatrix> tail(d1.begin() + 1, d1.end());
        const auto row = [&](const char* name, const std::vector<DensityMatrix>& states, int expected) {
            const int observed = commutant_dimension(states);
            out.push_back(check(tag(name, n), expected, observed, observed == expected));
        };
        row("commutant D1", d1, 1);
        row("commutant D1 without |+><+|", tail, full);
        row("commutant orthobasis", build_orthobasis(n), full);
        row("commutant single mixed state", {hs_random_density(n, rng)}, full);
        std::set<int> seen;
        for (int s = 0; s < v.d2_seeds; ++s) {
            const auto [a, b] = build_d2(n, static_cast<std::uint64_t>(s));
            seen.insert(commutant_dimension({a, b}));
        }
        out.push_back(check(tag("commutant D2", n) + " (" + std::to_string(v.d2_seeds) + " seeds)", Json::array({1}),
                            Json(std::vector<int>(seen.begin(), seen.end())), seen == std::set<int>{1}));
    }
}

void monte_carlo(const VerifySection& v, std::vector<CheckResult>& out) {
    RngStream rng(0, "verify-mc-pairs");
    for (int i = 0; i < v.mc_pairs; ++i) {
        const int n = 1 + i % 3;
        const UnitaryMatrix a = haar_unitary(n, rng);
        const UnitaryMatrix b = haar_unitary(n, rng);
        const double closed = quantum_risk(a, b).risk;
        const MonteCarloEstimate mc = quantum_risk_mc(a, b, v.mc_samples, RngStream(static_cast<std::uint64_t>(i), "haar-mc"));
        const double z = mc.std_error > 0 ? std::abs(mc.estimate - closed) / mc.std_error : 0.0;
        out.push_back(check("monte carlo pair " + std::to_string(i) + " n=" + std::to_string(n),
                            Json{{"closed_form", closed}, {"max_standard_errors", 4.0}},
                            Json{{"estimate", mc.estimate}, {"std_error", mc.std_error}, {"standard_errors", z}},
                            z <= 4.0));
    }
}

} // namespace

std::vector<CheckResult> run_verify_suite(const VerifySection& v) {
    std::vector<CheckResult> out;
    worst_cases(v, out);
    bound_attainment(v, out);
    commutants(v, out);
    monte_carlo(v, out);
    return out;
}

} // namespace unilearn::cli

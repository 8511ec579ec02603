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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "unilearn/ansatz.hpp"
#include "unilearn/grover.hpp"
#include "unilearn/metrics.hpp"
#include "unilearn/random.hpp"
#include "unilearn/risk.hpp"
#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

class Stopwatch {
  public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    void stamp(RunWriter& w) const {
        if (enabled_) {
            w.set_wall_ms(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count());
        }
    }

  private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

Json params_json(const TrainConfig& tc, const std::vector<double>& params) {
    return Json{{"n", tc.n},
                {"d", tc.d},
                {"ring", tc.orientation == RingOrientation::Forward ? "forward" : "reverse"},
                {"params", params}};
}

/// Loads a model: either circuit JSON or a params file written by `train`.
Circuit load_model(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw UsageError("cannot parse model file '" + path + "': " + e.what());
    }
    if (j.contains("gates")) {
        return circuit_from_json(j);
    }
    if (j.contains("params")) {
        const std::string ring = j.value("ring", std::string("forward"));
        AnsatzSpec spec{j.at("n").get<int>(), j.at("d").get<int>(),
                        ring == "reverse" ? RingOrientation::Reverse : RingOrientation::Forward};
        return build_ansatz(spec, j.at("params").get<std::vector<double>>());
    }
    throw UsageError("model file '" + path + "' holds neither a circuit nor ansatz parameters");
}

std::string csv_number(double x) { return std::isfinite(x) ? format_double(x) : std::string(); }

struct TrainedModel {
    TrainConfig config;
    TrainResult result;
    Circuit circuit{1};
};

TrainedModel fit(const ExperimentConfig& cfg, const UnitaryMatrix& target, const Dataset& ds, DatasetFamily family,
                 int n, std::optional<std::uint64_t> seed = std::nullopt) {
    TrainedModel m{train_config_for(cfg, family, n), {}, Circuit(1)};
    if (seed) {
        m.config.seed = *seed;
    }
    m.result = train(target, ds, m.config);
    m.circuit = trained_circuit(m.config, m.result);
    return m;
}

} // namespace

int cmd_gen_dataset(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    const ResolvedTarget target = resolve_target(cfg, cfg.n);
    const Dataset ds = build_dataset(cfg, target.unitary, cfg.n, cfg.dataset.seed);
    Json doc = dataset_to_json(ds);
    doc["target"] = target.description;
    w.add_json("dataset.json", doc);
    w.set_seeds(Json{{"dataset", cfg.dataset.seed}, {"target", cfg.target.seed}});
    clock.stamp(w);
    w.commit();
    out << "dataset " << to_string(ds.family) << " n=" << ds.n << " pairs=" << ds.size() << " -> "
        << (w.dir() / "dataset.json").string() << "\n";
    return kExitOk;
}

int cmd_train(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    const ResolvedTarget target = resolve_target(cfg, cfg.n);
    const Dataset ds = build_dataset(cfg, target.unitary, cfg.n, cfg.dataset.seed);
    const TrainedModel m = fit(cfg, target.unitary, ds, cfg.dataset.family, cfg.n);

    RiskReport report = make_risk_report(target.unitary, circuit_unitary(m.circuit), ds, m.config.loss);
    if (cfg.risk.mc_samples > 0) {
        report.quantum_risk_mc = quantum_risk_mc(target.unitary, circuit_unitary(m.circuit), cfg.risk.mc_samples,
                                                 RngStream(cfg.risk.mc_seed, "haar-mc"));
    }
    w.add("train_log.csv", train_log_csv(m.result));
    w.add_json("params.json", params_json(m.config, m.result.final_params));
    w.add_json("model_circuit.json", circuit_to_json(m.circuit));
    w.add_json("risk_report.json", risk_report_to_json(report));
    Json result = train_result_to_json(m.result, m.config);
    result["target"] = target.description;
    result["dataset"] = Json{{"family", std::string(to_string(ds.family))}, {"size", ds.size()}};
    w.add_json("train_result.json", result);
    if (cfg.plot) {
        w.add("loss_curve.svg", loss_curve_svg(m.result));
    }
    w.set_seeds(Json{{"dataset", cfg.dataset.seed}, {"train", m.config.seed}, {"target", cfg.target.seed}});
    w.set_status(m.result.diverged ? "diverged" : "ok");
    clock.stamp(w);
    w.commit();

    out << "train n=" << m.config.n << " d=" << m.config.d << " family=" << to_string(ds.family)
        << " epochs=" << m.result.rows.size() << "\n"
        << "  final empirical risk " << format_double(m.result.final_empirical_risk) << "\n"
        << "  final quantum risk   " << format_double(m.result.final_quantum_risk) << "\n"
        << "  gates " << m.result.counts.total << " (" << m.result.counts.single_qubit_rotations << " rotations, "
        << m.result.counts.cnots << " CNOTs)\n";
    if (m.result.diverged) {
        out << "  diverged: " << m.result.failure << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_risk(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    const ResolvedTarget target = resolve_target(cfg, cfg.n);
    const Circuit model = load_model(cfg.risk.model);
    if (model.num_qubits() != cfg.n) {
        throw UsageError("model acts on " + std::to_string(model.num_qubits()) + " qubits, config n is " +
                         std::to_string(cfg.n));
    }
    const Dataset ds = build_dataset(cfg, target.unitary, cfg.n, cfg.dataset.seed);
    LossKind loss = LossKind::TRACE_SQ;
    if (cfg.train.contains("loss")) {
        loss = loss_kind_from_string(cfg.train.at("loss").get<std::string>());
    }
    const UnitaryMatrix v = circuit_unitary(model);
    RiskReport report = make_risk_report(target.unitary, v, ds, loss);
    if (cfg.risk.mc_samples > 0) {
        report.quantum_risk_mc =
            quantum_risk_mc(target.unitary, v, cfg.risk.mc_samples, RngStream(cfg.risk.mc_seed, "haar-mc"));
    }
    Json j = risk_report_to_json(report);
    j["target"] = target.description;
    j["dataset"] = Json{{"family", std::string(to_string(ds.family))}, {"size", ds.size()}};
    j["gate_fidelity"] = gate_fidelity(target.unitary, v);
    w.add_json("risk_report.json", j);
    w.set_seeds(Json{{"dataset", cfg.dataset.seed}, {"target", cfg.target.seed}, {"mc", cfg.risk.mc_seed}});
    clock.stamp(w);
    w.commit();
    out << "empirical risk " << format_double(report.empirical_risk) << "\nquantum risk   "
        << format_double(report.quantum_risk_closed) << "\n";
    if (report.quantum_risk_mc) {
        out << "monte carlo    " << format_double(report.quantum_risk_mc->estimate) << " +- "
            << format_double(report.quantum_risk_mc->std_error) << "\n";
    }
    return kExitOk;
}

int cmd_hamsim(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    std::ostringstream csv;
    csv << "n,trotter_gates,pqc_gates,trotter_fidelity,pqc_quantum_risk\n";
    Json seeds{{"target", cfg.target.seed}};
    for (int n : cfg.hamsim.ns) {
        HeisenbergSpec spec = HeisenbergSpec::random(n, cfg.target.seed);
        if (cfg.target.h && cfg.target.h->size() == static_cast<std::size_t>(n)) {
            spec.h = *cfg.target.h;
        }
        const double time = cfg.target.time.value_or(static_cast<double>(n));
        const TrotterPlan plan = plan_to_fidelity(spec, time, cfg.target.fidelity);
        w.add_json("trotter_plan_n" + std::to_string(n) + ".json", plan_to_json(plan, cfg.hamsim.include_circuit));

        const TrainConfig shape = train_config_for(cfg, DatasetFamily::D1, n);
        std::size_t pqc_gates = gate_count(build_ansatz({n, shape.d, shape.orientation}, std::vector<double>(3 * n * shape.d))).total;
        double pqc_risk = std::numeric_limits<double>::quiet_NaN();
        if (cfg.hamsim.train_pqc) {
            const UnitaryMatrix v0 = circuit_unitary(plan.circuit);
            const Dataset ds = label_dataset(build_d1(n), v0, DatasetFamily::D1);
            const TrainedModel m = fit(cfg, v0, ds, DatasetFamily::D1, n);
            pqc_gates = m.result.counts.total;
            pqc_risk = m.result.final_quantum_risk;
            w.add("pqc_train_log_n" + std::to_string(n) + ".csv", train_log_csv(m.result));
            w.add_json("pqc_params_n" + std::to_string(n) + ".json", params_json(m.config, m.result.final_params));
            seeds["train"] = m.config.seed;
        }
        csv << n << ',' << plan.counts.total << ',' << pqc_gates << ',' << format_double(plan.achieved_fidelity) << ','
            << csv_number(pqc_risk) << '\n';
        out << "n=" << n << " trotter r=" << plan.r << " gates=" << plan.counts.total
            << " fidelity=" << format_double(plan.achieved_fidelity) << " | pqc gates=" << pqc_gates;
        if (cfg.hamsim.train_pqc) {
            out << " quantum risk=" << format_double(pqc_risk);
        }
        out << "\n";
    }
    w.add("hamsim_comparison.csv", csv.str());
    w.set_seeds(seeds);
    clock.stamp(w);
    w.commit();
    return kExitOk;
}

int cmd_grover(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    std::ostringstream csv;
    csv << "n,exact_success,compiled_d1_success,compiled_d2_success_mean,compiled_d2_success_min,"
           "compiled_d2_success_max\n";
    Json runs = Json::array();
    for (int n : cfg.grover.ns) {
        const ResolvedTarget target = resolve_target(cfg, n);
        OracleSpec spec{n, {}};
        for (long long x : target.description.at("marked").get<std::vector<long long>>()) {
            spec.marked.insert(x);
        }
        const int k = grover_iterations(n);
        const double exact = grover_success(spec, target.unitary, k);
        double d1 = std::numeric_limits<double>::quiet_NaN();
        double mean = d1, lo = d1, hi = d1;
        if (cfg.grover.compile) {
            ExperimentConfig d1cfg = cfg;
            d1cfg.dataset.family = DatasetFamily::D1;
            const Dataset ds1 = build_dataset(d1cfg, target.unitary, n, cfg.dataset.seed);
            const TrainedModel m1 = fit(cfg, target.unitary, ds1, DatasetFamily::D1, n);
            d1 = compiled_grover(spec, m1.circuit, k);
            runs.push_back(Json{{"n", n}, {"family", "D1"}, {"train_seed", m1.config.seed},
                                {"final_quantum_risk", m1.result.final_quantum_risk},
                                {"final_empirical_risk", m1.result.final_empirical_risk}, {"success", d1}});
            std::vector<double> d2;
            ExperimentConfig d2cfg = cfg;
            d2cfg.dataset.family = DatasetFamily::D2;
            const std::uint64_t base_train_seed = m1.config.seed;
            for (int s = 0; s < cfg.grover.d2_seeds; ++s) {
                const std::uint64_t data_seed = cfg.dataset.seed + static_cast<std::uint64_t>(s);
                const Dataset ds2 = build_dataset(d2cfg, target.unitary, n, data_seed);
                const TrainedModel m2 =
                    fit(cfg, target.unitary, ds2, DatasetFamily::D2, n, base_train_seed + static_cast<std::uint64_t>(s));
                d2.push_back(compiled_grover(spec, m2.circuit, k));
                runs.push_back(Json{{"n", n}, {"family", "D2"}, {"dataset_seed", data_seed},
                                    {"train_seed", m2.config.seed},
                                    {"final_quantum_risk", m2.result.final_quantum_risk},
                                    {"final_empirical_risk", m2.result.final_empirical_risk}, {"success", d2.back()}});
            }
            if (!d2.empty()) {
                mean = std::accumulate(d2.begin(), d2.end(), 0.0) / static_cast<double>(d2.size());
                lo = *std::min_element(d2.begin(), d2.end());
                hi = *std::max_element(d2.begin(), d2.end());
            }
        }
        csv << n << ',' << format_double(exact) << ',' << csv_number(d1) << ',' << csv_number(mean) << ','
            << csv_number(lo) << ',' << csv_number(hi) << '\n';
        out << "n=" << n << " k=" << k << " exact=" << format_double(exact);
        if (cfg.grover.compile) {
            out << " d1=" << csv_number(d1) << " d2_mean=" << csv_number(mean);
        }
        out << "\n";
    }
    w.add("grover_table.csv", csv.str());
    w.add_json("grover_runs.json", runs);
    w.set_seeds(Json{{"dataset_base", cfg.dataset.seed}, {"d2_seeds", cfg.grover.d2_seeds}});
    clock.stamp(w);
    w.commit();
    return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
    const Stopwatch clock(cfg.timing);
    RunWriter w(cfg.output_dir, cfg);
    const std::vector<CheckResult> checks = run_verify_suite(cfg.verify);
    Json rows = Json::array();
    std::ostringstream summary;
    int failed = 0;
    for (const CheckResult& c : checks) {
        rows.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
        summary << (c.pass ? "PASS " : "FAIL ") << c.name << " | expected " << c.expected.dump() << " | observed "
                << c.observed.dump() << "\n";
        failed += c.pass ? 0 : 1;
    }
    summary << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
    w.add_json("verify_report.json",
               Json{{"checks", rows}, {"passed", checks.size() - static_cast<std::size_t>(failed)}, {"failed", failed},
                    {"all_pass", failed == 0}});
    w.add("verify_summary.txt", summary.str());
    w.set_status(failed == 0 ? "ok" : "verification failed");
    clock.stamp(w);
    w.commit();
    out << summary.str();
    return failed == 0 ? kExitOk : kExitVerification;
}

} // namespace unilearn::cli

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

#include "unilearn/train.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unilearn/error.hpp"
#include "unilearn/gradient.hpp"
#include "unilearn/metrics.hpp"

namespace unilearn {

std::string_view to_string(GradientMethod g) { return g == GradientMethod::ADJOINT ? "adjoint" : "fd"; }

GradientMethod gradient_method_from_string(std::string_view name) {
    if (name == "adjoint") {
        return GradientMethod::ADJOINT;
    }
    if (name == "fd") {
        return GradientMethod::FINITE_DIFFERENCE;
    }
    throw ValidationError("unknown gradient method '" + std::string(name) + "' (expected adjoint or fd)");
}

void TrainConfig::validate() const {
    AnsatzSpec{n, d, orientation}.validate();
    if (epochs < 1) {
        throw ValidationError("epochs must be >= 1");
    }
    if (!(lr > 0.0) || !std::isfinite(lr)) {
        throw ValidationError("learning rate must be positive");
    }
    if (!(fd_step > 0.0)) {
        throw ValidationError("fd_step must be positive");
    }
    if (lr_decay && (!(lr_decay->factor > 0.0) || lr_decay->every < 1)) {
        throw ValidationError("lr_decay needs factor > 0 and every >= 1");
    }
    if (initial_params && initial_params->size() != static_cast<std::size_t>(3 * n * d)) {
        throw DimensionError("initial_params must hold 3*n*d values");
    }
}

double TrainConfig::lr_at(int epoch) const {
    if (!lr_decay) {
        return lr;
    }
    return lr * std::pow(lr_decay->factor, epoch / lr_decay->every);
}

TrainConfig TrainConfig::defaults_for(int n, DatasetFamily family) {
    TrainConfig cfg;
    cfg.n = n;
    cfg.d = default_layers(n);
    cfg.lr = family == DatasetFamily::D1 ? 0.05 : 0.1;
    if (n >= 5) {
        cfg.lr_decay = LrDecay{};
    }
    return cfg;
}

TrainResult train(const UnitaryMatrix& target, const Dataset& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.pairs.empty()) {
        throw ValidationError("train: empty dataset");
    }
    if (data.n != cfg.n || target.num_qubits() != cfg.n) {
        throw DimensionError("train: dataset, target and config qubit counts differ");
    }
    const AnsatzSpec spec{cfg.n, cfg.d, cfg.orientation};
    TrainResult result;
    if (cfg.initial_params) {
        result.initial_params = *cfg.initial_params;
    } else {
        RngStream init(cfg.seed, "ansatz-init");
        result.initial_params.resize(spec.num_parameters());
        for (double& p : result.initial_params) {
            p = init.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }

    Circuit circuit = build_ansatz(spec, result.initial_params);
    const DatasetMatrices matrices = DatasetMatrices::from(data);
    const double dim = static_cast<double>(target.dim());
    const ComplexMatrix target_adj = target.matrix().adjoint();
    const auto overlap_with = [&](const ComplexMatrix& v) { return std::abs((target_adj * v).trace()); };

    std::vector<double> params = result.initial_params;
    AdamState adam = AdamState::zeros(params.size());
    const auto start = std::chrono::steady_clock::now();

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        circuit.set_parameters(params);
        RiskGradient rg;
        try {
            if (cfg.gradient == GradientMethod::ADJOINT) {
                rg = empirical_risk_gradient(circuit, matrices, cfg.loss);
            } else {
                rg.model = circuit_matrix(circuit);
                rg.value = empirical_risk_value(rg.model, matrices, cfg.loss);
                const Objective f = [&](std::span<const double> p) {
                    return empirical_risk_value(circuit_matrix(circuit.with_parameters(p)), matrices, cfg.loss);
                };
                rg.gradient = fd_gradient(f, params, cfg.fd_step);
            }
        } catch (const NumericalError& e) {
            result.diverged = true;
            result.failure = e.what();
            break;
        }
        if (!std::isfinite(rg.value)) {
            result.diverged = true;
            result.failure = "empirical risk is not finite at epoch " + std::to_string(epoch);
            break;
        }
        EpochRow row;
        row.epoch = epoch;
        row.empirical_risk = rg.value;
        row.quantum_risk = quantum_risk_from_overlap(overlap_with(rg.model), dim);
        row.lr = cfg.lr_at(epoch);
        if (cfg.record_timing) {
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        result.rows.push_back(row);
        if (cfg.record_params) {
            result.param_history.push_back(params);
        }
        try {
            AdamUpdate next = adam_step(params, adam, rg.gradient, row.lr, cfg.adam);
            params = std::move(next.params);
            adam = std::move(next.state);
        } catch (const NumericalError& e) {
            result.diverged = true;
            result.failure = e.what();
            break;
        }
    }

    result.final_params = params;
    circuit.set_parameters(params);
    const ComplexMatrix v = circuit_matrix(circuit);
    result.final_empirical_risk = empirical_risk_value(v, matrices, cfg.loss);
    result.final_trace_overlap = overlap_with(v);
    result.final_quantum_risk = quantum_risk_from_overlap(result.final_trace_overlap, dim);
    if (!std::isfinite(result.final_empirical_risk)) {
        result.diverged = true;
    }
    result.counts = gate_count(circuit);
    result.converged = !result.diverged && result.final_empirical_risk < cfg.converged_threshold;
    return result;
}

Circuit trained_circuit(const TrainConfig& cfg, const TrainResult& result) {
    return build_ansatz(AnsatzSpec{cfg.n, cfg.d, cfg.orientation}, result.final_params);
}

std::string train_log_csv(const TrainResult& r) {
    std::ostringstream out;
    out << "epoch,empirical_risk,quantum_risk,lr,wall_ms\n";
    for (const auto& row : r.rows) {
        out << row.epoch << ',' << format_double(row.empirical_risk) << ',' << format_double(row.quantum_risk) << ','
            << format_double(row.lr) << ',' << format_double(row.wall_ms) << '\n';
    }
    return out.str();
}

Json train_config_to_json(const TrainConfig& cfg) {
    Json j{{"n", cfg.n},
           {"d", cfg.d},
           {"epochs", cfg.epochs},
           {"lr", cfg.lr},
           {"loss", std::string(to_string(cfg.loss))},
           {"fd_step", cfg.fd_step},
           {"seed", cfg.seed},
           {"gradient", std::string(to_string(cfg.gradient))},
           {"ring", cfg.orientation == RingOrientation::Forward ? "forward" : "reverse"},
           {"adam", {{"beta1", cfg.adam.beta1}, {"beta2", cfg.adam.beta2}, {"eps", cfg.adam.eps}}},
           {"init", cfg.initial_params ? "explicit" : "uniform[0,2pi]"},
           {"batch", "full"}};
    j["lr_decay"] = cfg.lr_decay ? Json{{"factor", cfg.lr_decay->factor}, {"every", cfg.lr_decay->every}} : Json(nullptr);
    return j;
}

TrainConfig train_config_from_json(const Json& j, TrainConfig cfg) {
    for (const auto& [key, value] : j.items()) {
        if (key == "epochs") {
            cfg.epochs = value.get<int>();
        } else if (key == "lr") {
            cfg.lr = value.get<double>();
        } else if (key == "lr_decay") {
            if (value.is_null() || (value.is_boolean() && !value.get<bool>())) {
                cfg.lr_decay.reset();
            } else if (value.is_boolean()) {
                cfg.lr_decay = LrDecay{};
            } else {
                for (const auto& [k, _] : value.items()) {
                    if (k != "factor" && k != "every") {
                        throw ValidationError("unknown lr_decay field '" + k + "'");
                    }
                }
                cfg.lr_decay = LrDecay{value.value("factor", 0.5), value.value("every", 100)};
            }
        } else if (key == "loss") {
            cfg.loss = loss_kind_from_string(value.get<std::string>());
        } else if (key == "fd_step") {
            cfg.fd_step = value.get<double>();
        } else if (key == "seed") {
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "gradient") {
            cfg.gradient = gradient_method_from_string(value.get<std::string>());
        } else if (key == "ring") {
            const auto s = value.get<std::string>();
            if (s != "forward" && s != "reverse") {
                throw ValidationError("ring must be 'forward' or 'reverse'");
            }
            cfg.orientation = s == "forward" ? RingOrientation::Forward : RingOrientation::Reverse;
        } else if (key == "initial_params") {
            cfg.initial_params = value.get<std::vector<double>>();
        } else if (key == "converged_threshold") {
            cfg.converged_threshold = value.get<double>();
        } else {
            throw ValidationError("unknown train field '" + key + "'");
        }
    }
    return cfg;
}

Json train_result_to_json(const TrainResult& r, const TrainConfig& cfg) {
    return Json{{"config", train_config_to_json(cfg)},
                {"epochs_run", r.rows.size()},
                {"final_params", r.final_params},
                {"final_empirical_risk", r.final_empirical_risk},
                {"final_quantum_risk", r.final_quantum_risk},
                {"final_trace_overlap", r.final_trace_overlap},
                {"gate_count", count_to_json(r.counts)},
                {"converged", r.converged},
                {"diverged", r.diverged},
                {"failure", r.failure}};
}

} // namespace unilearn

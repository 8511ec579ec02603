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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unilearn/ansatz.hpp"
#include "unilearn/datasets.hpp"
#include "unilearn/optim.hpp"
#include "unilearn/risk.hpp"

namespace unilearn {

enum class GradientMethod {
    ADJOINT,           // exact reverse sweep (default)
    FINITE_DIFFERENCE, // central differences with fd_step
};

std::string_view to_string(GradientMethod g);
GradientMethod gradient_method_from_string(std::string_view name);

struct LrDecay {
    double factor = 0.5;
    int every = 100;
};

struct TrainConfig {
    int n = 3;
    int d = 8;
    int epochs = 400;
    double lr = 0.05;
    std::optional<LrDecay> lr_decay;
    LossKind loss = LossKind::TRACE_SQ;
    double fd_step = 1e-4;
    std::uint64_t seed = 0;
    GradientMethod gradient = GradientMethod::ADJOINT;
    RingOrientation orientation = RingOrientation::Forward;
    AdamHyper adam;
    /// Overrides the uniform [0, 2 pi] initialization from stream "ansatz-init".
    std::optional<std::vector<double>> initial_params;
    double converged_threshold = 1e-6;
    bool record_params = false;
    bool record_timing = false;

    void validate() const;
    double lr_at(int epoch) const;

    /// Experiment defaults: d from default_layers(n), lr 0.05 for D1 and 0.1
    /// otherwise, learning-rate halving every 100 epochs for n >= 5.
    static TrainConfig defaults_for(int n, DatasetFamily family);
};

struct EpochRow {
    int epoch = 0;
    double empirical_risk = 0.0;
    double quantum_risk = 0.0;
    double lr = 0.0;
    double wall_ms = 0.0;
};

struct TrainResult {
    std::vector<EpochRow> rows; // metrics at the parameters entering each epoch
    std::vector<double> initial_params;
    std::vector<double> final_params;
    double final_empirical_risk = 0.0;
    double final_quantum_risk = 0.0;
    double final_trace_overlap = 0.0;
    CountReport counts;
    bool converged = false;
    bool diverged = false;
    std::string failure;                           // set when diverged
    std::vector<std::vector<double>> param_history; // rows.size() entries when record_params
};

/// Full-batch Adam on the empirical risk of build_ansatz({n, d}) against
/// `data`. The quantum risk against `target` is logged each epoch and never
/// fed back into the optimizer. A non-finite risk stops training with
/// diverged = true and the rows logged so far.
TrainResult train(const UnitaryMatrix& target, const Dataset& data, const TrainConfig& cfg);

Circuit trained_circuit(const TrainConfig& cfg, const TrainResult& result);

std::string train_log_csv(const TrainResult& r);
Json train_config_to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const Json& j, TrainConfig base);
Json train_result_to_json(const TrainResult& r, const TrainConfig& cfg);

} // namespace unilearn

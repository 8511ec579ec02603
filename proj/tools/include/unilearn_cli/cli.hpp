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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/datasets.hpp"
#include "unilearn/error.hpp"
#include "unilearn/hamsim.hpp"
#include "unilearn/serialize.hpp"
#include "unilearn/train.hpp"

namespace unilearn::cli {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

/// Bad command line or configuration document.
class UsageError : public Error {
  public:
    using Error::Error;
};

struct DatasetSection {
    DatasetFamily family = DatasetFamily::D1;
    std::uint64_t seed = 0;
    std::optional<int> t; // NONORTH_PURE size; defaults to 2^n
    double delta = 0.5;
};

/// kind: circuit-file | haar | heisenberg | grover-oracle.
struct TargetSection {
    std::string kind;
    std::string path;             // circuit-file
    std::uint64_t seed = 0;       // haar, heisenberg (field draw)
    std::string source = "trotter"; // heisenberg: trotter (V0) or exact (e^{-iHt})
    std::optional<double> time;   // heisenberg: defaults to t = n
    std::optional<std::vector<double>> h;
    double fidelity = 1.0 - 1e-3; // heisenberg trotter target
    std::vector<long long> marked; // grover-oracle: defaults to {2^n - 1}
};

struct RiskSection {
    std::string model; // circuit JSON file, or a params file written by `train`
    std::size_t mc_samples = 0;
    std::uint64_t mc_seed = 0;
};

struct HamsimSection {
    std::vector<int> ns; // defaults to {n}
    bool train_pqc = true;
    bool include_circuit = false;
};

struct GroverSection {
    std::vector<int> ns; // defaults to {n}
    int d2_seeds = 10;
    bool compile = true;
};

struct VerifySection {
    int max_n = 4;
    int mc_pairs = 50;
    std::size_t mc_samples = 20000;
    int d2_seeds = 20;
};

struct ExperimentConfig {
    std::string experiment;
    int n = 3;
    std::optional<int> d;
    DatasetSection dataset;
    TargetSection target;
    Json train = Json::object(); // overrides applied on top of TrainConfig::defaults_for
    RiskSection risk;
    HamsimSection hamsim;
    GroverSection grover;
    VerifySection verify;
    std::string output_dir = "out";
    bool plot = false;
    bool timing = false;
};

/// Parses a configuration document for `experiment`. A run manifest is also
/// accepted, in which case its embedded config is used. Unknown fields throw
/// UsageError.
ExperimentConfig config_from_json(const Json& j, std::string_view experiment);
Json config_to_json(const ExperimentConfig& cfg);

/// Fills experiment-dependent defaults (target kind, d, n lists, marked
/// element) and validates ranges.
ExperimentConfig resolve(ExperimentConfig cfg);

TrainConfig train_config_for(const ExperimentConfig& cfg, DatasetFamily family, int n);

struct ResolvedTarget {
    UnitaryMatrix unitary;
    Json description;
};

ResolvedTarget resolve_target(const ExperimentConfig& cfg, int n);

/// States of the configured dataset family, before labelling.
std::vector<DensityMatrix> dataset_states(const ExperimentConfig& cfg, int n, std::uint64_t seed, Provenance& prov);
Dataset build_dataset(const ExperimentConfig& cfg, const UnitaryMatrix& target, int n, std::uint64_t seed);

struct CheckResult {
    std::string name;
    Json expected;
    Json observed;
    bool pass = false;
};

/// The property suite behind `verify`: worst-case constructions, bound
/// attainment, commutant dimensions and Monte-Carlo agreement.
std::vector<CheckResult> run_verify_suite(const VerifySection& v);

std::string loss_curve_svg(const TrainResult& r);

/// Collects output files and writes them atomically together with a manifest.
class RunWriter {
  public:
    RunWriter(std::filesystem::path dir, const ExperimentConfig& cfg);

    void add(const std::string& name, std::string content);
    void add_json(const std::string& name, const Json& j);
    void set_seeds(Json seeds) { seeds_ = std::move(seeds); }
    void set_status(std::string status) { status_ = std::move(status); }
    void set_wall_ms(double ms) { wall_ms_ = ms; }
    /// Writes every file, then manifest.json listing them.
    void commit();

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
    Json config_;
    Json seeds_ = Json::object();
    std::string status_ = "ok";
    std::optional<double> wall_ms_;
    std::vector<std::pair<std::string, std::string>> files_;
};

int cmd_gen_dataset(const ExperimentConfig& cfg, std::ostream& out);
int cmd_train(const ExperimentConfig& cfg, std::ostream& out);
int cmd_risk(const ExperimentConfig& cfg, std::ostream& out);
int cmd_hamsim(const ExperimentConfig& cfg, std::ostream& out);
int cmd_grover(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace unilearn::cli

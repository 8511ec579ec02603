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
#include <initializer_list>

#include "unilearn/ansatz.hpp"
#include "unilearn/grover.hpp"
#include "unilearn/random.hpp"
#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

constexpr std::string_view kExperiments[] = {"gen-dataset", "train", "risk", "hamsim", "grover", "verify"};

void require_object(const Json& j, std::string_view where) {
    if (!j.is_object()) {
        throw UsageError(std::string(where) + " must be a JSON object");
    }
}

void check_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    require_object(j, where);
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw UsageError("unknown field '" + key + "' in " + std::string(where));
        }
    }
}

template <class T>
void read(const Json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const Json::exception& e) {
            throw UsageError(std::string("field '") + key + "': " + e.what());
        }
    }
}

template <class T>
void read(const Json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) {
        if (j.at(key).is_null()) {
            out.reset();
            return;
        }
        T value{};
        read(j, key, value);
        out = value;
    }
}

} // namespace

ExperimentConfig config_from_json(const Json& doc, std::string_view experiment) {
    const Json& j = doc.is_object() && doc.contains("manifest_version") ? doc.at("config") : doc;
    check_keys(j, "config",
               {"experiment", "n", "d", "dataset", "target", "train", "risk", "hamsim", "grover", "verify",
                "output_dir", "plot", "timing"});
    ExperimentConfig cfg;
    cfg.experiment = std::string(experiment);
    if (j.contains("experiment")) {
        const auto named = j.at("experiment").get<std::string>();
        if (!experiment.empty() && named != experiment) {
            throw UsageError("config is for experiment '" + named + "', not '" + std::string(experiment) + "'");
        }
        cfg.experiment = named;
    }
    read(j, "n", cfg.n);
    read(j, "d", cfg.d);
    read(j, "output_dir", cfg.output_dir);
    read(j, "plot", cfg.plot);
    read(j, "timing", cfg.timing);

    if (j.contains("dataset")) {
        const Json& s = j.at("dataset");
        check_keys(s, "dataset", {"family", "seed", "t", "delta"});
        if (s.contains("family")) {
            try {
                cfg.dataset.family = dataset_family_from_string(s.at("family").get<std::string>());
            } catch (const ValidationError& e) {
                throw UsageError(e.what());
            }
        }
        read(s, "seed", cfg.dataset.seed);
        read(s, "t", cfg.dataset.t);
        read(s, "delta", cfg.dataset.delta);
    }
    if (j.contains("target")) {
        const Json& s = j.at("target");
        check_keys(s, "target", {"kind", "path", "seed", "source", "time", "h", "fidelity", "marked"});
        read(s, "kind", cfg.target.kind);
        read(s, "path", cfg.target.path);
        read(s, "seed", cfg.target.seed);
        read(s, "source", cfg.target.source);
        read(s, "time", cfg.target.time);
        read(s, "h", cfg.target.h);
        read(s, "fidelity", cfg.target.fidelity);
        read(s, "marked", cfg.target.marked);
    }
    if (j.contains("train")) {
        require_object(j.at("train"), "train");
        cfg.train = j.at("train");
        try {
            (void)train_config_from_json(cfg.train, TrainConfig{});
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        } catch (const Json::exception& e) {
            throw UsageError(std::string("train: ") + e.what());
        }
    }
    if (j.contains("risk")) {
        const Json& s = j.at("risk");
        check_keys(s, "risk", {"model", "mc_samples", "mc_seed"});
        read(s, "model", cfg.risk.model);
        read(s, "mc_samples", cfg.risk.mc_samples);
        read(s, "mc_seed", cfg.risk.mc_seed);
    }
    if (j.contains("hamsim")) {
        const Json& s = j.at("hamsim");
        check_keys(s, "hamsim", {"ns", "train_pqc", "include_circuit"});
        read(s, "ns", cfg.hamsim.ns);
        read(s, "train_pqc", cfg.hamsim.train_pqc);
        read(s, "include_circuit", cfg.hamsim.include_circuit);
    }
    if (j.contains("grover")) {
        const Json& s = j.at("grover");
        check_keys(s, "grover", {"ns", "d2_seeds", "compile"});
        read(s, "ns", cfg.grover.ns);
        read(s, "d2_seeds", cfg.grover.d2_seeds);
        read(s, "compile", cfg.grover.compile);
    }
    if (j.contains("verify")) {
        const Json& s = j.at("verify");
        check_keys(s, "verify", {"max_n", "mc_pairs", "mc_samples", "d2_seeds"});
        read(s, "max_n", cfg.verify.max_n);
        read(s, "mc_pairs", cfg.verify.mc_pairs);
        read(s, "mc_samples", cfg.verify.mc_samples);
        read(s, "d2_seeds", cfg.verify.d2_seeds);
    }
    return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
    Json dataset{{"family", std::string(to_string(cfg.dataset.family))},
                 {"seed", cfg.dataset.seed},
                 {"delta", cfg.dataset.delta}};
    dataset["t"] = cfg.dataset.t ? Json(*cfg.dataset.t) : Json(nullptr);
    Json target{{"kind", cfg.target.kind},         {"path", cfg.target.path},
                {"seed", cfg.target.seed},         {"source", cfg.target.source},
                {"fidelity", cfg.target.fidelity}, {"marked", cfg.target.marked}};
    target["time"] = cfg.target.time ? Json(*cfg.target.time) : Json(nullptr);
    target["h"] = cfg.target.h ? Json(*cfg.target.h) : Json(nullptr);
    Json j{{"experiment", cfg.experiment},
           {"n", cfg.n},
           {"dataset", dataset},
           {"target", target},
           {"train", cfg.train},
           {"risk", {{"model", cfg.risk.model}, {"mc_samples", cfg.risk.mc_samples}, {"mc_seed", cfg.risk.mc_seed}}},
           {"hamsim",
            {{"ns", cfg.hamsim.ns}, {"train_pqc", cfg.hamsim.train_pqc}, {"include_circuit", cfg.hamsim.include_circuit}}},
           {"grover", {{"ns", cfg.grover.ns}, {"d2_seeds", cfg.grover.d2_seeds}, {"compile", cfg.grover.compile}}},
           {"verify",
            {{"max_n", cfg.verify.max_n},
             {"mc_pairs", cfg.verify.mc_pairs},
             {"mc_samples", cfg.verify.mc_samples},
             {"d2_seeds", cfg.verify.d2_seeds}}},
           {"output_dir", cfg.output_dir},
           {"plot", cfg.plot},
           {"timing", cfg.timing}};
    j["d"] = cfg.d ? Json(*cfg.d) : Json(nullptr);
    return j;
}

ExperimentConfig resolve(ExperimentConfig cfg) {
    if (std::find(std::begin(kExperiments), std::end(kExperiments), cfg.experiment) == std::end(kExperiments)) {
        throw UsageError("unknown experiment '" + cfg.experiment + "'");
    }
    if (cfg.n < 1 || cfg.n > 10) {
        throw UsageError("n must lie in 1..10");
    }
    if (cfg.d && *cfg.d < 1) {
        throw UsageError("d must be >= 1");
    }
    if (cfg.target.kind.empty()) {
        if (cfg.experiment == "grover") {
            cfg.target.kind = "grover-oracle";
        } else if (cfg.experiment == "gen-dataset") {
            cfg.target.kind = "haar";
        } else {
            cfg.target.kind = "heisenberg";
        }
    }
    const std::string& kind = cfg.target.kind;
    if (kind != "circuit-file" && kind != "haar" && kind != "heisenberg" && kind != "grover-oracle") {
        throw UsageError("unknown target kind '" + kind + "'");
    }
    if (cfg.experiment == "grover" && kind != "grover-oracle") {
        throw UsageError("grover needs target kind grover-oracle");
    }
    if (kind == "circuit-file" && cfg.target.path.empty()) {
        throw UsageError("target kind circuit-file needs target.path");
    }
    if (cfg.target.source != "trotter" && cfg.target.source != "exact") {
        throw UsageError("target.source must be 'trotter' or 'exact'");
    }
    if (!(cfg.target.fidelity > 0.0 && cfg.target.fidelity < 1.0)) {
        throw UsageError("target.fidelity must lie in (0, 1)");
    }
    if (cfg.dataset.family == DatasetFamily::CUSTOM) {
        throw UsageError("dataset family CUSTOM cannot be generated");
    }
    if (kind == "grover-oracle" && cfg.target.marked.empty() && cfg.experiment != "grover") {
        cfg.target.marked = {(1LL << cfg.n) - 1};
    }
    if (cfg.experiment == "hamsim") {
        if (cfg.hamsim.ns.empty()) {
            cfg.hamsim.ns = {cfg.n};
        }
        for (int n : cfg.hamsim.ns) {
            if (n < 3 || n > 8) {
                throw UsageError("hamsim sizes must lie in 3..8");
            }
        }
    }
    if (cfg.experiment == "grover") {
        if (cfg.grover.ns.empty()) {
            cfg.grover.ns = {cfg.n};
        }
        for (int n : cfg.grover.ns) {
            if (n < 2 || n > 8) {
                throw UsageError("grover sizes must lie in 2..8");
            }
        }
        if (cfg.grover.d2_seeds < 0) {
            throw UsageError("grover.d2_seeds must be >= 0");
        }
        if (cfg.grover.ns.size() > 1 && !cfg.target.marked.empty()) {
            throw UsageError("target.marked applies to a single n; leave it empty for a sweep");
        }
    }
    if (cfg.experiment == "risk" && cfg.risk.model.empty()) {
        throw UsageError("risk needs risk.model (a circuit or params JSON file)");
    }
    if (cfg.experiment == "verify" && (cfg.verify.max_n < 1 || cfg.verify.max_n > 5)) {
        throw UsageError("verify.max_n must lie in 1..5");
    }
    if (cfg.output_dir.empty()) {
        throw UsageError("output_dir must not be empty");
    }
    return cfg;
}

TrainConfig train_config_for(const ExperimentConfig& cfg, DatasetFamily family, int n) {
    TrainConfig base = TrainConfig::defaults_for(n, family);
    if (cfg.d) {
        base.d = *cfg.d;
    }
    base.record_timing = cfg.timing;
    try {
        TrainConfig out = train_config_from_json(cfg.train, base);
        out.validate();
        return out;
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    } catch (const DimensionError& e) {
        throw UsageError(e.what());
    }
}

ResolvedTarget resolve_target(const ExperimentConfig& cfg, int n) {
    const TargetSection& t = cfg.target;
    if (t.kind == "haar") {
        RngStream rng(t.seed, "haar-target");
        return {haar_unitary(n, rng), Json{{"kind", "haar"}, {"seed", t.seed}, {"stream", "haar-target"}}};
    }
    if (t.kind == "grover-oracle") {
        OracleSpec spec{n, {}};
        if (t.marked.empty()) {
            spec.marked = {(1LL << n) - 1};
        } else {
            spec.marked.insert(t.marked.begin(), t.marked.end());
        }
        try {
            spec.validate();
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
        return {phase_oracle(spec),
                Json{{"kind", "grover-oracle"}, {"marked", std::vector<long long>(spec.marked.begin(), spec.marked.end())}}};
    }
    if (t.kind == "circuit-file") {
        Circuit c(1);
        try {
            c = circuit_from_json(Json::parse(read_file(t.path)));
        } catch (const Json::exception& e) {
            throw UsageError("cannot parse circuit file '" + t.path + "': " + e.what());
        }
        if (c.num_qubits() != n) {
            throw UsageError("circuit file acts on " + std::to_string(c.num_qubits()) + " qubits, config n is " +
                             std::to_string(n));
        }
        return {circuit_unitary(c), Json{{"kind", "circuit-file"}, {"path", t.path}}};
    }
    if (n < 3) {
        throw UsageError("heisenberg target needs n >= 3");
    }
    HeisenbergSpec spec = HeisenbergSpec::random(n, t.seed);
    if (t.h) {
        spec.h = *t.h;
    }
    try {
        spec.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const double time = t.time.value_or(static_cast<double>(n));
    Json desc{{"kind", "heisenberg"}, {"spec", heisenberg_to_json(spec)}, {"time", time}, {"source", t.source}};
    if (t.source == "exact") {
        return {exact_evolution(spec, time), desc};
    }
    const TrotterPlan plan = plan_to_fidelity(spec, time, t.fidelity);
    desc["plan"] = plan_to_json(plan);
    return {circuit_unitary(plan.circuit), desc};
}

std::vector<DensityMatrix> dataset_states(const ExperimentConfig& cfg, int n, std::uint64_t seed, Provenance& prov) {
    prov.params = Json::object();
    try {
        switch (cfg.dataset.family) {
        case DatasetFamily::D1:
            return build_d1(n);
        case DatasetFamily::D2: {
            prov.seed = seed;
            prov.stream_labels = {"d2-a", "d2-b"};
            auto [a, b] = build_d2(n, seed);
            return {a, b};
        }
        case DatasetFamily::ORTHOBASIS:
            return build_orthobasis(n);
        case DatasetFamily::NONORTH_PURE: {
            const int t = cfg.dataset.t.value_or(1 << n);
            prov.params = Json{{"t", t}, {"delta", cfg.dataset.delta}};
            return build_nonorth_pure(n, t, cfg.dataset.delta);
        }
        case DatasetFamily::CUSTOM:
            break;
        }
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    throw UsageError("dataset family CUSTOM cannot be generated");
}

Dataset build_dataset(const ExperimentConfig& cfg, const UnitaryMatrix& target, int n, std::uint64_t seed) {
    Provenance prov;
    auto states = dataset_states(cfg, n, seed, prov);
    return label_dataset(states, target, cfg.dataset.family, std::move(prov));
}

} // namespace unilearn::cli

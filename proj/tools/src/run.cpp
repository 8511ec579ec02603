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

#include <CLI11.hpp>

#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

struct Overrides {
    std::optional<std::string> config;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> n, d;
    bool timing = false, plot = false;

    std::optional<std::string> family;
    std::optional<std::uint64_t> dataset_seed;
    std::optional<int> states;
    std::optional<double> delta;

    std::optional<std::string> target, target_path, source;
    std::optional<std::uint64_t> target_seed;
    std::optional<double> time, fidelity;
    std::vector<long long> marked;

    std::optional<int> epochs;
    std::optional<double> lr, fd_step;
    std::optional<std::string> loss, gradient, ring;
    std::optional<std::uint64_t> train_seed;

    std::optional<std::string> model;
    std::optional<std::size_t> mc_samples;
    std::optional<std::uint64_t> mc_seed;

    std::vector<int> ns;
    bool no_pqc = false, no_compile = false;
    std::optional<int> d2_seeds, max_n, mc_pairs;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON config (or a run manifest)");
    sub->add_option("--output-dir", o.output_dir, "Directory for outputs");
    sub->add_option("--seed", o.seed, "Seed for every random stream of the run");
    sub->add_option("--n", o.n, "Qubit count");
    sub->add_option("--d", o.d, "Ansatz layers");
    sub->add_flag("--timing", o.timing, "Record wall-clock times (outputs are then not byte-reproducible)");
}

void add_dataset(CLI::App* sub, Overrides& o) {
    sub->add_option("--family", o.family, "ORTHOBASIS, NONORTH_PURE, D1 or D2");
    sub->add_option("--dataset-seed", o.dataset_seed, "Seed for D2 states");
    sub->add_option("--states", o.states, "Size t of the NONORTH_PURE family");
    sub->add_option("--delta", o.delta, "Overlap weight of the NONORTH_PURE family");
}

void add_target(CLI::App* sub, Overrides& o) {
    sub->add_option("--target", o.target, "circuit-file, haar, heisenberg or grover-oracle");
    sub->add_option("--target-path", o.target_path, "Circuit JSON for --target circuit-file");
    sub->add_option("--target-seed", o.target_seed, "Seed for haar targets and Heisenberg fields");
    sub->add_option("--source", o.source, "Heisenberg target: trotter or exact");
    sub->add_option("--time", o.time, "Heisenberg evolution time (default n)");
    sub->add_option("--fidelity", o.fidelity, "Trotter gate-fidelity target");
    sub->add_option("--marked", o.marked, "Marked basis indices of a grover-oracle target");
}

void add_train(CLI::App* sub, Overrides& o) {
    sub->add_option("--epochs", o.epochs);
    sub->add_option("--lr", o.lr);
    sub->add_option("--fd-step", o.fd_step);
    sub->add_option("--loss", o.loss, "TRACE_SQ or HS_SQ");
    sub->add_option("--gradient", o.gradient, "adjoint or fd");
    sub->add_option("--ring", o.ring, "forward or reverse CNOT ring");
    sub->add_option("--train-seed", o.train_seed, "Seed for the ansatz initialization");
}

void apply(const Overrides& o, ExperimentConfig& c) {
    if (o.output_dir) c.output_dir = *o.output_dir;
    if (o.seed) {
        c.dataset.seed = c.target.seed = c.risk.mc_seed = *o.seed;
        c.train["seed"] = *o.seed;
    }
    if (o.n) c.n = *o.n;
    if (o.d) c.d = *o.d;
    if (o.timing) c.timing = true;
    if (o.plot) c.plot = true;
    if (o.family) {
        try {
            c.dataset.family = dataset_family_from_string(*o.family);
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
    }
    if (o.dataset_seed) c.dataset.seed = *o.dataset_seed;
    if (o.states) c.dataset.t = *o.states;
    if (o.delta) c.dataset.delta = *o.delta;
    if (o.target) c.target.kind = *o.target;
    if (o.target_path) c.target.path = *o.target_path;
    if (o.target_seed) c.target.seed = *o.target_seed;
    if (o.source) c.target.source = *o.source;
    if (o.time) c.target.time = *o.time;
    if (o.fidelity) c.target.fidelity = *o.fidelity;
    if (!o.marked.empty()) c.target.marked = o.marked;
    if (o.epochs) c.train["epochs"] = *o.epochs;
    if (o.lr) c.train["lr"] = *o.lr;
    if (o.fd_step) c.train["fd_step"] = *o.fd_step;
    if (o.loss) c.train["loss"] = *o.loss;
    if (o.gradient) c.train["gradient"] = *o.gradient;
    if (o.ring) c.train["ring"] = *o.ring;
    if (o.train_seed) c.train["seed"] = *o.train_seed;
    if (o.model) c.risk.model = *o.model;
    if (o.mc_samples) {
        c.risk.mc_samples = *o.mc_samples;
        c.verify.mc_samples = *o.mc_samples;
    }
    if (o.mc_seed) c.risk.mc_seed = *o.mc_seed;
    if (!o.ns.empty()) {
        c.hamsim.ns = o.ns;
        c.grover.ns = o.ns;
    }
    if (o.no_pqc) c.hamsim.train_pqc = false;
    if (o.no_compile) c.grover.compile = false;
    if (o.d2_seeds) {
        c.grover.d2_seeds = *o.d2_seeds;
        c.verify.d2_seeds = *o.d2_seeds;
    }
    if (o.max_n) c.verify.max_n = *o.max_n;
    if (o.mc_pairs) c.verify.mc_pairs = *o.mc_pairs;
}

int dispatch(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.experiment == "gen-dataset") return cmd_gen_dataset(cfg, out);
    if (cfg.experiment == "train") return cmd_train(cfg, out);
    if (cfg.experiment == "risk") return cmd_risk(cfg, out);
    if (cfg.experiment == "hamsim") return cmd_hamsim(cfg, out);
    if (cfg.experiment == "grover") return cmd_grover(cfg, out);
    return cmd_verify(cfg, out);
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"unilearn: unitary learning experiments"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Overrides o;

    auto* gen = app.add_subcommand("gen-dataset", "Build and label a training dataset");
    add_common(gen, o);
    add_dataset(gen, o);
    add_target(gen, o);

    auto* tr = app.add_subcommand("train", "Train the layered ansatz against a target");
    add_common(tr, o);
    add_dataset(tr, o);
    add_target(tr, o);
    add_train(tr, o);
    tr->add_flag("--plot", o.plot, "Also write loss_curve.svg");
    tr->add_option("--mc-samples", o.mc_samples, "Monte-Carlo samples for the final risk report");
    tr->add_option("--mc-seed", o.mc_seed);

    auto* risk = app.add_subcommand("risk", "Evaluate a model circuit against a target");
    add_common(risk, o);
    add_dataset(risk, o);
    add_target(risk, o);
    risk->add_option("--model", o.model, "Circuit JSON or params.json from train");
    risk->add_option("--loss", o.loss, "TRACE_SQ or HS_SQ");
    risk->add_option("--mc-samples", o.mc_samples);
    risk->add_option("--mc-seed", o.mc_seed);

    auto* ham = app.add_subcommand("hamsim", "Trotter circuits versus the trained ansatz");
    add_common(ham, o);
    add_target(ham, o);
    add_train(ham, o);
    ham->add_option("--ns", o.ns, "System sizes (default: n)");
    ham->add_flag("--no-pqc", o.no_pqc, "Skip ansatz training");

    auto* grv = app.add_subcommand("grover", "Exact and compiled Grover success probabilities");
    add_common(grv, o);
    add_target(grv, o);
    add_train(grv, o);
    grv->add_option("--ns", o.ns, "System sizes (default: n)");
    grv->add_option("--d2-seeds", o.d2_seeds, "Independent D2 training instances");
    grv->add_flag("--no-compile", o.no_compile, "Exact column only");

    auto* ver = app.add_subcommand("verify", "Property checks of the learning guarantees");
    add_common(ver, o);
    ver->add_option("--max-n", o.max_n);
    ver->add_option("--mc-pairs", o.mc_pairs);
    ver->add_option("--mc-samples", o.mc_samples);
    ver->add_option("--d2-seeds", o.d2_seeds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        ExperimentConfig cfg;
        cfg.experiment = sub->get_name();
        if (o.config) {
            Json doc;
            try {
                doc = Json::parse(read_file(*o.config));
            } catch (const Json::exception& e) {
                throw UsageError("cannot parse config '" + *o.config + "': " + e.what());
            }
            cfg = config_from_json(doc, sub->get_name());
        }
        apply(o, cfg);
        cfg = resolve(std::move(cfg));
        return dispatch(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace unilearn::cli

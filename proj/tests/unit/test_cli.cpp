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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "unilearn/ansatz.hpp"
#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("unilearn_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int invoke(std::vector<std::string> args) {
        args.insert(args.begin(), "unilearn");
        std::vector<char*> argv;
        for (auto& a : args) {
            argv.push_back(a.data());
        }
        out_.str("");
        err_.str("");
        return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    Json load(const std::string& rel) const { return Json::parse(read_file(dir_ / rel)); }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, GenDatasetExamples) {
    ASSERT_EQ(invoke({"gen-dataset", "--family", "D1", "--n", "3", "--output-dir", path("d1")}), kExitOk) << err_.str();
    EXPECT_EQ(load("d1/dataset.json").at("pairs").size(), 4u);
    ASSERT_EQ(invoke({"gen-dataset", "--family", "ORTHOBASIS", "--n", "2", "--output-dir", path("ortho")}), kExitOk);
    EXPECT_EQ(load("ortho/dataset.json").at("pairs").size(), 4u);
    ASSERT_EQ(invoke({"gen-dataset", "--family", "D2", "--n", "3", "--dataset-seed", "7", "--output-dir", path("a")}), kExitOk);
    ASSERT_EQ(invoke({"gen-dataset", "--family", "D2", "--n", "3", "--dataset-seed", "7", "--output-dir", path("b")}), kExitOk);
    EXPECT_EQ(load("a/dataset.json").at("pairs").size(), 2u);
    EXPECT_EQ(read_file(dir_ / "a/dataset.json"), read_file(dir_ / "b/dataset.json"));
    EXPECT_EQ(load("a/dataset.json").at("provenance").at("seed"), 7);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}), kExitUsage);
    EXPECT_EQ(invoke({"train", "--no-such-flag"}), kExitUsage);
    EXPECT_EQ(invoke({"gen-dataset", "--family", "D3", "--output-dir", path("x")}), kExitUsage);
    EXPECT_EQ(invoke({"train", "--epochs", "0", "--output-dir", path("x")}), kExitUsage);
    EXPECT_EQ(invoke({"train", "--n", "2", "--output-dir", path("x")}), kExitUsage); // Heisenberg needs n >= 3
    EXPECT_EQ(invoke({"risk", "--output-dir", path("x")}), kExitUsage);            // no model
    EXPECT_EQ(invoke({"train", "--config", path("missing.json")}), kExitNumerical);
    EXPECT_EQ(invoke({"--help"}), kExitOk);
}

TEST_F(CliTest, ConfigRejectsUnknownFields) {
    for (const Json& bad : {Json{{"n", 3}, {"colour", "red"}}, Json{{"dataset", {{"family", "D1"}, {"size", 3}}}},
                            Json{{"train", {{"momentum", 0.9}}}}, Json{{"experiment", "grover"}}}) {
        write_file_atomic(dir_ / "cfg.json", bad.dump());
        EXPECT_EQ(invoke({"train", "--config", path("cfg.json"), "--output-dir", path("out")}), kExitUsage) << bad.dump();
    }
    EXPECT_THROW(config_from_json(Json{{"target", {{"knd", "haar"}}}}, "train"), UsageError);
}

TEST_F(CliTest, FlagsOverrideFile) {
    const Json cfg{{"experiment", "train"},
                   {"n", 2},
                   {"d", 2},
                   {"target", {{"kind", "haar"}, {"seed", 5}}},
                   {"train", {{"epochs", 7}, {"lr", 0.2}}},
                   {"output_dir", path("from_file")}};
    write_file_atomic(dir_ / "cfg.json", cfg.dump());
    ASSERT_EQ(invoke({"train", "--config", path("cfg.json"), "--epochs", "3", "--output-dir", path("flag")}), kExitOk)
        << err_.str();
    EXPECT_FALSE(fs::exists(dir_ / "from_file"));
    const Json resolved = load("flag/config.resolved.json");
    EXPECT_EQ(resolved.at("train").at("epochs"), 3);
    EXPECT_EQ(resolved.at("train").at("lr"), 0.2);
    EXPECT_EQ(resolved.at("target").at("seed"), 5);
    EXPECT_EQ(load("flag/train_result.json").at("epochs_run"), 3);
}

TEST_F(CliTest, TrainOutputsAndManifest) {
    ASSERT_EQ(invoke({"train", "--n", "3", "--epochs", "20", "--plot", "--output-dir", path("run")}), kExitOk) << err_.str();
    for (const char* f : {"train_log.csv", "params.json", "model_circuit.json", "risk_report.json", "train_result.json",
                          "loss_curve.svg", "config.resolved.json", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir_ / "run" / f)) << f;
    }
    const Json manifest = load("run/manifest.json");
    std::vector<std::string> listed;
    for (const Json& f : manifest.at("files")) {
        listed.push_back(f.at("name"));
        EXPECT_EQ(f.at("bytes").get<std::size_t>(), fs::file_size(dir_ / "run" / f.at("name").get<std::string>()));
    }
    EXPECT_EQ(listed.size(), 7u);
    EXPECT_FALSE(manifest.contains("wall_ms"));
    EXPECT_EQ(manifest.at("seeds").at("train"), 0);
    EXPECT_EQ(manifest.at("config").at("experiment"), "train");
    const std::string csv = read_file(dir_ / "run/train_log.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
    EXPECT_EQ(load("run/train_result.json").at("gate_count").at("total"), 96);
    EXPECT_EQ(load("run/risk_report.json").at("loss"), "TRACE_SQ");

    // The manifest alone reproduces the run.
    const std::string first = read_file(dir_ / "run/train_log.csv");
    fs::remove(dir_ / "run/train_log.csv");
    ASSERT_EQ(invoke({"train", "--config", path("run/manifest.json")}), kExitOk) << err_.str();
    EXPECT_EQ(read_file(dir_ / "run/train_log.csv"), first);
}

TEST_F(CliTest, TimingIsOptIn) {
    ASSERT_EQ(invoke({"train", "--epochs", "3", "--timing", "--output-dir", path("t")}), kExitOk);
    EXPECT_TRUE(load("t/manifest.json").contains("wall_ms"));
}

TEST_F(CliTest, PlantedTargetStartsAtZero) {
    std::vector<double> theta(18);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] = 0.1 * static_cast<double>(i) + 0.05;
    }
    write_file_atomic(dir_ / "target.json", circuit_to_json(build_ansatz({3, 2}, theta)).dump());
    const Json cfg{{"n", 3},
                   {"d", 2},
                   {"target", {{"kind", "circuit-file"}, {"path", path("target.json")}}},
                   {"train", {{"epochs", 5}, {"initial_params", theta}}}};
    write_file_atomic(dir_ / "cfg.json", cfg.dump());
    ASSERT_EQ(invoke({"train", "--config", path("cfg.json"), "--output-dir", path("planted")}), kExitOk) << err_.str();
    const std::string csv = read_file(dir_ / "planted/train_log.csv");
    std::istringstream lines(csv);
    std::string header, row0;
    std::getline(lines, header);
    std::getline(lines, row0);
    const double risk0 = std::stod(row0.substr(row0.find(',') + 1));
    EXPECT_LT(risk0, 1e-12);
}

TEST_F(CliTest, RiskCommandReadsTrainParams) {
    ASSERT_EQ(invoke({"train", "--epochs", "50", "--output-dir", path("tr")}), kExitOk);
    ASSERT_EQ(invoke({"risk", "--model", path("tr/params.json"), "--mc-samples", "500", "--output-dir", path("rk")}), kExitOk)
        << err_.str();
    const Json r = load("rk/risk_report.json");
    EXPECT_NEAR(r.at("quantum_risk_closed").get<double>(),
                load("tr/train_result.json").at("final_quantum_risk").get<double>(), 1e-12);
    EXPECT_EQ(r.at("quantum_risk_mc").at("samples"), 500);
}

TEST_F(CliTest, HamsimDefaults) {
    ASSERT_EQ(invoke({"hamsim", "--n", "3", "--output-dir", path("h")}), kExitOk) << err_.str();
    std::istringstream csv(read_file(dir_ / "h/hamsim_comparison.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    EXPECT_EQ(header, "n,trotter_gates,pqc_gates,trotter_fidelity,pqc_quantum_risk");
    std::vector<std::string> cells;
    std::istringstream rs(row);
    for (std::string c; std::getline(rs, c, ',');) {
        cells.push_back(c);
    }
    ASSERT_EQ(cells.size(), 5u);
    EXPECT_EQ(cells[2], "96");
    EXPECT_GE(std::stod(cells[3]), 0.999);
    EXPECT_GE(std::stod(cells[1]) / std::stod(cells[2]), 10.0);
    EXPECT_TRUE(fs::exists(dir_ / "h/trotter_plan_n3.json"));
}

TEST_F(CliTest, GroverExactColumn) {
    ASSERT_EQ(invoke({"grover", "--ns", "3", "4", "--no-compile", "--output-dir", path("g")}), kExitOk) << err_.str();
    std::istringstream csv(read_file(dir_ / "g/grover_table.csv"));
    std::string header, r3, r4;
    std::getline(csv, header);
    std::getline(csv, r3);
    std::getline(csv, r4);
    EXPECT_EQ(header, "n,exact_success,compiled_d1_success,compiled_d2_success_mean,compiled_d2_success_min,"
                      "compiled_d2_success_max");
    EXPECT_NEAR(std::stod(r3.substr(2)), 0.94531250, 1e-8);
    EXPECT_NEAR(std::stod(r4.substr(2)), 0.96131897, 1e-8);
}

TEST_F(CliTest, GroverCompiledColumnsSmall) {
    ASSERT_EQ(invoke({"grover", "--ns", "3", "--d2-seeds", "2", "--output-dir", path("g")}), kExitOk) << err_.str();
    const Json runs = load("g/grover_runs.json");
    ASSERT_EQ(runs.size(), 3u);
    EXPECT_EQ(runs[0].at("family"), "D1");
    EXPECT_EQ(runs[2].at("dataset_seed"), 1);
}

TEST_F(CliTest, VerifySmallSuitePasses) {
    ASSERT_EQ(invoke({"verify", "--max-n", "3", "--mc-pairs", "6", "--mc-samples", "2000", "--d2-seeds", "3",
                      "--output-dir", path("v")}),
              kExitOk)
        << out_.str();
    const Json report = load("v/verify_report.json");
    EXPECT_TRUE(report.at("all_pass").get<bool>());
    bool found = false;
    for (const Json& c : report.at("checks")) {
        if (c.at("name") == "commutant D1 n=3") {
            found = true;
            EXPECT_EQ(c.at("observed"), 1);
        }
        if (c.at("name") == "worst case orthobasis n=3") {
            EXPECT_NEAR(c.at("observed").at("quantum_risk").get<double>(), 8.0 / 9.0, 1e-12);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(fs::exists(dir_ / "v/verify_summary.txt"));
}

TEST_F(CliTest, ExecutableRunsAreByteIdentical) {
    const std::string exe = UNILEARN_CLI_PATH;
    const std::string out = path("det");
    const std::string cmd = exe + " train --epochs 30 --family D2 --seed 4 --plot --output-dir " + out + " > /dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::vector<std::pair<std::string, std::string>> first;
    for (const auto& e : fs::directory_iterator(out)) {
        first.emplace_back(e.path().filename().string(), read_file(e.path()));
    }
    fs::remove_all(out);
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    for (const auto& [name, body] : first) {
        EXPECT_EQ(read_file(fs::path(out) / name), body) << name;
    }
    EXPECT_EQ(first.size(), 8u);
}

} // namespace
} // namespace unilearn::cli

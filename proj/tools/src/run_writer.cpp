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

#include <cstdio>

#include "unilearn/metrics.hpp"
#include "unilearn/random.hpp"
#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

} // namespace

RunWriter::RunWriter(std::filesystem::path dir, const ExperimentConfig& cfg)
    : dir_(std::move(dir)), config_(config_to_json(cfg)) {
    add_json("config.resolved.json", config_);
}

void RunWriter::add(const std::string& name, std::string content) {
    for (auto& [existing, body] : files_) {
        if (existing == name) {
            body = std::move(content);
            return;
        }
    }
    files_.emplace_back(name, std::move(content));
}

void RunWriter::add_json(const std::string& name, const Json& j) { add(name, j.dump(2) + "\n"); }

void RunWriter::commit() {
    Json listing = Json::array();
    for (const auto& [name, body] : files_) {
        write_file_atomic(dir_ / name, body);
        listing.push_back(Json{{"name", name}, {"bytes", body.size()}, {"fnv1a64", hex64(fnv1a64(body))}});
    }
    Json manifest{{"manifest_version", 1},
                  {"tool", "unilearn"},
                  {"version", std::string(kVersion)},
                  {"command", config_.at("experiment")},
                  {"status", status_},
                  {"config", config_},
                  {"seeds", seeds_},
                  {"rng_algorithm", std::string(RngStream::kAlgorithm)},
                  {"gate_fidelity", "|tr(U^dagger V)| / N"},
                  {"trace_distance", "(1/2) ||rho - sigma||_1"},
                  {"files", listing},
                  {"reproduce", "unilearn " + config_.at("experiment").get<std::string>() + " --config manifest.json"}};
    if (wall_ms_) {
        manifest["wall_ms"] = *wall_ms_;
    }
    write_file_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace unilearn::cli

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
#include <utility>
#include <vector>

#include "unilearn/linalg.hpp"
#include "unilearn/random.hpp"
#include "unilearn/serialize.hpp"

namespace unilearn {

enum class DatasetFamily { ORTHOBASIS, NONORTH_PURE, D1, D2, CUSTOM };

std::string_view to_string(DatasetFamily f);
DatasetFamily dataset_family_from_string(std::string_view name);

struct Provenance {
    std::optional<std::uint64_t> seed;
    std::vector<std::string> stream_labels;
    std::string target_hash;
    Json params = Json::object(); // family-specific settings (t, delta, ...)
};

/// (input, U input U^dagger). The label relation is checked by label_dataset.
struct LabeledPair {
    DensityMatrix input;
    DensityMatrix label;
};

struct Dataset {
    int n = 1;
    DatasetFamily family = DatasetFamily::CUSTOM;
    std::vector<LabeledPair> pairs;
    Provenance provenance;

    std::size_t size() const { return pairs.size(); }
};

/// Validation thresholds for the structural dataset checks.
struct DatasetTolerances {
    double eigen_gap = 1e-8;       // D2 nondegeneracy and full rank
    double overlap = 1e-8;         // D2 pairwise eigenvector overlaps
    double gram_singular = 1e-8;   // nonorthogonal pure: Gram nonsingular
    double gram_offdiag = 1e-10;   // nonorthogonal pure: pairwise nonorthogonal
};

/// [|+><+|^{(x)n}, tau^{(x)(j-1)} (x) |0><0| (x) tau^{(x)(n-j)} for j = 1..n].
std::vector<DensityMatrix> build_d1(int n);

/// Two independent Hilbert-Schmidt states that satisfy the two-state
/// sufficiency conditions (full rank, nondegenerate, pairwise nonorthogonal
/// eigenvectors). Draws from streams "d2-a" and "d2-b" of `seed`.
std::pair<DensityMatrix, DensityMatrix> build_d2(int n, std::uint64_t seed, const DatasetTolerances& tol = {});

/// Computational-basis projectors |j><j|, j = 0 .. 2^n - 1.
std::vector<DensityMatrix> build_orthobasis(int n);

/// |x_j> proportional to |j> + delta |+>^{(x)n}, j = 0 .. t-1.
std::vector<DensityMatrix> build_nonorth_pure(int n, int t, double delta = 0.5, const DatasetTolerances& tol = {});

/// Pairs every state with U rho U^dagger.
Dataset label_dataset(const std::vector<DensityMatrix>& states, const UnitaryMatrix& target, DatasetFamily family,
                      Provenance provenance = {});

struct CommutantReport {
    int dimension = 0;
    RealVector singular_values; // descending
    double threshold = 0.0;     // absolute cut applied to singular_values
};

/// Dimension of {M : M rho_i = rho_i M for all i}, as the nullity of the
/// stacked operators I (x) rho_i - rho_i^T (x) I, with singular values below
/// rel_threshold * sigma_max counted as zero.
CommutantReport commutant(const std::vector<DensityMatrix>& states, double rel_threshold = 1e-8);
int commutant_dimension(const std::vector<DensityMatrix>& states, double rel_threshold = 1e-8);

Json dataset_to_json(const Dataset& d);
Dataset dataset_from_json(const Json& j);

} // namespace unilearn

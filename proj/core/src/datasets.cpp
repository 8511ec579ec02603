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

#include "unilearn/datasets.hpp"

#include <array>
#include <cmath>
#include <string>

#include "unilearn/error.hpp"

namespace unilearn {

namespace {

constexpr std::array<std::pair<DatasetFamily, std::string_view>, 5> kFamilyNames{{
    {DatasetFamily::ORTHOBASIS, "ORTHOBASIS"},
    {DatasetFamily::NONORTH_PURE, "NONORTH_PURE"},
    {DatasetFamily::D1, "D1"},
    {DatasetFamily::D2, "D2"},
    {DatasetFamily::CUSTOM, "CUSTOM"},
}};

Eigen::Index dim_for(int n) {
    if (n < 1 || n > 12) {
        throw DimensionError("dataset qubit count must be in 1..12");
    }
    return Eigen::Index{1} << n;
}

ComplexVector plus_state(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    return ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

// Smallest |<x_j|y_k>| over the two eigenbases.
double min_eigvec_overlap(const DensityMatrix& a, const DensityMatrix& b) {
    const ComplexMatrix qa = herm_eig(a.matrix()).vectors.matrix();
    const ComplexMatrix qb = herm_eig(b.matrix()).vectors.matrix();
    return (qa.adjoint() * qb).cwiseAbs().minCoeff();
}

double min_gap(const DensityMatrix& rho) {
    const RealVector eig = hermitian_eigenvalues(rho.matrix());
    double gap = eig(0);
    for (Eigen::Index i = 1; i < eig.size(); ++i) {
        gap = std::min(gap, eig(i) - eig(i - 1));
    }
    return gap;
}

} // namespace

std::string_view to_string(DatasetFamily f) {
    for (const auto& [k, name] : kFamilyNames) {
        if (k == f) {
            return name;
        }
    }
    return "?";
}

DatasetFamily dataset_family_from_string(std::string_view name) {
    for (const auto& [k, known] : kFamilyNames) {
        if (known == name) {
            return k;
        }
    }
    throw ValidationError("unknown dataset family '" + std::string(name) + "'");
}

std::vector<DensityMatrix> build_d1(int n) {
    dim_for(n);
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(DensityMatrix::from_pure(plus_state(n)));
    const ComplexMatrix tau = ComplexMatrix::Identity(2, 2) * 0.5;
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    for (int j = 1; j <= n; ++j) {
        std::vector<ComplexMatrix> factors(static_cast<std::size_t>(n), tau);
        factors[static_cast<std::size_t>(j - 1)] = zero;
        out.emplace_back(kron_all(factors));
    }
    return out;
}

std::pair<DensityMatrix, DensityMatrix> build_d2(int n, std::uint64_t seed, const DatasetTolerances& tol) {
    dim_for(n);
    RngStream stream_a(seed, "d2-a");
    RngStream stream_b(seed, "d2-b");
    constexpr int kMaxAttempts = 17;
    std::string last_failure;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        DensityMatrix rho = hs_random_density(n, stream_a, tol.eigen_gap);
        DensityMatrix sigma = hs_random_density(n, stream_b, tol.eigen_gap);
        const double gap = std::min(min_gap(rho), min_gap(sigma));
        const double overlap = min_eigvec_overlap(rho, sigma);
        if (gap > tol.eigen_gap && overlap > tol.overlap) {
            return {std::move(rho), std::move(sigma)};
        }
        last_failure = "min eigenvalue gap " + std::to_string(gap) + ", min eigenvector overlap " +
                       std::to_string(overlap);
    }
    throw NumericalError("build_d2: validation failed after 16 resamples (" + last_failure + ")");
}

std::vector<DensityMatrix> build_orthobasis(int n) {
    const Eigen::Index dim = dim_for(n);
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        out.push_back(DensityMatrix::basis_projector(dim, j));
    }
    return out;
}

std::vector<DensityMatrix> build_nonorth_pure(int n, int t, double delta, const DatasetTolerances& tol) {
    const Eigen::Index dim = dim_for(n);
    if (t < 1 || t > dim) {
        throw ValidationError("nonorthogonal pure family needs 1 <= t <= 2^n");
    }
    const ComplexVector plus = plus_state(n);
    ComplexMatrix vecs(dim, t);
    for (int j = 0; j < t; ++j) {
        ComplexVector v = delta * plus;
        v(j) += 1.0;
        vecs.col(j) = v / v.norm();
    }
    const ComplexMatrix gram = vecs.adjoint() * vecs;
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(gram).singularValues();
    if (!(sv(sv.size() - 1) > tol.gram_singular)) {
        throw ValidationError("nonorthogonal pure family: Gram matrix is singular");
    }
    for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) {
            if (a != b && !(std::abs(gram(a, b)) > tol.gram_offdiag)) {
                throw ValidationError("nonorthogonal pure family: states " + std::to_string(a) + " and " +
                                      std::to_string(b) + " are orthogonal");
            }
        }
    }
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<std::size_t>(t));
    for (int j = 0; j < t; ++j) {
        out.push_back(DensityMatrix::from_pure(vecs.col(j)));
    }
    return out;
}

Dataset label_dataset(const std::vector<DensityMatrix>& states, const UnitaryMatrix& target, DatasetFamily family,
                      Provenance provenance) {
    if (states.empty()) {
        throw ValidationError("label_dataset: no states");
    }
    Dataset d;
    d.n = target.num_qubits();
    d.family = family;
    if (provenance.target_hash.empty()) {
        provenance.target_hash = matrix_hash(target.matrix());
    }
    d.provenance = std::move(provenance);
    for (const auto& rho : states) {
        if (rho.dim() != target.dim()) {
            throw DimensionError("label_dataset: state and target dimensions differ");
        }
        DensityMatrix label = rho.conjugated(target);
        const ComplexMatrix check = target.matrix().adjoint() * label.matrix() * target.matrix();
        if (max_abs(check - rho.matrix()) > 1e-9) {
            throw ValidationError("label_dataset: label is not U rho U^dagger");
        }
        d.pairs.push_back({rho, std::move(label)});
    }
    return d;
}

CommutantReport commutant(const std::vector<DensityMatrix>& states, double rel_threshold) {
    if (states.empty()) {
        throw ValidationError("commutant: empty state list");
    }
    const Eigen::Index dim = states.front().dim();
    const Eigen::Index sq = dim * dim;
    ComplexMatrix stacked(sq * static_cast<Eigen::Index>(states.size()), sq);
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != dim) {
            throw DimensionError("commutant: states have different dimensions");
        }
        const ComplexMatrix& rho = states[i].matrix();
        // Column-major vec: vec(M rho - rho M) = (rho^T (x) I - I (x) rho) vec(M).
        stacked.middleRows(static_cast<Eigen::Index>(i) * sq, sq) = kron(id, rho) - kron(rho.transpose(), id);
    }
    Eigen::BDCSVD<ComplexMatrix> svd(stacked);
    CommutantReport report;
    report.singular_values = svd.singularValues();
    const double largest = report.singular_values.size() ? report.singular_values(0) : 0.0;
    report.threshold = rel_threshold * largest;
    int rank = 0;
    for (Eigen::Index k = 0; k < report.singular_values.size(); ++k) {
        if (report.singular_values(k) > report.threshold) {
            ++rank;
        }
    }
    report.dimension = static_cast<int>(sq) - rank;
    return report;
}

int commutant_dimension(const std::vector<DensityMatrix>& states, double rel_threshold) {
    return commutant(states, rel_threshold).dimension;
}

Json dataset_to_json(const Dataset& d) {
    Json pairs = Json::array();
    for (const auto& p : d.pairs) {
        pairs.push_back(Json{{"input", matrix_to_json(p.input.matrix())}, {"label", matrix_to_json(p.label.matrix())}});
    }
    Json prov{{"stream_labels", d.provenance.stream_labels},
              {"target_hash", d.provenance.target_hash},
              {"params", d.provenance.params}};
    prov["seed"] = d.provenance.seed ? Json(*d.provenance.seed) : Json(nullptr);
    return Json{{"n", d.n}, {"family", std::string(to_string(d.family))}, {"provenance", std::move(prov)},
                {"pairs", std::move(pairs)}};
}

Dataset dataset_from_json(const Json& j) {
    Dataset d;
    d.n = j.at("n").get<int>();
    d.family = dataset_family_from_string(j.at("family").get<std::string>());
    if (j.contains("provenance")) {
        const Json& p = j.at("provenance");
        if (p.contains("seed") && !p.at("seed").is_null()) {
            d.provenance.seed = p.at("seed").get<std::uint64_t>();
        }
        d.provenance.stream_labels = p.value("stream_labels", std::vector<std::string>{});
        d.provenance.target_hash = p.value("target_hash", std::string{});
        d.provenance.params = p.value("params", Json::object());
    }
    const Eigen::Index dim = Eigen::Index{1} << d.n;
    for (const Json& pair : j.at("pairs")) {
        DensityMatrix in(matrix_from_json(pair.at("input")));
        DensityMatrix label(matrix_from_json(pair.at("label")));
        if (in.dim() != dim || label.dim() != dim) {
            throw DimensionError("dataset JSON: pair dimension does not match n");
        }
        d.pairs.push_back({std::move(in), std::move(label)});
    }
    return d;
}

} // namespace unilearn

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

#include <cmath>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "test_helpers.hpp"
#include "unilearn/datasets.hpp"
#include "unilearn/error.hpp"
#include "unilearn/random.hpp"

namespace unilearn {
namespace {

using testing::MatrixNear;

// Oracle: columns are vec([E_ab, rho_i]) stacked over i, for every matrix
// unit E_ab; nullity from a full-pivot LU rank.
int commutant_oracle(const std::vector<DensityMatrix>& states) {
    const Eigen::Index dim = states.front().dim();
    const Eigen::Index dd = dim * dim;
    ComplexMatrix a(dd * static_cast<Eigen::Index>(states.size()), dd);
    for (Eigen::Index col = 0; col < dd; ++col) {
        ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
        e(col / dim, col % dim) = 1.0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            const ComplexMatrix comm = e * states[i].matrix() - states[i].matrix() * e;
            a.block(static_cast<Eigen::Index>(i) * dd, col, dd, 1) = comm.reshaped();
        }
    }
    Eigen::FullPivLU<ComplexMatrix> lu(a);
    lu.setThreshold(1e-9);
    return static_cast<int>(dd - lu.rank());
}

TEST(BuildD1, Examples) {
    const auto one = build_d1(1);
    ASSERT_EQ(one.size(), 2u);
    ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
    EXPECT_TRUE(MatrixNear(one[0].matrix(), plus, 1e-15));
    EXPECT_TRUE(MatrixNear(one[1].matrix(), DensityMatrix::basis_projector(2, 0).matrix(), 0.0));

    const auto two = build_d1(2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_TRUE(MatrixNear(two[1].matrix(), Eigen::Vector4cd(0.5, 0.5, 0, 0).asDiagonal().toDenseMatrix(), 1e-15));
    EXPECT_TRUE(MatrixNear(two[2].matrix(), Eigen::Vector4cd(0.5, 0, 0.5, 0).asDiagonal().toDenseMatrix(), 1e-15));
}

TEST(BuildD1, PurityAndRankStructure) {
    for (int n = 1; n <= 5; ++n) {
        const auto d1 = build_d1(n);
        ASSERT_EQ(d1.size(), static_cast<std::size_t>(n + 1));
        EXPECT_TRUE(MatrixNear(d1[0].matrix() * d1[0].matrix(), d1[0].matrix(), 1e-12));
        const double level = std::ldexp(1.0, -(n - 1));
        for (int j = 1; j <= n; ++j) {
            const RealVector eig = hermitian_eigenvalues(d1[j].matrix());
            int nonzero = 0;
            for (Eigen::Index k = 0; k < eig.size(); ++k) {
                if (std::abs(eig(k)) > 1e-12) {
                    ++nonzero;
                    EXPECT_NEAR(eig(k), level, 1e-12);
                }
            }
            EXPECT_EQ(nonzero, 1 << (n - 1));
        }
    }
}

TEST(BuildD2, ValidAndReproducible) {
    const auto [a, b] = build_d2(3, 7);
    const auto [c, d] = build_d2(3, 7);
    EXPECT_EQ(a.matrix(), c.matrix());
    EXPECT_EQ(b.matrix(), d.matrix());
    EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GT(hermitian_eigenvalues(a.matrix())(0), 1e-8);
    EXPECT_NE(a.matrix(), build_d2(3, 8).first.matrix());
    const ComplexMatrix qa = herm_eig(a.matrix()).vectors.matrix();
    const ComplexMatrix qb = herm_eig(b.matrix()).vectors.matrix();
    EXPECT_GT((qa.adjoint() * qb).cwiseAbs().minCoeff(), 1e-8);
}

TEST(BuildD2, ImpossibleTolerancesFailAfterResamples) {
    DatasetTolerances strict;
    strict.eigen_gap = 0.5;
    EXPECT_THROW(build_d2(2, 1, strict), NumericalError);
}

TEST(BuildOrthobasis, OrthogonalAndComplete) {
    for (int n = 1; n <= 3; ++n) {
        const auto basis = build_orthobasis(n);
        ASSERT_EQ(basis.size(), std::size_t{1} << n);
        ComplexMatrix sum = ComplexMatrix::Zero(1 << n, 1 << n);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            sum += basis[i].matrix();
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                EXPECT_EQ(max_abs(basis[i].matrix() * basis[j].matrix()), 0.0);
            }
        }
        EXPECT_TRUE(MatrixNear(sum, ComplexMatrix::Identity(1 << n, 1 << n), 0.0));
    }
}

TEST(BuildNonorthPure, Examples) {
    const auto two = build_nonorth_pure(1, 2, 0.5);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_GT(std::abs((two[0].matrix() * two[1].matrix()).trace()), 1e-3);

    for (int n = 1; n <= 3; ++n) {
        const int t = 1 << n;
        const auto states = build_nonorth_pure(n, t);
        // Oracle: Gram matrix of the unnormalized vectors |j> + delta |+>^n.
        ComplexMatrix vecs(t, t);
        for (int j = 0; j < t; ++j) {
            vecs.col(j) = ComplexVector::Constant(t, 0.5 / std::sqrt(static_cast<double>(t)));
            vecs(j, j) += 1.0;
            vecs.col(j).normalize();
            EXPECT_TRUE(MatrixNear(states[j].matrix(), testing::projector(vecs.col(j)), 1e-12));
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(vecs.adjoint() * vecs);
        EXPECT_GT(svd.singularValues().minCoeff(), 1e-8);
    }
    EXPECT_THROW(build_nonorth_pure(2, 2, 0.0), ValidationError);
    EXPECT_THROW(build_nonorth_pure(2, 5), ValidationError);
    EXPECT_THROW(build_nonorth_pure(2, 0), ValidationError);
}

TEST(LabelDataset, Examples) {
    const auto states = build_d1(2);
    const Dataset same = label_dataset(states, UnitaryMatrix::identity(4), DatasetFamily::D1);
    for (const auto& p : same.pairs) {
        EXPECT_TRUE(MatrixNear(p.label.matrix(), p.input.matrix(), 0.0));
    }

    const UnitaryMatrix x1(kron(pauli::X(), pauli::I()));
    const Dataset flipped = label_dataset(build_orthobasis(2), x1, DatasetFamily::ORTHOBASIS);
    const int image[4] = {2, 3, 0, 1};
    for (int j = 0; j < 4; ++j) {
        EXPECT_TRUE(MatrixNear(flipped.pairs[j].label.matrix(), DensityMatrix::basis_projector(4, image[j]).matrix(), 1e-15));
    }
    EXPECT_EQ(flipped.provenance.target_hash.size(), 16u);
    EXPECT_THROW(label_dataset(states, UnitaryMatrix::identity(8), DatasetFamily::D1), DimensionError);
    EXPECT_THROW(label_dataset({}, UnitaryMatrix::identity(4), DatasetFamily::D1), ValidationError);
}

TEST(LabelDataset, PreservesSpectra) {
    RngStream rng(3, "label-spectra");
    for (int trial = 0; trial < 10; ++trial) {
        const UnitaryMatrix u = haar_unitary(3, rng);
        const auto [a, b] = build_d2(3, static_cast<std::uint64_t>(trial));
        const Dataset ds = label_dataset({a, b}, u, DatasetFamily::D2);
        for (const auto& p : ds.pairs) {
            EXPECT_LT((hermitian_eigenvalues(p.input.matrix()) - hermitian_eigenvalues(p.label.matrix())).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST(Commutant, Examples) {
    auto d1 = build_d1(2);
    const std::vector<DensityMatrix> without_plus(d1.begin() + 1, d1.end());
    EXPECT_EQ(commutant_dimension(without_plus), 4);
    EXPECT_EQ(commutant_dimension(d1), 1);
    RngStream rng(5, "commutant-single");
    EXPECT_EQ(commutant_dimension({hs_random_density(2, rng)}), 4);
    EXPECT_THROW(commutant_dimension({}), ValidationError);
    EXPECT_THROW(commutant_dimension({d1[0], DensityMatrix::maximally_mixed(8)}), DimensionError);
}

TEST(Commutant, SufficiencyStatementsUpToFourQubits) {
    for (int n = 1; n <= 4; ++n) {
        const int full = 1 << n;
        auto d1 = build_d1(n);
        const std::vector<DensityMatrix> without_plus(d1.begin() + 1, d1.end());
        EXPECT_EQ(commutant_dimension(build_orthobasis(n)), full) << n;
        EXPECT_EQ(commutant_dimension(d1), 1) << n;
        EXPECT_EQ(commutant_dimension(without_plus), full) << n;
        for (std::uint64_t seed = 0; seed < (n <= 3 ? 20u : 5u); ++seed) {
            const auto [a, b] = build_d2(n, seed);
            EXPECT_EQ(commutant_dimension({a, b}), 1) << n << " seed " << seed;
        }
    }
}

TEST(Commutant, MatchesIndependentOracle) {
    RngStream rng(6, "commutant-oracle");
    for (int n = 1; n <= 3; ++n) {
        auto d1 = build_d1(n);
        const std::vector<DensityMatrix> without_plus(d1.begin() + 1, d1.end());
        const auto [a, b] = build_d2(n, 11);
        for (const auto& set : {d1, without_plus, build_orthobasis(n), std::vector<DensityMatrix>{a, b},
                                std::vector<DensityMatrix>{hs_random_density(n, rng)},
                                std::vector<DensityMatrix>{DensityMatrix::maximally_mixed(1 << n)}}) {
            EXPECT_EQ(commutant_dimension(set), commutant_oracle(set));
        }
    }
}

TEST(Commutant, ThresholdSeparation) {
    // The smallest kept singular value is at least 1e6 times the largest null one.
    for (int n = 2; n <= 4; ++n) {
        const auto [a, b] = build_d2(n, 3);
        for (const auto& set : {build_d1(n), std::vector<DensityMatrix>{a, b}, build_orthobasis(n)}) {
            const CommutantReport r = commutant(set);
            const RealVector& sv = r.singular_values;
            const Eigen::Index null_start = sv.size() - r.dimension;
            ASSERT_GT(null_start, 0);
            EXPECT_GT(sv(null_start - 1), r.threshold);
            if (r.dimension > 0) {
                EXPECT_LT(sv(null_start), r.threshold);
                EXPECT_GT(sv(null_start - 1), 1e6 * sv(null_start));
            }
        }
    }
}

TEST(DatasetJson, RoundTrip) {
    const auto [a, b] = build_d2(2, 4);
    RngStream rng(7, "ds-json");
    Provenance prov;
    prov.seed = 4;
    prov.stream_labels = {"d2-a", "d2-b"};
    const Dataset ds = label_dataset({a, b}, haar_unitary(2, rng), DatasetFamily::D2, prov);
    const Json j = dataset_to_json(ds);
    const Dataset back = dataset_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.n, 2);
    EXPECT_EQ(back.family, DatasetFamily::D2);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back.pairs[1].label.matrix(), ds.pairs[1].label.matrix());
    EXPECT_EQ(back.provenance.seed, std::optional<std::uint64_t>(4));
    EXPECT_EQ(dataset_to_json(back).dump(), j.dump());
    EXPECT_THROW(dataset_family_from_string("D3"), ValidationError);
}

} // namespace
} // namespace unilearn

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

#include "unilearn/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unilearn/error.hpp"

namespace unilearn {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)), engine_(splitmix64(seed ^ fnv1a64(label_))) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

Complex RngStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

RngStream RngStream::split(std::string_view sublabel) const {
    return RngStream(seed_, label_ + "/" + std::string(sublabel));
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
    ComplexMatrix g(rows, cols);
    // Row-major fill so the draw order matches the serialization order.
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

namespace {
Eigen::Index dimension_for(int n) {
    if (n < 1 || n > 20) {
        throw DimensionError("qubit count must be in 1..20, got " + std::to_string(n));
    }
    return Eigen::Index{1} << n;
}
} // namespace

UnitaryMatrix haar_unitary(int n, RngStream& rng) {
    const Eigen::Index dim = dimension_for(n);
    const ComplexMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0);
    }
    return UnitaryMatrix(std::move(q));
}

ComplexVector haar_state_vector(int n, RngStream& rng) {
    const Eigen::Index dim = dimension_for(n);
    ComplexVector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        psi(i) = rng.complex_normal();
    }
    return psi / psi.norm();
}

DensityMatrix haar_pure_state(int n, RngStream& rng) {
    return DensityMatrix::from_pure(haar_state_vector(n, rng));
}

DensityMatrix hs_random_density(int n, RngStream& rng, double gap_tol) {
    const Eigen::Index dim = dimension_for(n);
    constexpr int kMaxAttempts = 17; // first draw plus 16 resamples
    double worst_gap = 0.0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix g = ginibre(dim, dim, rng);
        ComplexMatrix w = g * g.adjoint();
        w = 0.5 * (w + w.adjoint()).eval();
        w /= w.trace().real();
        const RealVector eig = hermitian_eigenvalues(w);
        double gap = eig(0);
        for (Eigen::Index i = 1; i < eig.size(); ++i) {
            gap = std::min(gap, eig(i) - eig(i - 1));
        }
        if (gap > gap_tol) {
            return DensityMatrix(std::move(w));
        }
        worst_gap = gap;
    }
    throw NumericalError("hs_random_density: spectrum degenerate after 16 resamples (last gap " +
                         std::to_string(worst_gap) + ")");
}

} // namespace unilearn

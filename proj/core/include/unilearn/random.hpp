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
#include <random>
#include <string>
#include <string_view>

#include "unilearn/linalg.hpp"

namespace unilearn {

/// Labeled deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. It is seeded with splitmix64(seed ^ fnv1a64(label)), so the pair
/// (seed, label) fully determines the sequence. Uniform and normal variates
/// are derived here rather than through std:: distributions, which differ
/// between standard library implementations.
class RngStream {
  public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64(seed^fnv1a64(label))";

    RngStream(std::uint64_t seed, std::string label);

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller).
    double normal();
    /// Circular complex Gaussian with E|z|^2 = 1.
    Complex complex_normal();

    /// Independent child stream; depends only on (seed, label, sublabel),
    /// never on how much of this stream has been consumed.
    RngStream split(std::string_view sublabel) const;

  private:
    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);

/// rows x cols matrix of iid circular complex Gaussians.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

/// Haar-random 2^n x 2^n unitary (QR of a Ginibre matrix, R diagonal made positive).
UnitaryMatrix haar_unitary(int n, RngStream& rng);

/// Haar-random normalized state vector on n qubits.
ComplexVector haar_state_vector(int n, RngStream& rng);

/// |psi><psi| for a Haar-random |psi>.
DensityMatrix haar_pure_state(int n, RngStream& rng);

/// Hilbert-Schmidt random density matrix GG^dagger / tr(GG^dagger).
///
/// Draws whose smallest eigenvalue or smallest eigenvalue gap is below
/// `gap_tol` are redrawn, up to 16 times, after which NumericalError is thrown.
DensityMatrix hs_random_density(int n, RngStream& rng, double gap_tol = 1e-10);

} // namespace unilearn

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

#include "unilearn/linalg.hpp"

namespace unilearn {

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
double trace_norm_hermitian(const ComplexMatrix& m);

/// Normalized trace distance 1/2 ||rho - sigma||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr[(rho - sigma)^2].
double hs_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma);

/// |tr(U^dagger V)|.
double trace_overlap(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// |tr(U^dagger V)| / N. Invariant under global phase.
double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v);

} // namespace unilearn

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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace unilearn {

using Objective = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h. A component whose
/// evaluations are non-finite is retried once with step 10h; if that also
/// fails NumericalError is thrown. With workers > 1 components are computed
/// concurrently; each component is independent, so the result does not
/// depend on the worker count.
std::vector<double> fd_gradient(const Objective& f, std::span<const double> params, double h,
                                unsigned workers = 1);

struct AdamHyper {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long long step = 0;

    static AdamState zeros(std::size_t size) { return {std::vector<double>(size, 0.0), std::vector<double>(size, 0.0), 0}; }
};

struct AdamUpdate {
    std::vector<double> params;
    AdamState state;
};

/// One bias-corrected Adam step. Throws NumericalError on a non-finite gradient.
AdamUpdate adam_step(std::span<const double> params, const AdamState& state, std::span<const double> grad,
                     double lr, const AdamHyper& hyper = {});

} // namespace unilearn

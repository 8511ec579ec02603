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

#include "unilearn/optim.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "unilearn/error.hpp"

namespace unilearn {

namespace {

double central_difference(const Objective& f, std::vector<double>& x, std::size_t i, double h) {
    const double x0 = x[i];
    x[i] = x0 + h;
    const double up = f(x);
    x[i] = x0 - h;
    const double down = f(x);
    x[i] = x0;
    return (up - down) / (2.0 * h);
}

double component(const Objective& f, std::vector<double>& x, std::size_t i, double h) {
    double g = central_difference(f, x, i, h);
    if (!std::isfinite(g)) {
        g = central_difference(f, x, i, 10.0 * h);
    }
    if (!std::isfinite(g)) {
        throw NumericalError("fd_gradient: non-finite objective around component " + std::to_string(i));
    }
    return g;
}

} // namespace

std::vector<double> fd_gradient(const Objective& f, std::span<const double> params, double h, unsigned workers) {
    if (!(h > 0.0)) {
        throw ValidationError("fd_gradient: step must be positive");
    }
    std::vector<double> grad(params.size(), 0.0);
    if (workers <= 1 || params.size() < 2) {
        std::vector<double> x(params.begin(), params.end());
        for (std::size_t i = 0; i < params.size(); ++i) {
            grad[i] = component(f, x, i, h);
        }
        return grad;
    }
    // Strided partition; every component is written by exactly one worker.
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    std::vector<double> x(params.begin(), params.end());
                    for (std::size_t i = w; i < params.size(); i += workers) {
                        grad[i] = component(f, x, i, h);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return grad;
}

AdamUpdate adam_step(std::span<const double> params, const AdamState& state, std::span<const double> grad,
                     double lr, const AdamHyper& hyper) {
    if (grad.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw DimensionError("adam_step: parameter, gradient and state sizes differ");
    }
    for (const double g : grad) {
        if (!std::isfinite(g)) {
            throw NumericalError("adam_step: non-finite gradient");
        }
    }
    AdamUpdate out{std::vector<double>(params.begin(), params.end()), state};
    out.state.step += 1;
    const double t = static_cast<double>(out.state.step);
    const double correction1 = 1.0 - std::pow(hyper.beta1, t);
    const double correction2 = 1.0 - std::pow(hyper.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        double& m = out.state.m[i];
        double& v = out.state.v[i];
        m = hyper.beta1 * m + (1.0 - hyper.beta1) * grad[i];
        v = hyper.beta2 * v + (1.0 - hyper.beta2) * grad[i] * grad[i];
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        out.params[i] -= lr * m_hat / (std::sqrt(v_hat) + hyper.eps);
    }
    return out;
}

} // namespace unilearn

// Copyright 2026 The threadsum Authors.
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

#include "threadsum/numerics/optim.hpp"

#include <cmath>

namespace threadsum::nn {

Matrix InitRange(std::size_t rows, std::size_t cols, double limit, Rng& rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  Matrix out(rows, cols);
  for (double& v : out.values()) v = dist(rng);
  return out;
}

Matrix InitUniform(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng) {
  return InitRange(rows, cols, 1.0 / std::sqrt(static_cast<double>(fan_in)), rng);
}

Adam::Adam(std::vector<Parameter*> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (Parameter* p : params_) {
    m_.emplace_back(p->value.rows(), p->value.cols());
    v_.emplace_back(p->value.rows(), p->value.cols());
  }
}

void Adam::Step(double grad_scale) {
  ++step_;
  const double bias1 = 1.0 - std::pow(options_.beta1, step_);
  const double bias2 = 1.0 - std::pow(options_.beta2, step_);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter& p = *params_[k];
    if (p.frozen || !p.grad.SameShape(p.value)) continue;
    Matrix& m = m_[k];
    Matrix& v = v_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i] * grad_scale;
      m[i] = options_.beta1 * m[i] + (1.0 - options_.beta1) * g;
      v[i] = options_.beta2 * v[i] + (1.0 - options_.beta2) * g * g;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      p.value[i] -= options_.lr * m_hat / (std::sqrt(v_hat) + options_.eps);
    }
  }
  ZeroGrad();
}

void Adam::ZeroGrad() {
  for (Parameter* p : params_) p->ZeroGrad();
}

}  // namespace threadsum::nn

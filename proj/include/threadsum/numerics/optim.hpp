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

#ifndef THREADSUM_NUMERICS_OPTIM_HPP_
#define THREADSUM_NUMERICS_OPTIM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "threadsum/numerics/tape.hpp"

namespace threadsum::nn {

using Rng = std::mt19937_64;

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)).
Matrix InitUniform(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng);
Matrix InitRange(std::size_t rows, std::size_t cols, double limit, Rng& rng);

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam over a fixed parameter list. Frozen parameters are skipped.
class Adam {
 public:
  Adam(std::vector<Parameter*> params, AdamOptions options = {});

  // Applies one update using p.grad * grad_scale, then zeroes the gradients.
  void Step(double grad_scale = 1.0);
  void ZeroGrad();
  int steps() const { return step_; }

 private:
  std::vector<Parameter*> params_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  AdamOptions options_;
  int step_ = 0;
};

}  // namespace threadsum::nn

#endif  // THREADSUM_NUMERICS_OPTIM_HPP_

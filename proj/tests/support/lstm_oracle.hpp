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

// Scalar per-gate LSTM reference, written with plain loops. Test-only.

#ifndef THREADSUM_TESTS_SUPPORT_LSTM_ORACLE_HPP_
#define THREADSUM_TESTS_SUPPORT_LSTM_ORACLE_HPP_

#include <cmath>
#include <vector>

#include "threadsum/encoders.hpp"

namespace threadsum::testing {

using Vec = std::vector<double>;

inline double Sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Runs one direction over `inputs` and returns every hidden state.
inline std::vector<Vec> OracleDirection(const encoders::LstmDirection& p, std::size_t hidden,
                                        const std::vector<Vec>& inputs) {
  Vec h(hidden, 0.0), c(hidden, 0.0);
  std::vector<Vec> states;
  for (const Vec& x : inputs) {
    Vec next_h(hidden), next_c(hidden);
    for (std::size_t u = 0; u < hidden; ++u) {
      double gate[4];
      for (int g = 0; g < 4; ++g) {
        const std::size_t col = static_cast<std::size_t>(g) * hidden + u;
        double z = p.bias.value(0, col);
        for (std::size_t k = 0; k < x.size(); ++k) z += x[k] * p.w_input.value(k, col);
        for (std::size_t k = 0; k < hidden; ++k) z += h[k] * p.w_hidden.value(k, col);
        gate[g] = z;
      }
      const double i = Sig(gate[0]), f = Sig(gate[1]), cand = std::tanh(gate[2]),
                   o = Sig(gate[3]);
      next_c[u] = f * c[u] + i * cand;
      next_h[u] = o * std::tanh(next_c[u]);
    }
    h = next_h;
    c = next_c;
    states.push_back(h);
  }
  return states;
}

// [final forward ; final backward] for a single sequence.
inline Vec OracleBiLstmFinal(const encoders::BiLstmParams& p, const std::vector<Vec>& inputs) {
  Vec out(2 * p.hidden, 0.0);
  if (inputs.empty()) return out;
  const auto fwd = OracleDirection(p.forward, p.hidden, inputs);
  std::vector<Vec> reversed(inputs.rbegin(), inputs.rend());
  const auto bwd = OracleDirection(p.backward, p.hidden, reversed);
  for (std::size_t u = 0; u < p.hidden; ++u) {
    out[u] = fwd.back()[u];
    out[p.hidden + u] = bwd.back()[u];
  }
  return out;
}

}  // namespace threadsum::testing

#endif  // THREADSUM_TESTS_SUPPORT_LSTM_ORACLE_HPP_

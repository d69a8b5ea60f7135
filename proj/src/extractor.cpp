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

#include "threadsum/extractor.hpp"

#include <algorithm>

namespace threadsum {

std::vector<std::size_t> Select(std::span<const double> probabilities, double threshold,
                                std::optional<std::size_t> max_sentences) {
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] > threshold) picked.push_back(i);
  }
  if (max_sentences && picked.size() > *max_sentences) {
    std::stable_sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
      return probabilities[a] > probabilities[b];
    });
    picked.resize(*max_sentences);
    std::sort(picked.begin(), picked.end());
  }
  return picked;
}

std::vector<SentenceDecision> Decide(std::span<const double> probabilities, double threshold,
                                     std::optional<std::size_t> max_sentences) {
  std::vector<SentenceDecision> out(probabilities.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {i, probabilities[i], false};
  for (std::size_t i : Select(probabilities, threshold, max_sentences)) out[i].selected = true;
  return out;
}

}  // namespace threadsum

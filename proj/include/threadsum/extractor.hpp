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

// Interface shared by the trainable extractors, plus sentence selection.

#ifndef THREADSUM_EXTRACTOR_HPP_
#define THREADSUM_EXTRACTOR_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/numerics/tape.hpp"

namespace threadsum {

struct DocumentInputs {
  const corpus::ThreadDocument* doc = nullptr;
  // Per-sentence token vectors; required when the model reads contextual
  // embeddings.
  const std::vector<nn::Matrix>* contextual = nullptr;
  // Per-sentence keyword ids; required when the model uses keywords.
  std::vector<std::vector<int>> keyword_ids;
};

struct SentenceDecision {
  std::size_t index = 0;
  double probability = 0.0;
  bool selected = false;
};

// Indices with p > threshold, ascending. With max_sentences, only the k
// most probable of those survive (ties to the earlier index).
std::vector<std::size_t> Select(std::span<const double> probabilities, double threshold,
                                std::optional<std::size_t> max_sentences = std::nullopt);

std::vector<SentenceDecision> Decide(std::span<const double> probabilities, double threshold,
                                     std::optional<std::size_t> max_sentences = std::nullopt);

class Extractor {
 public:
  virtual ~Extractor() = default;

  virtual std::string kind() const = 0;
  // Training loss for one labelled document.
  virtual nn::Var Loss(nn::Tape& tape, const DocumentInputs& inputs) = 0;
  virtual std::vector<double> Probabilities(const DocumentInputs& inputs) = 0;
  virtual std::vector<nn::Parameter*> Params() = 0;
  // Called after every optimizer step.
  virtual void AfterStep() {}
};

}  // namespace threadsum

#endif  // THREADSUM_EXTRACTOR_HPP_

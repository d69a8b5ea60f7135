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

// Model construction, prepared datasets and checkpoints.

#ifndef THREADSUM_HARNESS_MODEL_HPP_
#define THREADSUM_HARNESS_MODEL_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/extractor.hpp"
#include "threadsum/harness/config.hpp"
#include "threadsum/keywords.hpp"
#include "threadsum/numerics/optim.hpp"

namespace threadsum::harness {

std::unique_ptr<Extractor> BuildExtractor(const RunConfig& config, std::size_t vocab_size,
                                          nn::Rng& rng);

// A document with everything the extractor reads.
struct PreparedDoc {
  corpus::ThreadDocument doc;
  std::vector<nn::Matrix> contextual;
  std::vector<std::vector<int>> keyword_ids;

  DocumentInputs Inputs() const;
};

struct PrepareContext {
  const keywords::StopwordList* stopwords = nullptr;     // required with keywords
  const encoders::ContextualStore* contextual = nullptr;  // required with contextual
};

std::vector<PreparedDoc> Prepare(std::span<const corpus::RawThread> threads,
                                 const corpus::Vocabulary& vocab, const RunConfig& config,
                                 const PrepareContext& context);

// Resolves config.stopwords_path, falling back to the built-in list.
keywords::StopwordList StopwordsFor(const RunConfig& config);

struct Checkpoint {
  RunConfig config;
  corpus::Vocabulary vocab;
  std::size_t epoch = 0;  // 1-based epoch that produced the weights
  double dev_score = 0.0;
  std::unique_ptr<Extractor> model;
};

// Deterministic JSON text; identical checkpoints give identical bytes.
std::string SerializeCheckpoint(const Checkpoint& checkpoint);
// Throws FormatError on a malformed document or mismatched parameter shapes.
Checkpoint ParseCheckpoint(const std::string& text);
void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint LoadCheckpoint(const std::string& path);

// Deep copy of the weights of `from` into `to`; both must share a layout.
void CopyWeights(Extractor& from, Extractor& to);

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_MODEL_HPP_

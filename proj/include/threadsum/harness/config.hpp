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

// Run configuration, readable from key=value text.

#ifndef THREADSUM_HARNESS_CONFIG_HPP_
#define THREADSUM_HARNESS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "threadsum/corpus.hpp"

namespace threadsum::harness {

enum class ModelKind { kSummaRunner, kSiatl };

std::string ModelKindName(ModelKind kind);
ModelKind ParseModelKind(const std::string& name);

struct RunConfig {
  ModelKind model = ModelKind::kSummaRunner;
  bool bidi = false;
  bool keywords = false;
  bool contextual = false;
  bool self_att = true;  // sentence-level model only

  std::size_t batch_size = 32;
  std::size_t epochs = 100;
  corpus::BeginningMode mode = corpus::BeginningMode::kThread;
  std::size_t begin_n = 3;
  std::uint64_t seed = 1;

  // Document-level model widths.
  std::size_t embedding_width = 64;
  std::size_t hidden = 128;
  // Sentence-level model widths.
  std::size_t siatl_embedding_width = 400;
  std::size_t shared_hidden = 1000;
  std::size_t task_hidden = 100;
  bool attend_raw_inputs = false;
  double lm_weight = 0.1;
  std::size_t pretrain_epochs = 0;

  // 0 picks the model's default: 75 (document-level) or 80 (sentence-level).
  std::size_t max_tokens = 0;
  double threshold = 0.5;
  std::optional<std::size_t> max_sentences;
  double learning_rate = 1e-3;
  std::size_t min_count = 2;
  std::size_t top_t = 5;
  std::size_t lsa_dims = 200;

  std::string train_path;
  std::string dev_path;
  std::string test_path;
  std::string contextual_path;
  std::string stopwords_path;
  std::string output_dir = "out";

  std::size_t EffectiveMaxTokens() const;
  corpus::AssembleOptions Assembly() const;
  // Throws ConfigError on an inconsistent configuration.
  void Validate() const;
};

// Sets one field from its key. Throws ConfigError on an unknown key or a
// malformed value.
void Apply(RunConfig& config, const std::string& key, const std::string& value);
// Lines of key=value; blank lines and '#' comments are skipped.
RunConfig ParseConfig(std::istream& in, RunConfig base = {});
RunConfig LoadConfig(const std::string& path, RunConfig base = {});
// Every field as (key, value), in a fixed order.
std::vector<std::pair<std::string, std::string>> ConfigEntries(const RunConfig& config);
std::string FormatConfig(const RunConfig& config);

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_CONFIG_HPP_

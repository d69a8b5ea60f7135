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

// Auto-regressive document-level extractor.
//
// Sentence reps r_j (rows of R, m x w) are h^d, or G when attending to the
// beginning, optionally followed by the keyword rep h^kw. With
//
//   d     = tanh(mean_j(r_j) W_doc + b_doc)
//   s_j   = sum_{i<j} p_i r_i
//
// each sentence is scored in document order:
//
//   logit_j = r_j w_content                  content
//           + r_j W_salience d^T             salience
//           - r_j W_novelty tanh(s_j)^T      novelty
//           + abs_pos[min(j, 9)]
//           + rel_pos[min(floor(4j / m), 3)]
//           + bias
//   p_j     = sigmoid(logit_j)

#ifndef THREADSUM_SUMMARUNNER_HPP_
#define THREADSUM_SUMMARUNNER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "threadsum/bidi_attention.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/extractor.hpp"
#include "threadsum/numerics/optim.hpp"
#include "threadsum/numerics/tape.hpp"

namespace threadsum::summarunner {

inline constexpr std::size_t kAbsolutePositions = 10;
inline constexpr std::size_t kRelativePositions = 4;

struct ScorerParams {
  std::size_t rep_width = 0;
  nn::Parameter w_doc;       // w x w
  nn::Parameter b_doc;       // 1 x w
  nn::Parameter w_content;   // w x 1
  nn::Parameter w_salience;  // w x w
  nn::Parameter w_novelty;   // w x w
  nn::Parameter abs_pos;     // 10 x 1
  nn::Parameter rel_pos;     // 4 x 1
  nn::Parameter bias;        // 1 x 1

  // Weights uniform in +-1/sqrt(w); positions and bias start at zero.
  static ScorerParams Init(std::size_t rep_width, nn::Rng& rng);
  static ScorerParams Zeros(std::size_t rep_width);
  std::vector<nn::Parameter*> Params();
};

struct ScoreOptions {
  // Entries that are set replace the computed logit of that sentence.
  std::vector<std::optional<double>> forced_logits;
};

struct Scores {
  nn::Var logits;  // m x 1
  nn::Var probs;   // m x 1
};

std::size_t AbsoluteBucket(std::size_t j);
std::size_t RelativeBucket(std::size_t j, std::size_t m);

// Throws DimensionError when reps are not m x rep_width or m == 0.
Scores ScoreDocument(nn::Tape& tape, ScorerParams& params, nn::Var reps,
                     const ScoreOptions* options = nullptr);

struct SummaRunnerConfig {
  std::size_t embedding_width = 64;
  std::size_t hidden = 128;  // word, sentence and keyword BiLSTMs
  bool use_bidi = false;
  bool use_keywords = false;
  bool use_contextual = false;
  bool swap_normalization = false;

  std::size_t rep_width() const;
};

class SummaRunner : public Extractor {
 public:
  static SummaRunner Init(const SummaRunnerConfig& config, std::size_t vocab_size, nn::Rng& rng);

  std::string kind() const override { return "summarunner"; }
  nn::Var Loss(nn::Tape& tape, const DocumentInputs& inputs) override;
  std::vector<double> Probabilities(const DocumentInputs& inputs) override;
  std::vector<nn::Parameter*> Params() override;
  void AfterStep() override { embeddings.ResetPadRow(); }

  // Sentence reps R fed to the scorer.
  nn::Var Represent(nn::Tape& tape, const DocumentInputs& inputs);
  Scores Forward(nn::Tape& tape, const DocumentInputs& inputs,
                 const ScoreOptions* options = nullptr);

  SummaRunnerConfig config;
  encoders::EmbeddingTable embeddings;
  encoders::BiLstmParams word_lstm;
  encoders::BiLstmParams sentence_lstm;
  std::optional<attention::AttentionParams> attention;
  std::optional<encoders::BiLstmParams> keyword_lstm;
  ScorerParams scorer;
};

}  // namespace threadsum::summarunner

#endif  // THREADSUM_SUMMARUNNER_HPP_

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

// Non-auto-regressive sentence classifier.
//
// Per sentence: word vectors -> shared BiLSTM -> [word-level attention to
// the beginning's words, G replaces the word states] -> task BiLSTM ->
// pooling (self-attention over task states, or final states) -> linear ->
// sigmoid. The shared forward states also drive a next-token language-model
// loss added with weight lm_weight.
//
// All sentences of a document run as one batch, but no sentence reads
// another's states except the beginning's (through attention), so a
// probability never depends on the order or content of other non-beginning
// sentences.

#ifndef THREADSUM_SIATL_HPP_
#define THREADSUM_SIATL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "threadsum/bidi_attention.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/extractor.hpp"
#include "threadsum/numerics/optim.hpp"
#include "threadsum/numerics/tape.hpp"

namespace threadsum::siatl {

struct SiatlConfig {
  std::size_t embedding_width = 400;
  std::size_t shared_hidden = 1000;
  std::size_t task_hidden = 100;
  bool use_bidi = false;
  bool use_self_att = true;
  bool use_contextual = false;
  // Attend with raw word vectors on both sides instead of shared states.
  bool attend_raw_inputs = false;
  bool swap_normalization = false;
  double lm_weight = 0.1;

  std::size_t input_width() const;       // shared LSTM input
  std::size_t word_state_width() const;  // what attention sees per word
  std::size_t task_input_width() const;
};

struct SiatlOutput {
  nn::Var logits;   // m x 1
  nn::Var probs;    // m x 1
  nn::Var lm_loss;  // 1 x 1, mean next-token cross-entropy (0 if nothing to predict)
};

class Siatl : public Extractor {
 public:
  static Siatl Init(const SiatlConfig& config, std::size_t vocab_size, nn::Rng& rng);

  std::string kind() const override { return "siatl"; }
  // Classification BCE + lm_weight * LM loss.
  nn::Var Loss(nn::Tape& tape, const DocumentInputs& inputs) override;
  std::vector<double> Probabilities(const DocumentInputs& inputs) override;
  std::vector<nn::Parameter*> Params() override;
  void AfterStep() override { embeddings.ResetPadRow(); }

  // Throws DimensionError on an empty sentence.
  SiatlOutput Run(nn::Tape& tape, const DocumentInputs& inputs);
  // LM loss alone; used for pretraining the shared encoder.
  nn::Var LmLoss(nn::Tape& tape, const DocumentInputs& inputs);
  // Parameters touched by LmLoss.
  std::vector<nn::Parameter*> LmParams();

  SiatlConfig config;
  encoders::EmbeddingTable embeddings;
  encoders::BiLstmParams shared_lstm;
  std::optional<attention::AttentionParams> attention;
  encoders::BiLstmParams task_lstm;
  nn::Parameter self_att;  // 2*task_hidden x 1
  nn::Parameter w_cls;     // 2*task_hidden x 1
  nn::Parameter b_cls;     // 1 x 1
  nn::Parameter w_lm;      // shared_hidden x V
  nn::Parameter b_lm;      // 1 x V

 private:
  struct Shared;
  Shared RunShared(nn::Tape& tape, const DocumentInputs& inputs);
  nn::Var LmFrom(nn::Tape& tape, const Shared& shared, const corpus::ThreadDocument& doc);
};

}  // namespace threadsum::siatl

#endif  // THREADSUM_SIATL_HPP_

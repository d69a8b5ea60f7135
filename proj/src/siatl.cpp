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

#include "threadsum/siatl.hpp"

#include "threadsum/errors.hpp"

namespace threadsum::siatl {

std::size_t SiatlConfig::input_width() const {
  return use_contextual ? encoders::kContextualWidth : embedding_width;
}

std::size_t SiatlConfig::word_state_width() const {
  return attend_raw_inputs ? input_width() : 2 * shared_hidden;
}

std::size_t SiatlConfig::task_input_width() const {
  return use_bidi ? 4 * word_state_width() : 2 * shared_hidden;
}

Siatl Siatl::Init(const SiatlConfig& config, std::size_t vocab_size, nn::Rng& rng) {
  if (config.embedding_width == 0 || config.shared_hidden == 0 || config.task_hidden == 0) {
    throw ConfigError("siatl widths must be positive");
  }
  if (config.lm_weight < 0.0) throw ConfigError("lm weight must be non-negative");
  Siatl model;
  model.config = config;
  model.embeddings = encoders::EmbeddingTable::Random(vocab_size, config.embedding_width, rng);
  model.shared_lstm =
      encoders::BiLstmParams::Init("shared_lstm", config.input_width(), config.shared_hidden, rng);
  if (config.use_bidi) {
    attention::AttentionConfig ac;
    ac.width = config.word_state_width();
    ac.granularity = attention::Granularity::kWord;
    ac.swap_normalization = config.swap_normalization;
    model.attention = attention::AttentionParams::Init(ac, rng);
  }
  model.task_lstm = encoders::BiLstmParams::Init("task_lstm", config.task_input_width(),
                                                 config.task_hidden, rng);
  const std::size_t pooled = 2 * config.task_hidden;
  model.self_att = nn::Parameter("self_att", nn::InitUniform(pooled, 1, pooled, rng));
  model.w_cls = nn::Parameter("w_cls", nn::InitUniform(pooled, 1, pooled, rng));
  model.b_cls = nn::Parameter("b_cls", nn::Matrix(1, 1));
  model.w_lm = nn::Parameter(
      "w_lm", nn::InitUniform(config.shared_hidden, vocab_size, config.shared_hidden, rng));
  model.b_lm = nn::Parameter("b_lm", nn::Matrix(1, vocab_size));
  return model;
}

std::vector<nn::Parameter*> Siatl::Params() {
  std::vector<nn::Parameter*> out{&embeddings.table};
  for (auto* p : shared_lstm.Params()) out.push_back(p);
  if (attention) {
    for (auto* p : attention->Params()) out.push_back(p);
  }
  for (auto* p : task_lstm.Params()) out.push_back(p);
  for (auto* p : {&self_att, &w_cls, &b_cls, &w_lm, &b_lm}) out.push_back(p);
  return out;
}

std::vector<nn::Parameter*> Siatl::LmParams() {
  std::vector<nn::Parameter*> out{&embeddings.table};
  for (auto* p : shared_lstm.Params()) out.push_back(p);
  out.push_back(&w_lm);
  out.push_back(&b_lm);
  return out;
}

struct Siatl::Shared {
  encoders::SequenceBatch batch;
  encoders::BiLstmOutput out;
  std::vector<nn::Var> word_states;  // per step, B x 2*shared_hidden
};

Siatl::Shared Siatl::RunShared(nn::Tape& tape, const DocumentInputs& inputs) {
  if (inputs.doc == nullptr) throw ConfigError("siatl called without a document");
  const corpus::ThreadDocument& doc = *inputs.doc;
  if (doc.size() == 0) throw DimensionError("document " + doc.id + " has no sentences");
  for (std::size_t s = 0; s < doc.size(); ++s) {
    if (doc.sentences[s].length == 0) {
      throw DimensionError("sentence " + std::to_string(s) + " of document " + doc.id +
                           " is empty after tokenization");
    }
  }
  Shared shared;
  if (config.use_contextual) {
    if (inputs.contextual == nullptr) {
      throw AlignmentError("document " + doc.id + " has no contextual vectors");
    }
    shared.batch = encoders::VectorBatch(tape, *inputs.contextual);
  } else {
    std::vector<std::vector<int>> ids;
    std::vector<std::size_t> lengths;
    for (const auto& s : doc.sentences) {
      ids.push_back(s.ids);
      lengths.push_back(s.length);
    }
    shared.batch = encoders::EmbedBatch(tape, embeddings, ids, lengths);
  }
  shared.out = encoders::RunBiLstm(tape, shared_lstm, shared.batch);
  for (std::size_t t = 0; t < shared.batch.steps.size(); ++t) {
    const std::vector<nn::Var> pair{shared.out.forward[t], shared.out.backward[t]};
    shared.word_states.push_back(nn::ConcatCols(pair));
  }
  return shared;
}

nn::Var Siatl::LmFrom(nn::Tape& tape, const Shared& shared, const corpus::ThreadDocument& doc) {
  const std::size_t steps = shared.batch.steps.size();
  std::vector<int> targets(doc.size());
  nn::Var total;
  std::size_t count = 0;
  for (std::size_t t = 0; t + 1 < steps; ++t) {
    std::size_t here = 0;
    for (std::size_t r = 0; r < doc.size(); ++r) {
      const auto& s = doc.sentences[r];
      targets[r] = t + 1 < s.length ? s.ids[t + 1] : -1;
      if (targets[r] >= 0) ++here;
    }
    if (here == 0) continue;
    nn::Var logits = nn::Add(nn::MatMul(shared.out.forward[t], tape.Param(w_lm)), tape.Param(b_lm));
    nn::Var ce = nn::CrossEntropyRows(logits, targets);
    total = total.valid() ? nn::Add(total, ce) : ce;
    count += here;
  }
  if (count == 0) return tape.Constant(nn::Matrix(1, 1));
  return nn::Scale(total, 1.0 / static_cast<double>(count));
}

SiatlOutput Siatl::Run(nn::Tape& tape, const DocumentInputs& inputs) {
  const corpus::ThreadDocument& doc = *inputs.doc;
  Shared shared = RunShared(tape, inputs);
  const std::size_t m = doc.size();
  const std::size_t steps = shared.batch.steps.size();
  const std::vector<std::size_t>& lengths = shared.batch.lengths;

  std::vector<nn::Var> task_steps;
  if (config.use_bidi) {
    const std::vector<nn::Var>& words =
        config.attend_raw_inputs ? shared.batch.steps : shared.word_states;
    const std::size_t width = config.word_state_width();
    std::vector<nn::RowPick> begin_picks;
    for (std::size_t s = doc.beginning.begin; s < doc.beginning.end; ++s) {
      for (std::size_t t = 0; t < lengths[s]; ++t) begin_picks.push_back({static_cast<int>(t), s});
    }
    nn::Var h_b = nn::GatherRows(words, begin_picks, width);
    std::vector<nn::Var> fused(m);
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<nn::RowPick> picks;
      for (std::size_t t = 0; t < lengths[r]; ++t) picks.push_back({static_cast<int>(t), r});
      nn::Var h_d = nn::GatherRows(words, picks, width);
      fused[r] = attention::Run(tape, *attention, h_d, h_b).g;
    }
    for (std::size_t t = 0; t < steps; ++t) {
      std::vector<nn::RowPick> picks(m);
      for (std::size_t r = 0; r < m; ++r) {
        picks[r] = t < lengths[r] ? nn::RowPick{static_cast<int>(r), t} : nn::RowPick{-1, 0};
      }
      task_steps.push_back(nn::GatherRows(fused, picks, 4 * width));
    }
  } else {
    task_steps = shared.word_states;
  }

  const encoders::BiLstmOutput task =
      encoders::RunBiLstm(tape, task_lstm, {task_steps, lengths});
  nn::Var pooled;
  if (config.use_self_att) {
    std::vector<nn::Var> states;
    for (std::size_t t = 0; t < steps; ++t) {
      const std::vector<nn::Var> pair{task.forward[t], task.backward[t]};
      states.push_back(nn::ConcatCols(pair));
    }
    nn::Var w = tape.Param(self_att);
    std::vector<nn::Var> rows;
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<nn::RowPick> picks;
      for (std::size_t t = 0; t < lengths[r]; ++t) picks.push_back({static_cast<int>(t), r});
      nn::Var h = nn::GatherRows(states, picks, 2 * config.task_hidden);
      nn::Var alpha = nn::Softmax(nn::MatMul(h, w), nn::Axis::kCols);
      rows.push_back(nn::MatMul(nn::Transpose(alpha), h));
    }
    pooled = nn::ConcatRows(rows);
  } else {
    pooled = task.final_state;
  }

  SiatlOutput out;
  out.logits = nn::Add(nn::MatMul(pooled, tape.Param(w_cls)), tape.Param(b_cls));
  out.probs = nn::Sigmoid(out.logits);
  out.lm_loss = LmFrom(tape, shared, doc);
  return out;
}

nn::Var Siatl::Loss(nn::Tape& tape, const DocumentInputs& inputs) {
  const SiatlOutput out = Run(tape, inputs);
  std::vector<double> targets(inputs.doc->labels.begin(), inputs.doc->labels.end());
  nn::Var ce = nn::BceWithLogits(out.logits, targets);
  return nn::Add(ce, nn::Scale(out.lm_loss, config.lm_weight));
}

nn::Var Siatl::LmLoss(nn::Tape& tape, const DocumentInputs& inputs) {
  const Shared shared = RunShared(tape, inputs);
  return LmFrom(tape, shared, *inputs.doc);
}

std::vector<double> Siatl::Probabilities(const DocumentInputs& inputs) {
  nn::Tape tape;
  const SiatlOutput out = Run(tape, inputs);
  const auto values = out.probs.value().values();
  return {values.begin(), values.end()};
}

}  // namespace threadsum::siatl

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

#include "threadsum/summarunner.hpp"

#include <algorithm>
#include <cmath>

#include "threadsum/errors.hpp"

namespace threadsum::summarunner {

namespace {

nn::Parameter Square(const std::string& name, std::size_t w, nn::Rng& rng) {
  return nn::Parameter(name, nn::InitUniform(w, w, w, rng));
}

}  // namespace

ScorerParams ScorerParams::Init(std::size_t rep_width, nn::Rng& rng) {
  if (rep_width == 0) throw ConfigError("scorer width must be positive");
  ScorerParams p = Zeros(rep_width);
  p.w_doc = Square("scorer.w_doc", rep_width, rng);
  p.b_doc = nn::Parameter("scorer.b_doc", nn::InitUniform(1, rep_width, rep_width, rng));
  p.w_content = nn::Parameter("scorer.w_content", nn::InitUniform(rep_width, 1, rep_width, rng));
  p.w_salience = Square("scorer.w_salience", rep_width, rng);
  p.w_novelty = Square("scorer.w_novelty", rep_width, rng);
  return p;
}

ScorerParams ScorerParams::Zeros(std::size_t rep_width) {
  ScorerParams p;
  p.rep_width = rep_width;
  p.w_doc = nn::Parameter("scorer.w_doc", nn::Matrix(rep_width, rep_width));
  p.b_doc = nn::Parameter("scorer.b_doc", nn::Matrix(1, rep_width));
  p.w_content = nn::Parameter("scorer.w_content", nn::Matrix(rep_width, 1));
  p.w_salience = nn::Parameter("scorer.w_salience", nn::Matrix(rep_width, rep_width));
  p.w_novelty = nn::Parameter("scorer.w_novelty", nn::Matrix(rep_width, rep_width));
  p.abs_pos = nn::Parameter("scorer.abs_pos", nn::Matrix(kAbsolutePositions, 1));
  p.rel_pos = nn::Parameter("scorer.rel_pos", nn::Matrix(kRelativePositions, 1));
  p.bias = nn::Parameter("scorer.bias", nn::Matrix(1, 1));
  return p;
}

std::vector<nn::Parameter*> ScorerParams::Params() {
  return {&w_doc, &b_doc, &w_content, &w_salience, &w_novelty, &abs_pos, &rel_pos, &bias};
}

std::size_t AbsoluteBucket(std::size_t j) { return std::min(j, kAbsolutePositions - 1); }

std::size_t RelativeBucket(std::size_t j, std::size_t m) {
  return std::min(kRelativePositions * j / m, kRelativePositions - 1);
}

Scores ScoreDocument(nn::Tape& tape, ScorerParams& params, nn::Var reps,
                     const ScoreOptions* options) {
  const std::size_t m = reps.rows();
  const std::size_t w = params.rep_width;
  if (m == 0) throw DimensionError("cannot score an empty document");
  if (reps.cols() != w) {
    throw DimensionError("scorer expects reps of width " + std::to_string(w) + ", got " +
                         reps.value().ShapeString());
  }
  if (options != nullptr && !options->forced_logits.empty() && options->forced_logits.size() != m) {
    throw DimensionError("forced logits cover " + std::to_string(options->forced_logits.size()) +
                         " sentences, document has " + std::to_string(m));
  }

  nn::Var doc = nn::Tanh(nn::Add(nn::MatMul(nn::MeanRows(reps), tape.Param(params.w_doc)),
                                 tape.Param(params.b_doc)));
  nn::Var content = nn::MatMul(reps, tape.Param(params.w_content));
  nn::Var salience =
      nn::MatMul(nn::MatMul(reps, tape.Param(params.w_salience)), nn::Transpose(doc));
  std::vector<int> abs_ids(m);
  std::vector<int> rel_ids(m);
  for (std::size_t j = 0; j < m; ++j) {
    abs_ids[j] = static_cast<int>(AbsoluteBucket(j));
    rel_ids[j] = static_cast<int>(RelativeBucket(j, m));
  }
  nn::Var position =
      nn::Add(tape.Embed(params.abs_pos, abs_ids), tape.Embed(params.rel_pos, rel_ids));
  nn::Var fixed = nn::Add(nn::Add(nn::Add(content, salience), position), tape.Param(params.bias));
  nn::Var projected = nn::MatMul(reps, tape.Param(params.w_novelty));

  std::vector<nn::Var> logits;
  std::vector<nn::Var> probs;
  nn::Var summary = tape.Constant(nn::Matrix(1, w));
  for (std::size_t j = 0; j < m; ++j) {
    nn::Var logit;
    if (options != nullptr && !options->forced_logits.empty() && options->forced_logits[j]) {
      logit = tape.Constant(nn::Matrix(1, 1, *options->forced_logits[j]));
    } else {
      nn::Var novelty =
          nn::MatMul(nn::SliceRows(projected, j, j + 1), nn::Transpose(nn::Tanh(summary)));
      logit = nn::Sub(nn::SliceRows(fixed, j, j + 1), novelty);
    }
    nn::Var p = nn::Sigmoid(logit);
    if (j + 1 < m) summary = nn::Add(summary, nn::Hadamard(nn::SliceRows(reps, j, j + 1), p));
    logits.push_back(logit);
    probs.push_back(p);
  }
  return {nn::ConcatRows(logits), nn::ConcatRows(probs)};
}

std::size_t SummaRunnerConfig::rep_width() const {
  std::size_t w = 2 * hidden;
  if (use_bidi) w *= 4;
  if (use_keywords) w += 2 * hidden;
  return w;
}

SummaRunner SummaRunner::Init(const SummaRunnerConfig& config, std::size_t vocab_size,
                              nn::Rng& rng) {
  if (config.hidden == 0 || config.embedding_width == 0) {
    throw ConfigError("summarunner widths must be positive");
  }
  SummaRunner model;
  model.config = config;
  model.embeddings = encoders::EmbeddingTable::Random(vocab_size, config.embedding_width, rng);
  const std::size_t word_in =
      config.use_contextual ? encoders::kContextualWidth : config.embedding_width;
  model.word_lstm = encoders::BiLstmParams::Init("word_lstm", word_in, config.hidden, rng);
  model.sentence_lstm =
      encoders::BiLstmParams::Init("sentence_lstm", 2 * config.hidden, config.hidden, rng);
  if (config.use_bidi) {
    attention::AttentionConfig ac;
    ac.width = 2 * config.hidden;
    ac.granularity = attention::Granularity::kSentence;
    ac.swap_normalization = config.swap_normalization;
    model.attention = attention::AttentionParams::Init(ac, rng);
  }
  if (config.use_keywords) {
    model.keyword_lstm = encoders::BiLstmParams::Init("keyword_lstm", config.embedding_width,
                                                      config.hidden, rng);
  }
  model.scorer = ScorerParams::Init(config.rep_width(), rng);
  return model;
}

std::vector<nn::Parameter*> SummaRunner::Params() {
  std::vector<nn::Parameter*> out{&embeddings.table};
  for (auto* p : word_lstm.Params()) out.push_back(p);
  for (auto* p : sentence_lstm.Params()) out.push_back(p);
  if (attention) {
    for (auto* p : attention->Params()) out.push_back(p);
  }
  if (keyword_lstm) {
    for (auto* p : keyword_lstm->Params()) out.push_back(p);
  }
  for (auto* p : scorer.Params()) out.push_back(p);
  return out;
}

nn::Var SummaRunner::Represent(nn::Tape& tape, const DocumentInputs& inputs) {
  if (inputs.doc == nullptr) throw ConfigError("summarunner called without a document");
  const corpus::ThreadDocument& doc = *inputs.doc;
  if (doc.size() == 0) throw DimensionError("document " + doc.id + " has no sentences");

  nn::Var sentence_reps;
  if (config.use_contextual) {
    if (inputs.contextual == nullptr) {
      throw AlignmentError("document " + doc.id + " has no contextual vectors");
    }
    const encoders::SequenceBatch batch = encoders::VectorBatch(tape, *inputs.contextual);
    sentence_reps = batch.steps.empty()
                        ? tape.Constant(nn::Matrix(doc.size(), word_lstm.output_width()))
                        : encoders::RunBiLstm(tape, word_lstm, batch).final_state;
  } else {
    std::vector<std::vector<int>> ids;
    std::vector<std::size_t> lengths;
    for (const auto& s : doc.sentences) {
      ids.push_back(s.ids);
      lengths.push_back(s.length);
    }
    sentence_reps = encoders::EncodeWords(tape, embeddings, word_lstm, ids, lengths);
  }
  nn::Var reps = encoders::EncodeSentences(tape, sentence_lstm, sentence_reps);

  if (config.use_bidi) {
    nn::Var h_b = nn::SliceRows(reps, doc.beginning.begin, doc.beginning.end);
    reps = attention::Run(tape, *attention, reps, h_b).g;
  }
  if (config.use_keywords) {
    if (inputs.keyword_ids.size() != doc.size()) {
      throw DimensionError("document " + doc.id + " has " + std::to_string(doc.size()) +
                           " sentences but " + std::to_string(inputs.keyword_ids.size()) +
                           " keyword lists");
    }
    nn::Var kw = encoders::EncodeKeywords(tape, embeddings, *keyword_lstm, inputs.keyword_ids);
    const std::vector<nn::Var> parts{reps, kw};
    reps = nn::ConcatCols(parts);
  }
  return reps;
}

Scores SummaRunner::Forward(nn::Tape& tape, const DocumentInputs& inputs,
                            const ScoreOptions* options) {
  return ScoreDocument(tape, scorer, Represent(tape, inputs), options);
}

nn::Var SummaRunner::Loss(nn::Tape& tape, const DocumentInputs& inputs) {
  const Scores scores = Forward(tape, inputs);
  std::vector<double> targets(inputs.doc->labels.begin(), inputs.doc->labels.end());
  return nn::BceWithLogits(scores.logits, targets);
}

std::vector<double> SummaRunner::Probabilities(const DocumentInputs& inputs) {
  nn::Tape tape;
  const Scores scores = Forward(tape, inputs);
  const auto values = scores.probs.value().values();
  return {values.begin(), values.end()};
}

}  // namespace threadsum::summarunner

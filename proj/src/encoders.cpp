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

#include "threadsum/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "threadsum/errors.hpp"

namespace threadsum::encoders {
namespace {

struct BoundDirection {
  nn::Var w_input;
  nn::Var w_hidden;
  nn::Var bias;
  std::size_t hidden;
};

BoundDirection Bind(nn::Tape& tape, LstmDirection& dir, std::size_t hidden) {
  return {tape.Param(dir.w_input), tape.Param(dir.w_hidden), tape.Param(dir.bias), hidden};
}

LstmDirection InitDirection(const std::string& name, std::size_t input_width, std::size_t hidden,
                            nn::Rng& rng) {
  return {nn::Parameter(name + ".w_input", nn::InitUniform(input_width, 4 * hidden, input_width, rng)),
          nn::Parameter(name + ".w_hidden", nn::InitUniform(hidden, 4 * hidden, hidden, rng)),
          nn::Parameter(name + ".bias", nn::InitUniform(1, 4 * hidden, hidden, rng))};
}

struct State {
  nn::Var h;
  nn::Var c;
};

State Step(const BoundDirection& p, nn::Var x, const State& prev,
           const std::vector<std::uint8_t>& active, bool all_active) {
  const std::size_t h = p.hidden;
  nn::Var z = nn::Add(nn::Add(nn::MatMul(x, p.w_input), nn::MatMul(prev.h, p.w_hidden)), p.bias);
  nn::Var in_gate = nn::Sigmoid(nn::SliceCols(z, 0, h));
  nn::Var forget = nn::Sigmoid(nn::SliceCols(z, h, 2 * h));
  nn::Var cand = nn::Tanh(nn::SliceCols(z, 2 * h, 3 * h));
  nn::Var out_gate = nn::Sigmoid(nn::SliceCols(z, 3 * h, 4 * h));
  nn::Var c = nn::Add(nn::Hadamard(forget, prev.c), nn::Hadamard(in_gate, cand));
  nn::Var hidden = nn::Hadamard(out_gate, nn::Tanh(c));
  if (all_active) return {hidden, c};
  return {nn::SelectRows(active, hidden, prev.h), nn::SelectRows(active, c, prev.c)};
}

}  // namespace

EmbeddingTable EmbeddingTable::Random(std::size_t vocab_size, std::size_t width, nn::Rng& rng,
                                      bool frozen) {
  EmbeddingTable t;
  t.table = nn::Parameter("embedding", nn::InitUniform(vocab_size, width, width, rng), frozen);
  t.ResetPadRow();
  return t;
}

void EmbeddingTable::ResetPadRow() {
  if (table.value.rows() == 0) return;
  for (double& v : table.value.row(corpus::Vocabulary::kPad)) v = 0.0;
}

BiLstmParams BiLstmParams::Init(const std::string& name, std::size_t input_width,
                                std::size_t hidden, nn::Rng& rng) {
  BiLstmParams p;
  p.input_width = input_width;
  p.hidden = hidden;
  p.forward = InitDirection(name + ".fwd", input_width, hidden, rng);
  p.backward = InitDirection(name + ".bwd", input_width, hidden, rng);
  return p;
}

std::vector<nn::Parameter*> BiLstmParams::Params() {
  return {&forward.w_input, &forward.w_hidden, &forward.bias,
          &backward.w_input, &backward.w_hidden, &backward.bias};
}

BiLstmOutput RunBiLstm(nn::Tape& tape, BiLstmParams& params, const SequenceBatch& batch) {
  const std::size_t steps = batch.steps.size();
  const std::size_t rows = batch.lengths.size();
  for (const auto& x : batch.steps) {
    if (x.rows() != rows || x.cols() != params.input_width) {
      throw DimensionError("lstm input " + x.value().ShapeString() + " does not match batch of " +
                           std::to_string(rows) + " rows x width " +
                           std::to_string(params.input_width));
    }
  }
  for (std::size_t len : batch.lengths) {
    if (len > steps) throw DimensionError("sequence length exceeds the number of steps");
  }
  const std::size_t h = params.hidden;
  const BoundDirection fwd = Bind(tape, params.forward, h);
  const BoundDirection bwd = Bind(tape, params.backward, h);
  const nn::Var zeros = tape.Constant(nn::Matrix(rows, h));

  auto mask_at = [&](std::size_t t, std::vector<std::uint8_t>& active) {
    bool all = true;
    for (std::size_t r = 0; r < rows; ++r) {
      active[r] = t < batch.lengths[r] ? 1 : 0;
      all = all && active[r] != 0;
    }
    return all;
  };

  BiLstmOutput out;
  out.forward.resize(steps);
  out.backward.resize(steps);
  std::vector<std::uint8_t> active(rows);
  State state{zeros, zeros};
  for (std::size_t t = 0; t < steps; ++t) {
    const bool all = mask_at(t, active);
    state = Step(fwd, batch.steps[t], state, active, all);
    out.forward[t] = state.h;
  }
  const nn::Var fwd_final = state.h;
  state = {zeros, zeros};
  for (std::size_t t = steps; t-- > 0;) {
    const bool all = mask_at(t, active);
    state = Step(bwd, batch.steps[t], state, active, all);
    out.backward[t] = state.h;
  }
  const std::vector<nn::Var> finals{fwd_final, state.h};
  out.final_state = nn::ConcatCols(finals);
  return out;
}

SequenceBatch EmbedBatch(nn::Tape& tape, EmbeddingTable& table,
                         std::span<const std::vector<int>> ids,
                         std::span<const std::size_t> lengths) {
  if (ids.size() != lengths.size()) throw DimensionError("ids/lengths count mismatch");
  SequenceBatch batch;
  batch.lengths.assign(lengths.begin(), lengths.end());
  std::size_t steps = 0;
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (lengths[r] > ids[r].size()) throw DimensionError("length exceeds padded sequence");
    steps = std::max(steps, lengths[r]);
  }
  std::vector<int> column(ids.size());
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t r = 0; r < ids.size(); ++r) {
      column[r] = t < lengths[r] ? ids[r][t] : corpus::Vocabulary::kPad;
    }
    batch.steps.push_back(tape.Embed(table.table, column));
  }
  return batch;
}

SequenceBatch VectorBatch(nn::Tape& tape, std::span<const nn::Matrix> rows) {
  SequenceBatch batch;
  std::size_t steps = 0;
  std::size_t width = 0;
  for (const auto& m : rows) {
    if (m.rows() > 0) width = m.cols();
  }
  for (const auto& m : rows) {
    if (m.cols() != width && m.rows() > 0) throw DimensionError("ragged token vector widths");
    batch.lengths.push_back(m.rows());
    steps = std::max(steps, m.rows());
  }
  for (std::size_t t = 0; t < steps; ++t) {
    nn::Matrix x(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (t < rows[r].rows()) std::copy_n(&rows[r](t, 0), width, &x(r, 0));
    }
    batch.steps.push_back(tape.Constant(std::move(x)));
  }
  return batch;
}

nn::Var EncodeWords(nn::Tape& tape, EmbeddingTable& table, BiLstmParams& params,
                    std::span<const std::vector<int>> ids, std::span<const std::size_t> lengths) {
  const SequenceBatch batch = EmbedBatch(tape, table, ids, lengths);
  if (batch.steps.empty()) return tape.Constant(nn::Matrix(ids.size(), params.output_width()));
  return RunBiLstm(tape, params, batch).final_state;
}

nn::Var EncodeSentences(nn::Tape& tape, BiLstmParams& params, nn::Var reps) {
  const std::size_t m = reps.rows();
  if (m == 0) throw DimensionError("sentence encoder needs at least one sentence");
  SequenceBatch batch;
  batch.lengths = {m};
  for (std::size_t t = 0; t < m; ++t) batch.steps.push_back(nn::SliceRows(reps, t, t + 1));
  const BiLstmOutput out = RunBiLstm(tape, params, batch);
  std::vector<nn::Var> rows;
  rows.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    const std::vector<nn::Var> pair{out.forward[t], out.backward[t]};
    rows.push_back(nn::ConcatCols(pair));
  }
  return nn::ConcatRows(rows);
}

nn::Var EncodeKeywords(nn::Tape& tape, EmbeddingTable& table, BiLstmParams& params,
                       std::span<const std::vector<int>> keyword_ids) {
  std::vector<std::size_t> lengths;
  for (const auto& k : keyword_ids) lengths.push_back(k.size());
  return EncodeWords(tape, table, params, keyword_ids, lengths);
}

ContextualStore ContextualStore::Parse(std::istream& in) {
  // doc -> sentence -> token rows, validated for contiguity afterwards.
  std::map<std::string, std::map<std::size_t, std::map<std::size_t, std::vector<double>>>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string doc_id, sent_field, tok_field, values;
    if (!std::getline(fields, doc_id, '\t') || !std::getline(fields, sent_field, '\t') ||
        !std::getline(fields, tok_field, '\t') || !std::getline(fields, values)) {
      throw FormatError("contextual line " + std::to_string(line_no) + ": expected 4 tab fields");
    }
    std::vector<double> vec;
    vec.reserve(kContextualWidth);
    std::istringstream nums(values);
    double v;
    while (nums >> v) vec.push_back(v);
    if (!nums.eof()) {
      throw FormatError("contextual line " + std::to_string(line_no) + ": bad number");
    }
    if (vec.size() != kContextualWidth) {
      throw AlignmentError("contextual line " + std::to_string(line_no) + ": vector width " +
                           std::to_string(vec.size()) + ", expected " +
                           std::to_string(kContextualWidth));
    }
    std::size_t sent = 0, tok = 0;
    try {
      sent = std::stoul(sent_field);
      tok = std::stoul(tok_field);
    } catch (const std::exception&) {
      throw FormatError("contextual line " + std::to_string(line_no) + ": bad index");
    }
    raw[doc_id][sent][tok] = std::move(vec);
  }
  ContextualStore store;
  for (auto& [doc_id, sentences] : raw) {
    std::vector<nn::Matrix> mats;
    std::size_t expected_sent = 0;
    for (auto& [sent, tokens] : sentences) {
      if (sent != expected_sent++) {
        throw AlignmentError("contextual vectors for '" + doc_id + "' skip sentence " +
                             std::to_string(expected_sent - 1));
      }
      nn::Matrix m(tokens.size(), kContextualWidth);
      std::size_t expected_tok = 0;
      for (auto& [tok, vec] : tokens) {
        if (tok != expected_tok) {
          throw AlignmentError("contextual vectors for '" + doc_id + "' sentence " +
                               std::to_string(sent) + " skip token " +
                               std::to_string(expected_tok));
        }
        std::copy(vec.begin(), vec.end(), &m(expected_tok, 0));
        ++expected_tok;
      }
      mats.push_back(std::move(m));
    }
    store.docs_[doc_id] = std::move(mats);
  }
  return store;
}

ContextualStore ContextualStore::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open contextual vector file '" + path + "'");
  return Parse(in);
}

const std::vector<nn::Matrix>& ContextualStore::Sentences(const std::string& doc_id) const {
  auto it = docs_.find(doc_id);
  if (it == docs_.end()) throw AlignmentError("no contextual vectors for document '" + doc_id + "'");
  return it->second;
}

void ContextualStore::Put(const std::string& doc_id, std::vector<nn::Matrix> sentences) {
  for (const auto& m : sentences) {
    if (m.rows() > 0 && m.cols() != kContextualWidth) {
      throw AlignmentError("contextual vector width " + std::to_string(m.cols()) +
                           ", expected " + std::to_string(kContextualWidth));
    }
  }
  docs_[doc_id] = std::move(sentences);
}

std::vector<nn::Matrix> LoadContextual(const ContextualStore& store,
                                       const corpus::ThreadDocument& doc) {
  const auto& sentences = store.Sentences(doc.id);
  if (sentences.size() != doc.size()) {
    throw AlignmentError("document '" + doc.id + "': contextual vectors cover " +
                         std::to_string(sentences.size()) + " sentences, document has " +
                         std::to_string(doc.size()));
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (sentences[i].rows() != doc.sentences[i].length) {
      throw AlignmentError("document '" + doc.id + "' sentence " + std::to_string(i) + ": " +
                           std::to_string(sentences[i].rows()) + " contextual vectors for " +
                           std::to_string(doc.sentences[i].length) + " tokens");
    }
  }
  return sentences;
}

}  // namespace threadsum::encoders

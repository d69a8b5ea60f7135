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

// Word embeddings and bidirectional LSTM encoders.
//
// All recurrences run batched: row r of every step matrix belongs to
// sequence r, and steps at or beyond a row's length leave that row's state
// untouched. A row therefore ends with the same state it would have if it
// were run alone on its unpadded tokens.

#ifndef THREADSUM_ENCODERS_HPP_
#define THREADSUM_ENCODERS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/numerics/optim.hpp"
#include "threadsum/numerics/tape.hpp"

namespace threadsum::encoders {

// Width of ingested contextual token vectors: two concatenated 768-wide
// transformer layers.
inline constexpr std::size_t kContextualWidth = 2 * 768;

enum class EmbeddingSource { kRandom, kExternal };

struct EmbeddingTable {
  nn::Parameter table;
  EmbeddingSource source = EmbeddingSource::kRandom;

  // Random rows in (-1/sqrt(width), 1/sqrt(width)); the PAD row is zero.
  static EmbeddingTable Random(std::size_t vocab_size, std::size_t width, nn::Rng& rng,
                               bool frozen = false);
  std::size_t width() const { return table.value.cols(); }
  bool frozen() const { return table.frozen; }
  // Re-zeroes the PAD row after an optimizer step.
  void ResetPadRow();
};

// One direction of an LSTM: z = x W_in + h W_hid + b, gates (i, f, g, o) in
// that column order.
struct LstmDirection {
  nn::Parameter w_input;   // input_width x 4h
  nn::Parameter w_hidden;  // h x 4h
  nn::Parameter bias;      // 1 x 4h
};

struct BiLstmParams {
  std::size_t input_width = 0;
  std::size_t hidden = 0;
  LstmDirection forward;
  LstmDirection backward;

  static BiLstmParams Init(const std::string& name, std::size_t input_width, std::size_t hidden,
                           nn::Rng& rng);
  std::vector<nn::Parameter*> Params();
  std::size_t output_width() const { return 2 * hidden; }
};

// Time-major batch: steps[t] is B x input_width, lengths[r] <= steps.size().
struct SequenceBatch {
  std::vector<nn::Var> steps;
  std::vector<std::size_t> lengths;
};

struct BiLstmOutput {
  // Per-step hidden states (B x h). Entries past a row's length are stale.
  std::vector<nn::Var> forward;
  std::vector<nn::Var> backward;
  // B x 2h: [final forward state ; final backward state]. Rows of length 0
  // are all zero.
  nn::Var final_state;
};

BiLstmOutput RunBiLstm(nn::Tape& tape, BiLstmParams& params, const SequenceBatch& batch);

// Builds embedding-lookup steps for a batch of padded id sequences, trimmed
// to the longest real length.
SequenceBatch EmbedBatch(nn::Tape& tape, EmbeddingTable& table,
                         std::span<const std::vector<int>> ids,
                         std::span<const std::size_t> lengths);
// Builds constant steps from per-row token vectors (length x width each).
SequenceBatch VectorBatch(nn::Tape& tape, std::span<const nn::Matrix> rows);

// Sentence representations (B x 2h): final forward and backward states.
nn::Var EncodeWords(nn::Tape& tape, EmbeddingTable& table, BiLstmParams& params,
                    std::span<const std::vector<int>> ids, std::span<const std::size_t> lengths);

// Document-level states h^d (m x 2h), one per sentence rep, order kept.
nn::Var EncodeSentences(nn::Tape& tape, BiLstmParams& params, nn::Var reps);

// Keyword representation h^kw per sentence (B x 2h). An empty keyword list
// gives a zero row.
nn::Var EncodeKeywords(nn::Tape& tape, EmbeddingTable& table, BiLstmParams& params,
                       std::span<const std::vector<int>> keyword_ids);

// Precomputed contextual token vectors keyed by document id, one
// (tokens x kContextualWidth) matrix per sentence.
class ContextualStore {
 public:
  // Lines: doc_id TAB sentence_idx TAB token_idx TAB <1536 floats>.
  // Throws AlignmentError on a wrong width or non-contiguous indices.
  static ContextualStore Parse(std::istream& in);
  static ContextualStore Load(const std::string& path);

  bool Contains(const std::string& doc_id) const { return docs_.count(doc_id) != 0; }
  const std::vector<nn::Matrix>& Sentences(const std::string& doc_id) const;
  void Put(const std::string& doc_id, std::vector<nn::Matrix> sentences);

 private:
  std::map<std::string, std::vector<nn::Matrix>> docs_;
};

// Per-sentence token vectors for `doc`, validated against its tokenization.
// Throws AlignmentError naming the first sentence whose token count differs.
std::vector<nn::Matrix> LoadContextual(const ContextualStore& store,
                                       const corpus::ThreadDocument& doc);

}  // namespace threadsum::encoders

#endif  // THREADSUM_ENCODERS_HPP_

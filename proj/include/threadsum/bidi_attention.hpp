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

// Beginning-aware representations.
//
// Given m document items h_d (m x d) and n beginning items h_b (n x d):
//
//   S[i][j]  = w0 . [h_d[i] ; h_b[j] ; h_d[i] * h_b[j]]        (m x n)
//   S_row    = softmax over each row of S                      (m x n)
//   S_col    = softmax over each column of S                   (m x n)
//   A        = S_row . h_b                                     (m x d)
//   B        = S_row . S_col^T . h_d                           (m x d)
//   G[i]     = [h_d[i] ; A[i] ; h_d[i] * A[i] ; h_d[i] * B[i]] (m x 4d)
//
// A is document-to-beginning attention, B beginning-to-document attention.
// B multiplies h_d rather than h_b: S_row . S_col^T is m x m, so only an
// m-row matrix fits. Items are sentences for the document-level extractor
// and words for the sentence-level one; both use this same code path.

#ifndef THREADSUM_BIDI_ATTENTION_HPP_
#define THREADSUM_BIDI_ATTENTION_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "threadsum/numerics/optim.hpp"
#include "threadsum/numerics/tape.hpp"

namespace threadsum::attention {

enum class Granularity { kSentence, kWord };

struct AttentionConfig {
  std::size_t width = 0;  // d
  Granularity granularity = Granularity::kSentence;
  // When set, S_row takes the column softmax and S_col the row softmax.
  bool swap_normalization = false;
};

struct AttentionParams {
  AttentionConfig config;
  nn::Parameter w0;  // 1 x 3d

  static AttentionParams Init(const AttentionConfig& config, nn::Rng& rng);
  std::vector<nn::Parameter*> Params() { return {&w0}; }
  std::size_t output_width() const { return 4 * config.width; }
};

// Padding flags (nonzero = padded) for document and beginning items.
struct AttentionMasks {
  std::vector<std::uint8_t> document;
  std::vector<std::uint8_t> beginning;
};

struct AttentionOutput {
  nn::Var similarity;  // S
  nn::Var row_norm;    // S_row, row-stochastic
  nn::Var col_norm;    // S_col, column-stochastic
  nn::Var a;
  nn::Var b;
  nn::Var g;
};

nn::Var Similarity(nn::Var h_d, nn::Var h_b, nn::Var w0);

// (S_row, S_col). Padded beginning items are excluded from row softmaxes,
// padded document items from column softmaxes.
std::pair<nn::Var, nn::Var> Normalize(nn::Var s, const AttentionMasks* masks = nullptr,
                                      bool swap = false);

// (A, B).
std::pair<nn::Var, nn::Var> Attend(nn::Var row_norm, nn::Var col_norm, nn::Var h_d, nn::Var h_b);

nn::Var Fuse(nn::Var h_d, nn::Var a, nn::Var b);

AttentionOutput Run(nn::Tape& tape, AttentionParams& params, nn::Var h_d, nn::Var h_b,
                    const AttentionMasks* masks = nullptr);

}  // namespace threadsum::attention

#endif  // THREADSUM_BIDI_ATTENTION_HPP_

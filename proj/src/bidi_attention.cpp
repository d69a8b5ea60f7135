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

#include "threadsum/bidi_attention.hpp"

#include <string>
#include <tuple>

#include "threadsum/errors.hpp"

namespace threadsum::attention {

AttentionParams AttentionParams::Init(const AttentionConfig& config, nn::Rng& rng) {
  if (config.width == 0) throw ConfigError("attention width must be positive");
  AttentionParams p;
  p.config = config;
  p.w0 = nn::Parameter("attention.w0", nn::InitUniform(1, 3 * config.width, 3 * config.width, rng));
  return p;
}

nn::Var Similarity(nn::Var h_d, nn::Var h_b, nn::Var w0) {
  const std::size_t d = h_d.cols();
  if (h_d.rows() == 0 || h_b.rows() == 0) {
    throw DimensionError("similarity needs at least one document and one beginning item");
  }
  if (h_b.cols() != d || w0.rows() != 1 || w0.cols() != 3 * d) {
    throw DimensionError("similarity width mismatch: h_d " + h_d.value().ShapeString() +
                         ", h_b " + h_b.value().ShapeString() + ", w0 " +
                         w0.value().ShapeString());
  }
  // w0 . [x ; y ; x*y] = x.w_doc + y.w_begin + (x*w_prod).y, evaluated for
  // all pairs at once.
  nn::Var w_doc = nn::SliceCols(w0, 0, d);
  nn::Var w_begin = nn::SliceCols(w0, d, 2 * d);
  nn::Var w_prod = nn::SliceCols(w0, 2 * d, 3 * d);
  nn::Var doc_term = nn::MatMul(h_d, nn::Transpose(w_doc));        // m x 1
  nn::Var begin_term = nn::MatMul(w_begin, nn::Transpose(h_b));    // 1 x n
  nn::Var product = nn::MatMul(nn::Hadamard(h_d, w_prod), nn::Transpose(h_b));  // m x n
  return nn::Add(nn::Add(product, doc_term), begin_term);
}

std::pair<nn::Var, nn::Var> Normalize(nn::Var s, const AttentionMasks* masks, bool swap) {
  const std::size_t m = s.rows();
  const std::size_t n = s.cols();
  nn::Mask row_mask;
  nn::Mask col_mask;
  if (masks != nullptr) {
    if (masks->document.size() != m || masks->beginning.size() != n) {
      throw DimensionError("attention masks do not match similarity " + s.value().ShapeString());
    }
    row_mask.resize(m * n);
    col_mask.resize(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        row_mask[i * n + j] = masks->beginning[j];
        col_mask[i * n + j] = masks->document[i];
      }
    }
  }
  const nn::Mask* rm = masks ? &row_mask : nullptr;
  const nn::Mask* cm = masks ? &col_mask : nullptr;
  nn::Var by_row = nn::Softmax(s, nn::Axis::kRows, rm);
  nn::Var by_col = nn::Softmax(s, nn::Axis::kCols, cm);
  if (swap) return {by_col, by_row};
  return {by_row, by_col};
}

std::pair<nn::Var, nn::Var> Attend(nn::Var row_norm, nn::Var col_norm, nn::Var h_d, nn::Var h_b) {
  const std::size_t m = h_d.rows();
  const std::size_t n = h_b.rows();
  if (row_norm.rows() != m || row_norm.cols() != n || col_norm.rows() != m ||
      col_norm.cols() != n || h_d.cols() != h_b.cols()) {
    throw DimensionError("attend shape mismatch: S " + row_norm.value().ShapeString() + ", h_d " +
                         h_d.value().ShapeString() + ", h_b " + h_b.value().ShapeString());
  }
  // Both products reduce over beginning items; sorted sums keep them
  // independent of beginning order.
  nn::Var a = nn::MatMulSorted(row_norm, h_b);
  nn::Var b = nn::MatMul(nn::MatMulSorted(row_norm, nn::Transpose(col_norm)), h_d);
  return {a, b};
}

nn::Var Fuse(nn::Var h_d, nn::Var a, nn::Var b) {
  const std::vector<nn::Var> parts{h_d, a, nn::Hadamard(h_d, a), nn::Hadamard(h_d, b)};
  return nn::ConcatCols(parts);
}

AttentionOutput Run(nn::Tape& tape, AttentionParams& params, nn::Var h_d, nn::Var h_b,
                    const AttentionMasks* masks) {
  if (h_d.cols() != params.config.width) {
    throw DimensionError("attention configured for width " + std::to_string(params.config.width) +
                         ", got " + h_d.value().ShapeString());
  }
  AttentionOutput out;
  out.similarity = Similarity(h_d, h_b, tape.Param(params.w0));
  std::tie(out.row_norm, out.col_norm) =
      Normalize(out.similarity, masks, params.config.swap_normalization);
  std::tie(out.a, out.b) = Attend(out.row_norm, out.col_norm, h_d, h_b);
  out.g = Fuse(h_d, out.a, out.b);
  return out;
}

}  // namespace threadsum::attention

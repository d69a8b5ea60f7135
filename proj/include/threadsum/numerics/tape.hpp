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

// Reverse-mode automatic differentiation over dense 2-D matrices.
//
// A Tape records every op in creation order, which is a topological order of
// the computation graph. Backward() walks the records in reverse, so each
// node is visited exactly once. Parameters live outside the tape and receive
// accumulated gradients; a tape is built per training step and discarded.

#ifndef THREADSUM_NUMERICS_TAPE_HPP_
#define THREADSUM_NUMERICS_TAPE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "threadsum/numerics/matrix.hpp"

namespace threadsum::nn {

// A trainable (or frozen) weight matrix with its gradient accumulator.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
  bool frozen = false;

  Parameter() = default;
  Parameter(std::string n, Matrix v, bool is_frozen = false)
      : name(std::move(n)), value(std::move(v)), grad(value.rows(), value.cols()),
        frozen(is_frozen) {}
  void ZeroGrad() { grad = Matrix(value.rows(), value.cols()); }
};

// Row-major mask with the same shape as the tensor it applies to.
// Nonzero entries are excluded.
using Mask = std::vector<std::uint8_t>;

class Tape;

// Handle to a node on a tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  const Matrix& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, int)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var Constant(Matrix value);
  // Leaf bound to a parameter; backward accumulates into p.grad unless frozen.
  Var Param(Parameter& p);
  // Rows of `table` selected by `ids` (one output row per id). Gradients are
  // scattered back into table.grad unless the table is frozen.
  Var Embed(Parameter& table, std::span<const int> ids);

  // Seeds d(loss)/d(loss) = 1 and propagates to every parameter. Throws
  // DimensionError unless loss is 1x1, NumericError on a non-finite gradient.
  void Backward(Var loss);

  const Matrix& Value(int id) const { return nodes_[id].value; }
  // Gradient of the last Backward() target w.r.t. node `v` (zeros if unused).
  Matrix Grad(Var v) const;
  std::size_t num_nodes() const { return nodes_.size(); }
  const char* OpName(int id) const { return nodes_[id].op; }

  // Op-implementation interface.
  Var Record(const char* op, Matrix value, std::vector<int> inputs, BackwardFn fn);
  bool NeedsGrad(int id) const { return nodes_[id].needs_grad; }
  Matrix& GradRef(int id);
  const Matrix& GradOf(int id) const { return nodes_[id].grad; }

 private:
  struct Node {
    const char* op = "";
    Matrix value;
    Matrix grad;
    std::vector<int> inputs;
    BackwardFn backward;
    bool needs_grad = false;
  };
  std::vector<Node> nodes_;
};

// Differentiable ops. Shapes are checked eagerly and violations throw
// DimensionError naming both shapes.

Var MatMul(Var a, Var b);
// Same product, but each entry sums its terms in ascending order, so the
// result does not depend on the order of the inner dimension.
Var MatMulSorted(Var a, Var b);
Var Transpose(Var a);

// Ascending-order sum; permuting `terms` never changes the result.
double SortedSum(std::vector<double> terms);

// Elementwise binary ops. `b` may match `a` exactly or broadcast as a 1xN
// row, an Mx1 column or a 1x1 scalar.
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Hadamard(Var a, Var b);
Var Scale(Var a, double factor);

Var Sigmoid(Var a);
Var Tanh(Var a);

// Concatenation along columns (the last axis) / rows.
Var ConcatCols(std::span<const Var> parts);
Var ConcatRows(std::span<const Var> parts);
Var SliceCols(Var a, std::size_t begin, std::size_t end);
Var SliceRows(Var a, std::size_t begin, std::size_t end);

// One output row per pick. A pick with part < 0 yields a zero row.
struct RowPick {
  int part;
  std::size_t row;
};
Var GatherRows(std::span<const Var> parts, std::span<const RowPick> picks,
               std::size_t cols);

enum class Axis { kRows, kCols };
// Softmax along each row (kRows) or each column (kCols), max-subtracted.
// Masked entries come out exactly 0; a fully masked row/column throws
// EmptySupportError. Normalizers use SortedSum, so permuting a line permutes
// its output bit-for-bit.
Var Softmax(Var a, Axis axis, const Mask* mask = nullptr);
// 1-D convenience form of Softmax over a 1xN row.
Var SoftmaxMasked(Var x, const Mask& mask);

// Row r of the result is a's row when choose[r] != 0, otherwise b's row.
Var SelectRows(const std::vector<std::uint8_t>& choose, Var a, Var b);

Var Sum(Var a);
Var Mean(Var a);
// Mean over rows, producing 1xC.
Var MeanRows(Var a);

// Mean binary cross-entropy of Mx1 logits against {0,1} targets,
// computed in the numerically stable log-sum-exp form.
Var BceWithLogits(Var logits, std::span<const double> targets);
// Summed softmax cross-entropy of each row of `logits` against the target
// column; rows with target < 0 are ignored.
Var CrossEntropyRows(Var logits, std::span<const int> targets);

// Plain scalar helpers used by oracles and inference code.
double SigmoidScalar(double x);

}  // namespace threadsum::nn

#endif  // THREADSUM_NUMERICS_TAPE_HPP_

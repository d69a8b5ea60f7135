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

#include "threadsum/numerics/tape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "threadsum/errors.hpp"

namespace threadsum::nn {

const Matrix& Var::value() const { return tape_->Value(id_); }

Var Tape::Record(const char* op, Matrix value, std::vector<int> inputs, BackwardFn fn) {
  Node node;
  node.op = op;
  node.value = std::move(value);
  node.needs_grad = std::any_of(inputs.begin(), inputs.end(),
                                [this](int in) { return nodes_[in].needs_grad; });
  node.inputs = std::move(inputs);
  if (node.needs_grad) node.backward = std::move(fn);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

Var Tape::Constant(Matrix value) {
  Node node;
  node.op = "constant";
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

Var Tape::Param(Parameter& p) {
  Node node;
  node.op = "param";
  node.value = p.value;
  node.needs_grad = !p.frozen;
  if (node.needs_grad) {
    Parameter* target = &p;
    node.backward = [target](Tape& tape, int self) {
      const Matrix& g = tape.GradOf(self);
      if (!target->grad.SameShape(target->value)) target->ZeroGrad();
      for (std::size_t i = 0; i < g.size(); ++i) target->grad[i] += g[i];
    };
  }
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

Var Tape::Embed(Parameter& table, std::span<const int> ids) {
  const std::size_t width = table.value.cols();
  Matrix out(ids.size(), width);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const int id = ids[r];
    if (id < 0 || static_cast<std::size_t>(id) >= table.value.rows()) {
      throw VocabularyError("token id " + std::to_string(id) + " outside embedding table of " +
                            std::to_string(table.value.rows()) + " rows");
    }
    std::copy_n(&table.value(id, 0), width, &out(r, 0));
  }
  Node node;
  node.op = "embed";
  node.value = std::move(out);
  node.needs_grad = !table.frozen;
  if (node.needs_grad) {
    Parameter* target = &table;
    std::vector<int> rows(ids.begin(), ids.end());
    node.backward = [target, rows = std::move(rows)](Tape& tape, int self) {
      const Matrix& g = tape.GradOf(self);
      if (!target->grad.SameShape(target->value)) target->ZeroGrad();
      const std::size_t w = target->value.cols();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < w; ++c) target->grad(rows[r], c) += g(r, c);
      }
    };
  }
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

Matrix& Tape::GradRef(int id) {
  Node& node = nodes_[id];
  if (!node.grad.SameShape(node.value) || node.grad.empty()) {
    node.grad = Matrix(node.value.rows(), node.value.cols());
  }
  return node.grad;
}

Matrix Tape::Grad(Var v) const {
  const Node& node = nodes_[v.id()];
  if (node.grad.SameShape(node.value)) return node.grad;
  return Matrix(node.value.rows(), node.value.cols());
}

void Tape::Backward(Var loss) {
  const Matrix& lv = loss.value();
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw DimensionError("backward needs a scalar loss, got " + lv.ShapeString());
  }
  for (Node& node : nodes_) node.grad = Matrix();
  GradRef(loss.id())[0] = 1.0;
  for (int id = loss.id(); id >= 0; --id) {
    Node& node = nodes_[id];
    if (!node.needs_grad || node.grad.empty()) continue;
    if (!node.grad.AllFinite()) {
      throw NumericError("non-finite gradient at node " + std::to_string(id) + " (op '" +
                         node.op + "', shape " + node.value.ShapeString() + ")");
    }
    if (node.backward) node.backward(*this, id);
  }
}

namespace {

enum class Broadcast { kSame, kRow, kCol, kScalar };

Broadcast ResolveBroadcast(const char* op, const Matrix& a, const Matrix& b) {
  if (a.SameShape(b)) return Broadcast::kSame;
  if (b.rows() == 1 && b.cols() == 1) return Broadcast::kScalar;
  if (b.rows() == 1 && b.cols() == a.cols()) return Broadcast::kRow;
  if (b.cols() == 1 && b.rows() == a.rows()) return Broadcast::kCol;
  throw DimensionError(std::string(op) + " shape mismatch: " + a.ShapeString() + " vs " +
                       b.ShapeString());
}

inline std::size_t BroadcastIndex(Broadcast kind, std::size_t r, std::size_t c,
                                  std::size_t cols) {
  switch (kind) {
    case Broadcast::kSame:
      return r * cols + c;
    case Broadcast::kRow:
      return c;
    case Broadcast::kCol:
      return r;
    case Broadcast::kScalar:
      return 0;
  }
  return 0;
}

enum class BinaryKind { kAdd, kSub, kMul };

Var Binary(const char* op, BinaryKind kind, Var a, Var b) {
  Tape& tape = *a.tape();
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  const Broadcast bc = ResolveBroadcast(op, av, bv);
  Matrix out(av.rows(), av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r) {
    for (std::size_t c = 0; c < av.cols(); ++c) {
      const double x = av(r, c);
      const double y = bv[BroadcastIndex(bc, r, c, av.cols())];
      switch (kind) {
        case BinaryKind::kAdd:
          out(r, c) = x + y;
          break;
        case BinaryKind::kSub:
          out(r, c) = x - y;
          break;
        case BinaryKind::kMul:
          out(r, c) = x * y;
          break;
      }
    }
  }
  const int ia = a.id();
  const int ib = b.id();
  return tape.Record(op, std::move(out), {ia, ib}, [ia, ib, bc, kind](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    const std::size_t cols = g.cols();
    if (t.NeedsGrad(ia)) {
      Matrix& ga = t.GradRef(ia);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          double d = g(r, c);
          if (kind == BinaryKind::kMul) d *= t.Value(ib)[BroadcastIndex(bc, r, c, cols)];
          ga(r, c) += d;
        }
      }
    }
    if (t.NeedsGrad(ib)) {
      Matrix& gb = t.GradRef(ib);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          double d = g(r, c);
          if (kind == BinaryKind::kSub) d = -d;
          if (kind == BinaryKind::kMul) d *= t.Value(ia)(r, c);
          gb[BroadcastIndex(bc, r, c, cols)] += d;
        }
      }
    }
  });
}

}  // namespace

Var MatMul(Var a, Var b) {
  Tape& tape = *a.tape();
  Matrix out = MatMul(a.value(), b.value());
  const int ia = a.id();
  const int ib = b.id();
  return tape.Record("matmul", std::move(out), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    if (t.NeedsGrad(ia)) {
      Matrix d = MatMul(g, Transpose(t.Value(ib)));
      Matrix& ga = t.GradRef(ia);
      for (std::size_t i = 0; i < d.size(); ++i) ga[i] += d[i];
    }
    if (t.NeedsGrad(ib)) {
      Matrix d = MatMul(Transpose(t.Value(ia)), g);
      Matrix& gb = t.GradRef(ib);
      for (std::size_t i = 0; i < d.size(); ++i) gb[i] += d[i];
    }
  });
}

Var MatMulSorted(Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (av.cols() != bv.rows()) {
    throw DimensionError("matmul shape mismatch: " + av.ShapeString() + " * " + bv.ShapeString());
  }
  Matrix out(av.rows(), bv.cols());
  std::vector<double> terms(av.cols());
  for (std::size_t i = 0; i < av.rows(); ++i) {
    for (std::size_t j = 0; j < bv.cols(); ++j) {
      for (std::size_t k = 0; k < av.cols(); ++k) terms[k] = av(i, k) * bv(k, j);
      out(i, j) = SortedSum(terms);
    }
  }
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->Record("matmul_sorted", std::move(out), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    if (t.NeedsGrad(ia)) {
      Matrix d = MatMul(g, Transpose(t.Value(ib)));
      Matrix& ga = t.GradRef(ia);
      for (std::size_t i = 0; i < d.size(); ++i) ga[i] += d[i];
    }
    if (t.NeedsGrad(ib)) {
      Matrix d = MatMul(Transpose(t.Value(ia)), g);
      Matrix& gb = t.GradRef(ib);
      for (std::size_t i = 0; i < d.size(); ++i) gb[i] += d[i];
    }
  });
}

Var Transpose(Var a) {
  Tape& tape = *a.tape();
  const int ia = a.id();
  return tape.Record("transpose", Transpose(a.value()), {ia}, [ia](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) ga(c, r) += g(r, c);
    }
  });
}

Var Add(Var a, Var b) { return Binary("add", BinaryKind::kAdd, a, b); }
Var Sub(Var a, Var b) { return Binary("sub", BinaryKind::kSub, a, b); }
Var Hadamard(Var a, Var b) { return Binary("hadamard", BinaryKind::kMul, a, b); }

Var Scale(Var a, double factor) {
  Tape& tape = *a.tape();
  Matrix out = a.value();
  for (double& v : out.values()) v *= factor;
  const int ia = a.id();
  return tape.Record("scale", std::move(out), {ia}, [ia, factor](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * factor;
  });
}

double SigmoidScalar(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Var Sigmoid(Var a) {
  Tape& tape = *a.tape();
  Matrix out = a.value();
  for (double& v : out.values()) v = SigmoidScalar(v);
  const int ia = a.id();
  return tape.Record("sigmoid", std::move(out), {ia}, [ia](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    const Matrix& y = t.Value(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Var Tanh(Var a) {
  Tape& tape = *a.tape();
  Matrix out = a.value();
  for (double& v : out.values()) v = std::tanh(v);
  const int ia = a.id();
  return tape.Record("tanh", std::move(out), {ia}, [ia](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    const Matrix& y = t.Value(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
  });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw DimensionError("concat of zero tensors");
  Tape& tape = *parts.front().tape();
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const Var& p : parts) {
    if (p.rows() != rows) {
      throw DimensionError("concat shape mismatch: " + parts.front().value().ShapeString() +
                           " vs " + p.value().ShapeString());
    }
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<int> inputs;
  std::size_t offset = 0;
  for (const Var& p : parts) {
    const Matrix& v = p.value();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(&v(r, 0), v.cols(), &out(r, offset));
    }
    offset += v.cols();
    inputs.push_back(p.id());
  }
  std::vector<int> ids = inputs;
  return tape.Record("concat_cols", std::move(out), std::move(inputs),
                     [ids = std::move(ids)](Tape& t, int self) {
                       const Matrix& g = t.GradOf(self);
                       std::size_t off = 0;
                       for (int in : ids) {
                         const std::size_t w = t.Value(in).cols();
                         if (t.NeedsGrad(in)) {
                           Matrix& gi = t.GradRef(in);
                           for (std::size_t r = 0; r < g.rows(); ++r) {
                             for (std::size_t c = 0; c < w; ++c) gi(r, c) += g(r, off + c);
                           }
                         }
                         off += w;
                       }
                     });
}

Var ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) throw DimensionError("concat of zero tensors");
  Tape& tape = *parts.front().tape();
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const Var& p : parts) {
    if (p.cols() != cols) {
      throw DimensionError("concat shape mismatch: " + parts.front().value().ShapeString() +
                           " vs " + p.value().ShapeString());
    }
    rows += p.rows();
  }
  std::vector<double> data;
  data.reserve(rows * cols);
  std::vector<int> inputs;
  for (const Var& p : parts) {
    const auto& s = p.value().storage();
    data.insert(data.end(), s.begin(), s.end());
    inputs.push_back(p.id());
  }
  std::vector<int> ids = inputs;
  return tape.Record("concat_rows", Matrix(rows, cols, std::move(data)), std::move(inputs),
                     [ids = std::move(ids)](Tape& t, int self) {
                       const Matrix& g = t.GradOf(self);
                       std::size_t off = 0;
                       for (int in : ids) {
                         const std::size_t n = t.Value(in).size();
                         if (t.NeedsGrad(in)) {
                           Matrix& gi = t.GradRef(in);
                           for (std::size_t i = 0; i < n; ++i) gi[i] += g[off + i];
                         }
                         off += n;
                       }
                     });
}

Var SliceCols(Var a, std::size_t begin, std::size_t end) {
  const Matrix& av = a.value();
  if (begin > end || end > av.cols()) {
    throw DimensionError("column slice [" + std::to_string(begin) + "," + std::to_string(end) +
                         ") out of range for " + av.ShapeString());
  }
  Matrix out(av.rows(), end - begin);
  for (std::size_t r = 0; r < av.rows(); ++r) {
    std::copy_n(&av(r, begin), end - begin, &out(r, 0));
  }
  const int ia = a.id();
  return a.tape()->Record("slice_cols", std::move(out), {ia}, [ia, begin](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) ga(r, begin + c) += g(r, c);
    }
  });
}

Var SliceRows(Var a, std::size_t begin, std::size_t end) {
  const Matrix& av = a.value();
  if (begin > end || end > av.rows()) {
    throw DimensionError("row slice [" + std::to_string(begin) + "," + std::to_string(end) +
                         ") out of range for " + av.ShapeString());
  }
  const auto first = av.storage().begin() + static_cast<std::ptrdiff_t>(begin * av.cols());
  const auto last = av.storage().begin() + static_cast<std::ptrdiff_t>(end * av.cols());
  Matrix out(end - begin, av.cols(), std::vector<double>(first, last));
  const int ia = a.id();
  return a.tape()->Record("slice_rows", std::move(out), {ia}, [ia, begin](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    Matrix& ga = t.GradRef(ia);
    const std::size_t off = begin * g.cols();
    for (std::size_t i = 0; i < g.size(); ++i) ga[off + i] += g[i];
  });
}

Var GatherRows(std::span<const Var> parts, std::span<const RowPick> picks, std::size_t cols) {
  if (parts.empty()) throw DimensionError("gather from zero tensors");
  Tape& tape = *parts.front().tape();
  for (const Var& p : parts) {
    if (p.cols() != cols) {
      throw DimensionError("gather shape mismatch: expected width " + std::to_string(cols) +
                           ", got " + p.value().ShapeString());
    }
  }
  Matrix out(picks.size(), cols);
  for (std::size_t r = 0; r < picks.size(); ++r) {
    const RowPick& pick = picks[r];
    if (pick.part < 0) continue;
    const Matrix& src = parts[static_cast<std::size_t>(pick.part)].value();
    if (pick.row >= src.rows()) {
      throw DimensionError("gather row " + std::to_string(pick.row) + " out of range for " +
                           src.ShapeString());
    }
    std::copy_n(&src(pick.row, 0), cols, &out(r, 0));
  }
  std::vector<int> inputs;
  for (const Var& p : parts) inputs.push_back(p.id());
  std::vector<int> ids = inputs;
  std::vector<RowPick> saved(picks.begin(), picks.end());
  return tape.Record(
      "gather_rows", std::move(out), std::move(inputs),
      [ids = std::move(ids), saved = std::move(saved)](Tape& t, int self) {
        const Matrix& g = t.GradOf(self);
        for (std::size_t r = 0; r < saved.size(); ++r) {
          const RowPick& pick = saved[r];
          if (pick.part < 0) continue;
          const int in = ids[static_cast<std::size_t>(pick.part)];
          if (!t.NeedsGrad(in)) continue;
          Matrix& gi = t.GradRef(in);
          for (std::size_t c = 0; c < g.cols(); ++c) gi(pick.row, c) += g(r, c);
        }
      });
}

Var Softmax(Var a, Axis axis, const Mask* mask) {
  const Matrix& av = a.value();
  if (mask != nullptr && mask->size() != av.size()) {
    throw DimensionError("softmax mask length " + std::to_string(mask->size()) +
                         " does not match " + av.ShapeString());
  }
  const bool by_row = axis == Axis::kRows;
  const std::size_t lines = by_row ? av.rows() : av.cols();
  const std::size_t span = by_row ? av.cols() : av.rows();
  auto index = [&](std::size_t line, std::size_t k) {
    return by_row ? line * av.cols() + k : k * av.cols() + line;
  };
  Matrix out(av.rows(), av.cols());
  for (std::size_t line = 0; line < lines; ++line) {
    double max_v = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t k = 0; k < span; ++k) {
      const std::size_t i = index(line, k);
      if (mask != nullptr && (*mask)[i] != 0) continue;
      any = true;
      max_v = std::max(max_v, av[i]);
    }
    if (!any) {
      throw EmptySupportError(std::string("softmax over fully masked ") +
                              (by_row ? "row " : "column ") + std::to_string(line));
    }
    std::vector<double> terms;
    terms.reserve(span);
    for (std::size_t k = 0; k < span; ++k) {
      const std::size_t i = index(line, k);
      if (mask != nullptr && (*mask)[i] != 0) continue;
      out[i] = std::exp(av[i] - max_v);
      terms.push_back(out[i]);
    }
    const double total = SortedSum(terms);
    for (std::size_t k = 0; k < span; ++k) out[index(line, k)] /= total;
  }
  const int ia = a.id();
  return a.tape()->Record("softmax", std::move(out), {ia}, [ia, by_row](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    const Matrix& y = t.Value(self);
    Matrix& ga = t.GradRef(ia);
    const std::size_t lines = by_row ? y.rows() : y.cols();
    const std::size_t span = by_row ? y.cols() : y.rows();
    for (std::size_t line = 0; line < lines; ++line) {
      double dot = 0.0;
      for (std::size_t k = 0; k < span; ++k) {
        const std::size_t i = by_row ? line * y.cols() + k : k * y.cols() + line;
        dot += g[i] * y[i];
      }
      for (std::size_t k = 0; k < span; ++k) {
        const std::size_t i = by_row ? line * y.cols() + k : k * y.cols() + line;
        ga[i] += y[i] * (g[i] - dot);
      }
    }
  });
}

Var SoftmaxMasked(Var x, const Mask& mask) {
  if (x.rows() != 1) {
    throw DimensionError("softmax_masked expects a 1xN row, got " + x.value().ShapeString());
  }
  return Softmax(x, Axis::kRows, &mask);
}

Var SelectRows(const std::vector<std::uint8_t>& choose, Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (!av.SameShape(bv) || choose.size() != av.rows()) {
    throw DimensionError("select shape mismatch: " + av.ShapeString() + " vs " +
                         bv.ShapeString());
  }
  Matrix out(av.rows(), av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r) {
    const Matrix& src = choose[r] != 0 ? av : bv;
    std::copy_n(&src(r, 0), av.cols(), &out(r, 0));
  }
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->Record("select_rows", std::move(out), {ia, ib},
                          [ia, ib, choose](Tape& t, int self) {
                            const Matrix& g = t.GradOf(self);
                            for (std::size_t r = 0; r < g.rows(); ++r) {
                              const int in = choose[r] != 0 ? ia : ib;
                              if (!t.NeedsGrad(in)) continue;
                              Matrix& gi = t.GradRef(in);
                              for (std::size_t c = 0; c < g.cols(); ++c) gi(r, c) += g(r, c);
                            }
                          });
}

Var Sum(Var a) {
  double total = 0.0;
  for (double v : a.value().values()) total += v;
  const int ia = a.id();
  return a.tape()->Record("sum", Matrix(1, 1, total), {ia}, [ia](Tape& t, int self) {
    const double g = t.GradOf(self)[0];
    Matrix& ga = t.GradRef(ia);
    for (double& v : ga.values()) v += g;
  });
}

Var Mean(Var a) {
  const double n = static_cast<double>(a.value().size());
  return Scale(Sum(a), 1.0 / n);
}

Var MeanRows(Var a) {
  const Matrix& av = a.value();
  Matrix out(1, av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r) {
    for (std::size_t c = 0; c < av.cols(); ++c) out(0, c) += av(r, c);
  }
  const double inv = 1.0 / static_cast<double>(av.rows());
  for (double& v : out.values()) v *= inv;
  const int ia = a.id();
  return a.tape()->Record("mean_rows", std::move(out), {ia}, [ia, inv](Tape& t, int self) {
    const Matrix& g = t.GradOf(self);
    Matrix& ga = t.GradRef(ia);
    for (std::size_t r = 0; r < ga.rows(); ++r) {
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g(0, c) * inv;
    }
  });
}

Var BceWithLogits(Var logits, std::span<const double> targets) {
  const Matrix& z = logits.value();
  if (z.cols() != 1 || z.rows() != targets.size()) {
    throw DimensionError("bce shape mismatch: logits " + z.ShapeString() + " vs " +
                         std::to_string(targets.size()) + " targets");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const double x = z[i];
    if (std::isinf(x)) {
      // A forced logit contributes 0 when it agrees with its target.
      const bool agrees = (x > 0) == (targets[i] > 0.5);
      total += agrees ? 0.0 : std::numeric_limits<double>::infinity();
      continue;
    }
    total += std::max(x, 0.0) - x * targets[i] + std::log1p(std::exp(-std::abs(x)));
  }
  const double n = static_cast<double>(z.rows());
  std::vector<double> saved(targets.begin(), targets.end());
  const int ia = logits.id();
  return logits.tape()->Record(
      "bce_with_logits", Matrix(1, 1, total / n), {ia},
      [ia, n, saved = std::move(saved)](Tape& t, int self) {
        const double g = t.GradOf(self)[0];
        const Matrix& zv = t.Value(ia);
        Matrix& ga = t.GradRef(ia);
        for (std::size_t i = 0; i < zv.rows(); ++i) {
          ga[i] += g * (SigmoidScalar(zv[i]) - saved[i]) / n;
        }
      });
}

Var CrossEntropyRows(Var logits, std::span<const int> targets) {
  const Matrix& z = logits.value();
  if (z.rows() != targets.size()) {
    throw DimensionError("cross-entropy shape mismatch: logits " + z.ShapeString() + " vs " +
                         std::to_string(targets.size()) + " targets");
  }
  Matrix probs(z.rows(), z.cols());
  double total = 0.0;
  for (std::size_t r = 0; r < z.rows(); ++r) {
    if (targets[r] < 0) continue;
    if (static_cast<std::size_t>(targets[r]) >= z.cols()) {
      throw DimensionError("cross-entropy target " + std::to_string(targets[r]) +
                           " outside " + std::to_string(z.cols()) + " classes");
    }
    double max_v = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < z.cols(); ++c) max_v = std::max(max_v, z(r, c));
    double denom = 0.0;
    for (std::size_t c = 0; c < z.cols(); ++c) {
      probs(r, c) = std::exp(z(r, c) - max_v);
      denom += probs(r, c);
    }
    for (std::size_t c = 0; c < z.cols(); ++c) probs(r, c) /= denom;
    total += std::log(denom) + max_v - z(r, static_cast<std::size_t>(targets[r]));
  }
  std::vector<int> saved(targets.begin(), targets.end());
  const int ia = logits.id();
  return logits.tape()->Record(
      "cross_entropy_rows", Matrix(1, 1, total), {ia},
      [ia, saved = std::move(saved), probs = std::move(probs)](Tape& t, int self) {
        const double g = t.GradOf(self)[0];
        Matrix& ga = t.GradRef(ia);
        for (std::size_t r = 0; r < probs.rows(); ++r) {
          if (saved[r] < 0) continue;
          for (std::size_t c = 0; c < probs.cols(); ++c) {
            const double onehot = static_cast<int>(c) == saved[r] ? 1.0 : 0.0;
            ga(r, c) += g * (probs(r, c) - onehot);
          }
        }
      });
}

double SortedSum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double v : terms) total += v;
  return total;
}

}  // namespace threadsum::nn

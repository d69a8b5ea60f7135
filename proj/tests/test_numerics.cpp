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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/gradcheck.hpp"
#include "support/gradient_suite.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/numerics/optim.hpp"
#include "threadsum/numerics/tape.hpp"

namespace nn = threadsum::nn;
using threadsum::testing::CheckGradients;
using threadsum::testing::Project;
using threadsum::testing::RandomMatrix;

namespace {

nn::Matrix TripleLoop(const nn::Matrix& a, const nn::Matrix& b) {
  nn::Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

std::size_t RandomDim(nn::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

constexpr int kGradTrials = 20;
constexpr double kGradTol = 1e-4;

}  // namespace

TEST_CASE("matmul identity and selector") {
  nn::Tape tape;
  auto a = tape.Constant(nn::Matrix::FromRows({{1, 2}, {3, 4}}));
  auto id = tape.Constant(nn::Matrix::Identity(2));
  CHECK(nn::MatMul(a, id).value() == nn::Matrix::FromRows({{1, 2}, {3, 4}}));

  auto row = tape.Constant(nn::Matrix::FromRows({{1, 0}}));
  auto col = tape.Constant(nn::Matrix::FromRows({{2}, {5}}));
  CHECK(nn::MatMul(row, col).value() == nn::Matrix::FromRows({{2}}));
}

TEST_CASE("matmul matches the triple loop bit for bit") {
  nn::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = RandomDim(rng, 1, 6), k = RandomDim(rng, 1, 6), n = RandomDim(rng, 1, 6);
    auto a = RandomMatrix(m, k, rng, 3.0);
    auto b = RandomMatrix(k, n, rng, 3.0);
    CHECK(nn::MatMul(a, b) == TripleLoop(a, b));
  }
  auto a = RandomMatrix(3, 4, rng);
  auto b = RandomMatrix(4, 2, rng);
  CHECK(nn::MatMul(a, b) == TripleLoop(a, b));
}

TEST_CASE("matmul shape mismatch names both shapes") {
  nn::Tape tape;
  auto a = tape.Constant(nn::Matrix(2, 3));
  auto b = tape.Constant(nn::Matrix(2, 3));
  try {
    nn::MatMul(a, b);
    FAIL("expected DimensionError");
  } catch (const threadsum::DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2x3 * 2x3") != std::string::npos);
  }
}

TEST_CASE("sorted reductions ignore term order") {
  nn::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = RandomDim(rng, 2, 8);
    std::vector<double> terms(n);
    for (double& v : terms) v = std::uniform_real_distribution<double>(-1e3, 1e3)(rng);
    const double reference = nn::SortedSum(terms);
    std::shuffle(terms.begin(), terms.end(), rng);
    CHECK(nn::SortedSum(terms) == reference);

    nn::Tape tape;
    const nn::Matrix a = RandomMatrix(3, n, rng);
    const nn::Matrix b = RandomMatrix(n, 2, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    nn::Matrix ap(3, n), bp(n, 2);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < 3; ++i) ap(i, k) = a(i, perm[k]);
      for (std::size_t j = 0; j < 2; ++j) bp(k, j) = b(perm[k], j);
    }
    const nn::Matrix x = nn::MatMulSorted(tape.Constant(a), tape.Constant(b)).value();
    const nn::Matrix y = nn::MatMulSorted(tape.Constant(ap), tape.Constant(bp)).value();
    CHECK(x == y);
    const nn::Matrix plain = nn::MatMul(a, b);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(plain[i]).epsilon(1e-12));

    nn::Matrix row = RandomMatrix(1, n, rng, 5.0);
    nn::Matrix row_p(1, n);
    for (std::size_t k = 0; k < n; ++k) row_p[k] = row[perm[k]];
    const nn::Matrix sm = nn::Softmax(tape.Constant(row), nn::Axis::kRows).value();
    const nn::Matrix sm_p = nn::Softmax(tape.Constant(row_p), nn::Axis::kRows).value();
    for (std::size_t k = 0; k < n; ++k) CHECK(sm_p[k] == sm[perm[k]]);
  }
}

TEST_CASE("softmax_masked examples") {
  nn::Tape tape;
  auto uniform = nn::SoftmaxMasked(tape.Constant(nn::Matrix(1, 3)), nn::Mask(3, 0));
  for (double v : uniform.value().values()) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));

  auto two = nn::SoftmaxMasked(tape.Constant(nn::Matrix::FromRows({{1, 2}})), nn::Mask(2, 0));
  const double e1 = std::exp(1.0), e2 = std::exp(2.0);
  CHECK(two.value()[0] == doctest::Approx(e1 / (e1 + e2)).epsilon(1e-14));
  CHECK(two.value()[1] == doctest::Approx(e2 / (e1 + e2)).epsilon(1e-14));
  CHECK(two.value()[0] == doctest::Approx(0.2689).epsilon(1e-4));
  CHECK(two.value()[1] == doctest::Approx(0.7311).epsilon(1e-4));

  auto single = nn::SoftmaxMasked(tape.Constant(nn::Matrix::FromRows({{5, 9}})), nn::Mask{0, 1});
  CHECK(single.value()[0] == 1.0);
  CHECK(single.value()[1] == 0.0);

  CHECK_THROWS_AS(nn::SoftmaxMasked(tape.Constant(nn::Matrix(1, 2)), nn::Mask{1, 1}),
                  threadsum::EmptySupportError);
}

TEST_CASE("softmax outputs are a distribution over the unmasked support") {
  nn::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = RandomDim(rng, 1, 9);
    nn::Mask mask(n, 0);
    for (auto& m : mask) m = std::bernoulli_distribution(0.3)(rng) ? 1 : 0;
    mask[RandomDim(rng, 0, n - 1)] = 0;
    nn::Tape tape;
    auto y = nn::SoftmaxMasked(tape.Constant(RandomMatrix(1, n, rng, 20.0)), mask);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(y.value()[i] >= 0.0);
      if (mask[i] != 0) CHECK(y.value()[i] == 0.0);
      total += y.value()[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("elementwise examples") {
  nn::Tape tape;
  CHECK(nn::Sigmoid(tape.Constant(nn::Matrix(1, 1))).value()[0] == 0.5);
  auto h = nn::Hadamard(tape.Constant(nn::Matrix::FromRows({{1, 2, 3}})),
                        tape.Constant(nn::Matrix::FromRows({{0, 1, 2}})));
  CHECK(h.value() == nn::Matrix::FromRows({{0, 2, 6}}));
  std::vector<nn::Var> parts{tape.Constant(nn::Matrix::FromRows({{1, 2}})),
                             tape.Constant(nn::Matrix::FromRows({{3}}))};
  CHECK(nn::ConcatCols(parts).value() == nn::Matrix::FromRows({{1, 2, 3}}));
  CHECK(nn::Tanh(tape.Constant(nn::Matrix(1, 1))).value()[0] == 0.0);
  CHECK_THROWS_AS(nn::Add(tape.Constant(nn::Matrix(2, 3)), tape.Constant(nn::Matrix(3, 2))),
                  threadsum::DimensionError);
  CHECK_THROWS_AS(nn::ConcatCols(std::vector<nn::Var>{tape.Constant(nn::Matrix(2, 1)),
                                                      tape.Constant(nn::Matrix(3, 1))}),
                  threadsum::DimensionError);
}

TEST_CASE("analytic backward examples") {
  nn::Parameter x("x", nn::Matrix(1, 1));
  {
    nn::Tape tape;
    auto y = nn::Sigmoid(tape.Param(x));
    tape.Backward(y);
  }
  CHECK(x.grad[0] == 0.25);

  // d/dz CE(softmax(z), onehot) = softmax(z) - onehot.
  nn::Parameter z("z", nn::Matrix(1, 4));
  {
    nn::Tape tape;
    std::vector<int> target{2};
    tape.Backward(nn::CrossEntropyRows(tape.Param(z), target));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(z.grad[i] == doctest::Approx((i == 2 ? -0.75 : 0.25)).epsilon(1e-15));
  }
}

TEST_CASE("backward rejects non-scalar losses and reports non-finite gradients") {
  nn::Parameter p("p", nn::Matrix(2, 2, 1.0));
  nn::Tape tape;
  auto v = tape.Param(p);
  CHECK_THROWS_AS(tape.Backward(v), threadsum::DimensionError);

  nn::Parameter q("q", nn::Matrix(1, 1, 1.0));
  nn::Tape tape2;
  auto huge = nn::Scale(tape2.Param(q), std::numeric_limits<double>::infinity());
  auto loss = nn::Sum(nn::Hadamard(huge, huge));
  try {
    tape2.Backward(loss);
    FAIL("expected NumericError");
  } catch (const threadsum::NumericError& e) {
    CHECK(std::string(e.what()).find("op '") != std::string::npos);
  }
}

TEST_CASE("frozen parameters receive no gradient") {
  nn::Parameter table("table", nn::Matrix::FromRows({{0, 0}, {1, 2}, {3, 4}}), true);
  nn::Parameter w("w", nn::Matrix::FromRows({{1}, {1}}));
  nn::Tape tape;
  std::vector<int> ids{1, 2, 2};
  auto loss = nn::Sum(nn::MatMul(tape.Embed(table, ids), tape.Param(w)));
  tape.Backward(loss);
  for (double g : table.grad.values()) CHECK(g == 0.0);
  CHECK(w.grad == nn::Matrix::FromRows({{7}, {10}}));

  std::vector<int> bad{3};
  CHECK_THROWS_AS(tape.Embed(table, bad), threadsum::VocabularyError);
}

TEST_CASE("finite-difference gradients for every op") {
  const auto reports = threadsum::testing::RunGradientSuite(kGradTrials, 2024);
  CHECK(reports.size() == 18);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.instances == static_cast<std::size_t>(kGradTrials));
    CHECK(r.max_rel_error < kGradTol);
  }
}

TEST_CASE("fixed seed gives bit-identical forward and backward") {
  auto run = [] {
    nn::Rng rng(99);
    nn::Parameter a("a", RandomMatrix(3, 4, rng));
    nn::Parameter b("b", RandomMatrix(4, 2, rng));
    nn::Tape tape;
    auto out = nn::Softmax(nn::MatMul(tape.Param(a), tape.Param(b)), nn::Axis::kRows);
    auto loss = Project(tape, nn::Tanh(out), RandomMatrix(3, 2, rng));
    tape.Backward(loss);
    return std::tuple{loss.value(), a.grad, b.grad};
  };
  CHECK(run() == run());
}

TEST_CASE("adam moves parameters against the gradient") {
  nn::Parameter p("p", nn::Matrix::FromRows({{1.0, -1.0}}));
  nn::Adam adam({&p});
  for (int step = 0; step < 200; ++step) {
    nn::Tape tape;
    auto v = tape.Param(p);
    tape.Backward(nn::Sum(nn::Hadamard(v, v)));
    adam.Step();
  }
  CHECK(std::abs(p.value[0]) < 0.9);
  CHECK(std::abs(p.value[1]) < 0.9);
  // First step of Adam moves each coordinate by lr regardless of scale.
  nn::Parameter q("q", nn::Matrix::FromRows({{3.0}}));
  nn::Adam first({&q});
  {
    nn::Tape tape;
    tape.Backward(nn::Scale(tape.Param(q), 5.0));
  }
  first.Step();
  CHECK(q.value[0] == doctest::Approx(3.0 - 1e-3).epsilon(1e-9));
}

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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/gradcheck.hpp"
#include "support/gradient_suite.hpp"
#include "support/oracles.hpp"
#include "support/rake_oracle.hpp"
#include "support/reductions.hpp"
#include "threadsum/baselines.hpp"
#include "threadsum/bidi_attention.hpp"
#include "threadsum/corpus.hpp"
#include "threadsum/harness/evaluate.hpp"
#include "threadsum/harness/experiment.hpp"
#include "threadsum/harness/model.hpp"
#include "threadsum/harness/synth.hpp"
#include "threadsum/harness/train.hpp"
#include "threadsum/keywords.hpp"
#include "threadsum/rouge.hpp"
#include "threadsum/siatl.hpp"
#include "threadsum/summarunner.hpp"

namespace nn = threadsum::nn;
namespace h = threadsum::harness;
namespace corpus = threadsum::corpus;
namespace att = threadsum::attention;
namespace sr = threadsum::summarunner;
namespace si = threadsum::siatl;
using threadsum::testing::RandomMatrix;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure notes; the first few are kept for the report line.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  std::size_t checks() const { return checks_; }
  Outcome Finish(const std::string& summary) const {
    Outcome o;
    o.pass = failures_ == 0;
    o.detail = summary + ", " + std::to_string(checks_) + " checks";
    if (!o.pass) {
      o.detail += ", " + std::to_string(failures_) + " failed:";
      for (const auto& n : notes_) o.detail += " [" + n + "]";
    }
    return o;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::size_t Dim(nn::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Gradient suite: every op and composed block, >= 20 random instances,
// relative error < 1e-4, under two minutes.
Outcome GradientSuite() {
  const auto start = Clock::now();
  const auto reports = threadsum::testing::RunGradientSuite(20, 20260101);
  const double elapsed = Seconds(start);
  Tally t;
  double worst = 0.0;
  for (const auto& r : reports) {
    t.Expect(r.instances >= 20, r.name + " ran " + std::to_string(r.instances) + " instances");
    t.Expect(r.max_rel_error < 1e-4, r.name + " error " + Fmt("%.3g", r.max_rel_error));
    worst = std::max(worst, r.max_rel_error);
  }
  t.Expect(elapsed < 120.0, "runtime " + Fmt("%.1f", elapsed) + " s");
  return t.Finish(std::to_string(reports.size()) + " ops/blocks, worst rel error " +
                  Fmt("%.2e", worst) + ", " + Fmt("%.1f", elapsed) + " s");
}

// Attention algebra over randomized m, n <= 6.
Outcome AttentionAlgebra() {
  nn::Rng rng(31);
  Tally t;
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = Dim(rng, 1, 6);
    const std::size_t n = trial % 5 == 0 ? 1 : Dim(rng, 1, 6);
    const std::size_t d = Dim(rng, 1, 6);
    att::AttentionParams p;
    p.config.width = d;
    p.config.swap_normalization = trial % 2 == 1;
    p.w0 = nn::Parameter("w0", RandomMatrix(1, 3 * d, rng, 2.0));
    const nn::Matrix hd = RandomMatrix(m, d, rng, 2.0);
    const nn::Matrix hb = RandomMatrix(n, d, rng, 2.0);
    nn::Tape tape;
    const auto out = att::Run(tape, p, tape.Constant(hd), tape.Constant(hb));
    // The swapped variant exchanges which softmax each matrix holds.
    const bool swap = p.config.swap_normalization;
    const nn::Matrix& row = swap ? out.col_norm.value() : out.row_norm.value();
    const nn::Matrix& col = swap ? out.row_norm.value() : out.col_norm.value();
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row(i, j);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += col(i, j);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    t.Expect(out.g.cols() == 4 * d && out.g.rows() == m, "G shape " + out.g.value().ShapeString());
    if (n == 1 && !p.config.swap_normalization) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
          t.Expect(out.a.value()(i, c) == hb(0, c), "n=1 A row differs from h_b");
        }
      }
    }
    // Matched beginning permutation: S columns follow it, A does not move.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    nn::Matrix hb_perm(n, d);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < d; ++c) hb_perm(j, c) = hb(perm[j], c);
    }
    nn::Tape tape2;
    const auto moved = att::Run(tape2, p, tape2.Constant(hd), tape2.Constant(hb_perm));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        t.Expect(moved.similarity.value()(i, j) == out.similarity.value()(i, perm[j]),
                 "S column not permuted");
      }
    }
    t.Expect(moved.a.value() == out.a.value(), "A changed under beginning permutation");
    t.Expect(moved.b.value() == out.b.value(), "B changed under beginning permutation");
  }
  t.Expect(worst <= 1e-9, "stochasticity error " + Fmt("%.3g", worst));
  return t.Finish("300 random blocks, max |sum-1| " + Fmt("%.1e", worst));
}

// Synthetic threads for model-level checks, with one shared vocabulary.
struct Toy {
  std::vector<corpus::RawThread> threads;
  corpus::Vocabulary vocab;
};

Toy ToyThreads(std::size_t count, std::uint64_t seed) {
  Toy t;
  t.threads = h::SynthThreads(count, seed);
  t.vocab = corpus::Vocabulary::Build(t.threads, 1);
  return t;
}

Outcome ReductionChecks() {
  Tally t;
  const Toy toy = ToyThreads(6, 41);
  const auto stop = threadsum::keywords::EnglishStopwords();
  std::size_t docs = 0;
  for (const auto& thread : toy.threads) {
    const auto doc = corpus::Assemble(thread, toy.vocab, {});
    ++docs;
    for (std::uint64_t seed : {1u, 2u}) {
      for (bool kw : {false, true}) {
        sr::SummaRunnerConfig cfg;
        cfg.embedding_width = 4;
        cfg.hidden = 3;
        cfg.use_keywords = kw;
        nn::Rng rng(seed);
        auto base = sr::SummaRunner::Init(cfg, toy.vocab.size(), rng);
        base.scorer.abs_pos.value = RandomMatrix(10, 1, rng);
        base.scorer.rel_pos.value = RandomMatrix(4, 1, rng);
        base.scorer.bias.value = RandomMatrix(1, 1, rng);
        const auto wide = threadsum::testing::WidenToBidi(base, rng);
        threadsum::DocumentInputs in{&doc, nullptr, {}};
        if (kw) {
          in.keyword_ids = threadsum::keywords::KeywordIds(
              threadsum::keywords::KeywordsForDocument(doc, stop), toy.vocab);
        }
        auto copy = wide;
        t.Expect(base.Probabilities(in) == copy.Probabilities(in),
                 "summarunner " + doc.id + (kw ? " +keywords" : ""));
      }
      for (bool self_att : {false, true}) {
        si::SiatlConfig cfg;
        cfg.embedding_width = 3;
        cfg.shared_hidden = 2;
        cfg.task_hidden = 2;
        cfg.use_self_att = self_att;
        nn::Rng rng(seed);
        auto base = si::Siatl::Init(cfg, toy.vocab.size(), rng);
        auto wide = threadsum::testing::WidenToBidi(base, rng);
        const threadsum::DocumentInputs in{&doc, nullptr, {}};
        t.Expect(base.Probabilities(in) == wide.Probabilities(in),
                 "siatl " + doc.id + (self_att ? " self-att" : " final-state"));
      }
    }
  }
  return t.Finish(std::to_string(docs) + " threads, bit-equal probabilities");
}

Outcome RougeOracle() {
  Tally t;
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cand = threadsum::testing::RandomTokens(rng, 0, 12, 5);
    const auto ref = threadsum::testing::RandomTokens(rng, 0, 12, 5);
    for (int n : {1, 2}) {
      t.Expect(threadsum::rouge::RougeN(cand, ref, n) ==
                   threadsum::testing::BruteRougeN(cand, ref, n),
               "R" + std::to_string(n) + " trial " + std::to_string(trial));
    }
    t.Expect(threadsum::rouge::RougeL(cand, ref) == threadsum::testing::BruteRougeL(cand, ref),
             "RL trial " + std::to_string(trial));
  }
  const std::vector<std::string> sat{"the", "cat", "sat"}, cat{"the", "cat"};
  t.Expect(threadsum::rouge::RougeN(sat, cat, 1).f1 == 0.8, "the cat sat / the cat R1 F1");
  const std::vector<std::string> abc{"a", "b", "c"}, axc{"a", "x", "c"};
  const auto rl = threadsum::rouge::RougeL(abc, axc);
  t.Expect(rl.f1 == 2.0 / 3.0 && rl.precision == 2.0 / 3.0 && rl.recall == 2.0 / 3.0,
           "a b c / a x c RL");
  return t.Finish("100 random pairs plus hand cases");
}

Outcome RakeOracle() {
  Tally t;
  std::mt19937_64 rng(99);
  const std::vector<std::string> pool{"the", "of", "and", ",",    ".",   "!",
                                      "cat", "dog", "fish", "tree", "sky", "run"};
  const threadsum::keywords::StopwordList stop{"the", "of", "and"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> text(Dim(rng, 0, 16));
    for (auto& tok : text) tok = pool[Dim(rng, 0, pool.size() - 1)];
    t.Expect(threadsum::keywords::Rake(text, stop) == threadsum::testing::BruteRake(text, stop),
             "trial " + std::to_string(trial));
  }
  return t.Finish("50 random toy texts");
}

Outcome BaselineContracts() {
  namespace bl = threadsum::baselines;
  Tally t;
  t.Expect(bl::ClusterCount(9) == 3, "k(9)");
  t.Expect(bl::ClusterCount(10) == 4, "k(10)");
  t.Expect(bl::ClusterCount(1) == 1, "k(1)");
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const std::size_t dims = 1 + rng() % 5;
    nn::Matrix pts(n, dims);
    for (auto& v : pts.values()) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto r = bl::KMeans(pts, bl::ClusterCount(n), rng());
    for (std::size_t i = 1; i < r.objective.size(); ++i) {
      t.Expect(r.objective[i] <= r.objective[i - 1], "objective rose");
    }
    std::vector<std::size_t> seen;
    for (std::size_t head : r.heads) {
      t.Expect(head < n, "head out of range");
      seen.push_back(r.assignment[head]);
    }
    std::sort(seen.begin(), seen.end());
    t.Expect(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "two heads per cluster");
    std::vector<std::size_t> used(r.assignment.begin(), r.assignment.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    t.Expect(seen == used, "a nonempty cluster has no head");
  }
  // LSA projection on a synthetic corpus.
  std::vector<std::vector<std::string>> sentences;
  for (const auto& thread : h::SynthThreads(40, 3)) {
    for (const auto& c : thread.comments) {
      for (const auto& s : corpus::SplitSentences(c)) sentences.push_back(corpus::Tokenize(s));
    }
  }
  const auto space = bl::LsaSpace::Fit(sentences, 20);
  const nn::Matrix& u = space.projection();
  double worst = 0.0;
  for (std::size_t a = 0; a < u.cols(); ++a) {
    for (std::size_t b = 0; b < u.cols(); ++b) {
      double dot = 0.0;
      for (std::size_t r = 0; r < u.rows(); ++r) dot += u(r, a) * u(r, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  t.Expect(worst < 1e-8, "orthonormality error " + Fmt("%.3g", worst));
  return t.Finish("k-means 50 trials, LSA " + std::to_string(u.cols()) + " dims, |UtU-I| " +
                  Fmt("%.1e", worst));
}

Outcome DirectionalExperiment(std::string* report_text) {
  const auto start = Clock::now();
  const auto data = h::MakeSyntheticSplits(200, 50, 50, 2026);
  const auto configs = h::DeskPairs();
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  h::MatrixOptions options;
  options.lsa_dims = 200;
  options.progress = [&](const std::string& name, const h::SeedRun& run) {
    std::cerr << "  [" << Fmt("%.0f", Seconds(start)) << " s] " << name << " seed " << run.seed
              << " best epoch " << run.best_epoch << " test R1 "
              << Fmt("%.2f", 100.0 * run.test.r1.f1) << '\n';
  };
  const auto report = h::RunMatrix(configs, seeds, data.View(), options);
  const double elapsed = Seconds(start);
  *report_text = h::FormatMatrixReport(report);
  Tally t;
  std::string summary;
  for (const auto& p : report.pairs) {
    t.Expect(p.pass, p.variant + " vs " + p.counterpart + ": dR1 " + Fmt("%+.2f", p.delta_r1) +
                         ", wins " + std::to_string(p.wins) + "/" + std::to_string(p.seeds));
    summary += (summary.empty() ? "" : "; ") + p.variant + " dR1 " + Fmt("%+.2f", p.delta_r1) +
               " wins " + std::to_string(p.wins) + "/" + std::to_string(p.seeds);
  }
  t.Expect(report.pairs.size() == 3, "expected three bidi pairs");
  t.Expect(elapsed < 1200.0, "runtime " + Fmt("%.0f", elapsed) + " s");
  return t.Finish(summary + "; " + Fmt("%.0f", elapsed) + " s");
}

// Sentence index in a thread whose replies were reordered by `order`
// (order[new position] = old comment index, comment 0 fixed).
std::vector<std::size_t> MovedIndex(const corpus::ThreadDocument& base,
                                    const corpus::ThreadDocument& moved,
                                    const std::vector<std::size_t>& order) {
  std::vector<std::size_t> new_pos(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) new_pos[order[p]] = p;
  std::vector<std::size_t> first(order.size(), moved.size());
  for (std::size_t i = moved.size(); i-- > 0;) first[moved.comment_of[i]] = i;
  std::vector<std::size_t> base_first(order.size(), base.size());
  for (std::size_t i = base.size(); i-- > 0;) base_first[base.comment_of[i]] = i;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const std::size_t c = base.comment_of[i];
    out.push_back(first[new_pos[c]] + (i - base_first[c]));
  }
  return out;
}

Outcome OrderStructure() {
  Tally t;
  const Toy toy = ToyThreads(8, 57);
  std::size_t dependent = 0;
  std::size_t compared = 0;
  nn::Rng shuffle_rng(5);
  for (const auto& thread : toy.threads) {
    std::vector<std::size_t> order(thread.comments.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::reverse(order.begin() + 1, order.end());
    corpus::RawThread moved = thread;
    for (std::size_t p = 0; p < order.size(); ++p) {
      moved.comments[p] = thread.comments[order[p]];
      (*moved.labels)[p] = (*thread.labels)[order[p]];
    }
    const auto a = corpus::Assemble(thread, toy.vocab, {});
    const auto b = corpus::Assemble(moved, toy.vocab, {});
    const auto where = MovedIndex(a, b, order);
    for (std::size_t i = 0; i < a.size(); ++i) {
      t.Expect(a.sentences[i].text == b.sentences[where[i]].text, "sentence map");
    }
    for (bool bidi : {false, true}) {
      for (bool self_att : {false, true}) {
        si::SiatlConfig cfg;
        cfg.embedding_width = 4;
        cfg.shared_hidden = 3;
        cfg.task_hidden = 2;
        cfg.use_bidi = bidi;
        cfg.use_self_att = self_att;
        nn::Rng rng(11);
        auto model = si::Siatl::Init(cfg, toy.vocab.size(), rng);
        const auto p = model.Probabilities({&a, nullptr, {}});
        const auto q = model.Probabilities({&b, nullptr, {}});
        for (std::size_t i = 0; i < a.size(); ++i) {
          t.Expect(p[i] == q[where[i]], "siatl probability moved with reply order");
        }
      }
    }
    // The document-level extractor reads the running summary state.
    sr::SummaRunnerConfig cfg;
    cfg.embedding_width = 4;
    cfg.hidden = 3;
    nn::Rng rng(11);
    auto model = sr::SummaRunner::Init(cfg, toy.vocab.size(), rng);
    const auto p = model.Probabilities({&a, nullptr, {}});
    const auto q = model.Probabilities({&b, nullptr, {}});
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || p[i] != q[where[i]];
    dependent += differs ? 1 : 0;
    ++compared;
  }
  t.Expect(dependent == compared, "summarunner ignored reply order on " +
                                      std::to_string(compared - dependent) + " threads");

  // Forcing an early decision moves every later probability.
  nn::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = Dim(rng, 2, 8);
    const std::size_t w = Dim(rng, 2, 6);
    auto params = sr::ScorerParams::Init(w, rng);
    const nn::Matrix reps = RandomMatrix(m, w, rng, 2.0);
    sr::ScoreOptions forced;
    forced.forced_logits.assign(m, std::nullopt);
    forced.forced_logits[0] = -std::numeric_limits<double>::infinity();
    nn::Tape tape;
    const auto free_run = sr::ScoreDocument(tape, params, tape.Constant(reps)).probs.value();
    const auto pinned = sr::ScoreDocument(tape, params, tape.Constant(reps), &forced).probs.value();
    t.Expect(pinned[0] == 0.0, "forced probability");
    for (std::size_t j = 1; j < m; ++j) {
      t.Expect(pinned[j] != free_run[j], "later decision ignored the forced one");
    }
  }
  return t.Finish("siatl bit-equal under reply reordering on " + std::to_string(compared) +
                  " threads x 4 variants; summarunner order-dependent on " +
                  std::to_string(dependent) + "/" + std::to_string(compared) +
                  ", forced-logit effect on 20 scorers");
}

Outcome LengthStatsAndLayout() {
  Tally t;
  const std::vector<std::size_t> counts{2, 4};
  const auto s = h::ComputeLengthStats(counts);
  t.Expect(s.average == 3.0 && s.stddev == 1.0, "[2,4] stats");
  const Toy toy = ToyThreads(1, 77);
  corpus::RawThread all_ones = toy.threads[0];
  for (auto& labels : *all_ones.labels) std::fill(labels.begin(), labels.end(), 1);
  const std::vector<corpus::ThreadDocument> docs{corpus::Assemble(all_ones, toy.vocab, {})};
  const auto report = h::EvaluateSelections(docs, {{0}});
  t.Expect(report.gold.average == static_cast<double>(docs[0].size()), "all-ones gold average");
  const std::vector<std::string> datasets{"Threads", "Generic"};
  const h::LengthRow human{"Human", {{13.38, 8.16}, {7.15, 7.58}}};
  const std::vector<h::LengthRow> systems{{"summarunner", {{8.2, 3.52}, {6.4, 3.6}}},
                                          {"siatl", {{16.0, 6.48}, {21.85, 12.69}}}};
  t.Expect(h::FormatLengthTable(datasets, human, systems) ==
               "model\tThreads Avg\tThreads Std\tGeneric Avg\tGeneric Std\n"
               "Human\t13.38\t8.16\t7.15\t7.58\n"
               "summarunner\t8.20\t3.52\t6.40\t3.60\n"
               "siatl\t16.00\t6.48\t21.85\t12.69\n",
           "length table layout");
  return t.Finish("avg/std fixtures and the system-vs-human table");
}

Outcome Determinism() {
  Tally t;
  auto corpus_bytes = [] {
    std::string out;
    for (const auto& thread : h::SynthThreads(30, 8)) out += corpus::SerializeThread(thread);
    return out;
  };
  t.Expect(corpus_bytes() == corpus_bytes(), "synthetic corpus bytes");
  const auto data = h::MakeSyntheticSplits(16, 6, 6, 9);
  for (auto kind : {h::ModelKind::kSummaRunner, h::ModelKind::kSiatl}) {
    h::RunConfig c = h::DeskConfig();
    c.model = kind;
    c.bidi = true;
    c.epochs = 3;
    c.embedding_width = c.hidden = c.siatl_embedding_width = c.shared_hidden = 6;
    c.task_hidden = 4;
    auto run = [&] {
      const auto trained = h::Train(c, {data.train, data.dev});
      const auto eval = h::EvaluateCheckpoint(trained.best, data.test);
      std::ostringstream docs;
      h::WriteDocumentReport(docs, eval);
      return std::pair{h::SerializeCheckpoint(trained.best), docs.str()};
    };
    const auto first = run();
    const auto second = run();
    t.Expect(first.first == second.first, h::ModelKindName(kind) + " checkpoint bytes");
    t.Expect(first.second == second.second, h::ModelKindName(kind) + " report bytes");
  }
  std::vector<h::RunConfig> pair = h::DeskPairs();
  pair.resize(2);
  for (auto& c : pair) c.epochs = 1;
  const std::vector<std::uint64_t> seeds{4, 5, 6};
  h::MatrixOptions options;
  options.lsa_dims = 10;
  const auto m1 = h::FormatMatrixReport(h::RunMatrix(pair, seeds, data.View(), options));
  const auto m2 = h::FormatMatrixReport(h::RunMatrix(pair, seeds, data.View(), options));
  t.Expect(m1 == m2, "matrix report bytes");
  return t.Finish("corpus, checkpoints, evaluation and matrix reports rerun byte-identical");
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
  };
  std::string matrix_report;
  const std::vector<Criterion> criteria{
      {"gradient suite", GradientSuite},
      {"attention algebra", AttentionAlgebra},
      {"reduction checks", ReductionChecks},
      {"rouge oracle equivalence", RougeOracle},
      {"rake oracle equivalence", RakeOracle},
      {"baseline contracts", BaselineContracts},
      {"bidi directional experiment (threads and generic)",
       [&] { return DirectionalExperiment(&matrix_report); }},
      {"extractor order structure", OrderStructure},
      {"length statistics and table layout", LengthStatsAndLayout},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  if (!matrix_report.empty()) {
    std::ofstream("acceptance_matrix.tsv") << matrix_report;
    std::cout << "\n" << matrix_report;
  }
  std::cout << "\n" << (criteria.size() - static_cast<std::size_t>(failed)) << "/"
            << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

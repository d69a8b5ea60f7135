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

#include "threadsum/harness/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "threadsum/baselines.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/harness/synth.hpp"
#include "threadsum/harness/train.hpp"

namespace threadsum::harness {
namespace {

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

F1Summary Summarize(const std::vector<SeedRun>& runs,
                    rouge::RougeScore rouge::SummaryScore::*variant) {
  std::vector<double> values;
  for (const auto& r : runs) values.push_back(100.0 * (r.test.*variant).f1);
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

void Finish(ConfigResult& row) {
  row.r1 = Summarize(row.runs, &rouge::SummaryScore::r1);
  row.r2 = Summarize(row.runs, &rouge::SummaryScore::r2);
  row.rl = Summarize(row.runs, &rouge::SummaryScore::rl);
}

// Config entries with the compared fields blanked.
std::vector<std::pair<std::string, std::string>> PairKey(RunConfig config) {
  config.bidi = false;
  config.seed = 0;
  return ConfigEntries(config);
}

std::vector<corpus::ThreadDocument> AssembleAll(std::span<const corpus::RawThread> threads,
                                                const corpus::Vocabulary& vocab,
                                                const corpus::AssembleOptions& options) {
  std::vector<corpus::ThreadDocument> docs;
  for (const auto& t : threads) docs.push_back(corpus::Assemble(t, vocab, options));
  return docs;
}

std::vector<ConfigResult> RunBaselines(const RunConfig& base,
                                       std::span<const std::uint64_t> seeds,
                                       const CorpusSplits& splits, const MatrixOptions& options) {
  const auto vocab = corpus::Vocabulary::Build(splits.train, base.min_count);
  const auto assembly = base.Assembly();
  const auto train_docs = AssembleAll(splits.train, vocab, assembly);
  const auto test_docs = AssembleAll(splits.test, vocab, assembly);
  std::vector<std::vector<std::string>> sentences;
  for (const auto& d : train_docs) {
    for (const auto& s : d.sentences) sentences.push_back(corpus::Tokenize(s.text));
  }
  const auto space = baselines::LsaSpace::Fit(sentences, options.lsa_dims);

  ConfigResult lsa;
  lsa.name = "lsa+kmeans";
  lsa.group = "baselines";
  ConfigResult lead;
  lead.name = "lead" + std::to_string(options.lead_n);
  lead.group = "baselines";
  for (std::uint64_t seed : seeds) {
    std::vector<std::vector<std::size_t>> lsa_sel;
    std::vector<std::vector<std::size_t>> lead_sel;
    for (const auto& d : test_docs) {
      lsa_sel.push_back(baselines::KMeansExtract(d, space, seed));
      lead_sel.push_back(baselines::LeadN(d, options.lead_n));
    }
    for (auto [row, sel] : {std::pair{&lsa, &lsa_sel}, std::pair{&lead, &lead_sel}}) {
      const EvalReport report = EvaluateSelections(test_docs, *sel);
      SeedRun run{.seed = seed, .test = report.aggregate, .system = report.system};
      row->gold = report.gold;
      row->runs.push_back(run);
      if (options.progress) options.progress(row->name, run);
    }
  }
  Finish(lsa);
  Finish(lead);
  return {lsa, lead};
}

}  // namespace

RunConfig DeskConfig() {
  RunConfig c;
  c.embedding_width = 16;
  c.hidden = 16;
  c.siatl_embedding_width = 16;
  c.shared_hidden = 16;
  c.task_hidden = 8;
  c.batch_size = 8;
  c.learning_rate = 0.01;
  c.epochs = 20;
  return c;
}

std::vector<RunConfig> DeskPairs(const RunConfig& base) {
  std::vector<RunConfig> out;
  for (int group = 0; group < 3; ++group) {
    for (bool bidi : {false, true}) {
      RunConfig c = base;
      c.model = group == 1 ? ModelKind::kSiatl : ModelKind::kSummaRunner;
      if (group == 2) c.mode = corpus::BeginningMode::kGeneric;
      c.bidi = bidi;
      out.push_back(c);
    }
  }
  return out;
}

SyntheticSplits MakeSyntheticSplits(std::size_t train, std::size_t dev, std::size_t test,
                                    std::uint64_t seed) {
  auto all = SynthThreads(train + dev + test, seed);
  SyntheticSplits s;
  s.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(train));
  s.dev.assign(all.begin() + static_cast<std::ptrdiff_t>(train),
               all.begin() + static_cast<std::ptrdiff_t>(train + dev));
  s.test.assign(all.begin() + static_cast<std::ptrdiff_t>(train + dev), all.end());
  return s;
}

std::string ConfigName(const RunConfig& config) {
  std::string name = ModelKindName(config.model);
  if (config.model == ModelKind::kSiatl && !config.self_att) name += "-selfatt";
  if (config.bidi) name += "+bidi";
  if (config.keywords) name += "+keywords";
  if (config.contextual) name += "+contextual";
  if (config.mode == corpus::BeginningMode::kGeneric) {
    name += " (generic N=" + std::to_string(config.begin_n) + ")";
  }
  return name;
}

MatrixReport RunMatrix(std::span<const RunConfig> configs, std::span<const std::uint64_t> seeds,
                       const CorpusSplits& splits, const MatrixOptions& options) {
  if (configs.size() < 2) throw ConfigError("experiment matrix needs at least two configs");
  if (seeds.size() < 3) throw ConfigError("experiment matrix needs at least three seeds");
  MatrixReport report;
  report.seeds.assign(seeds.begin(), seeds.end());
  if (options.baselines) report.rows = RunBaselines(configs.front(), seeds, splits, options);

  // Model groups in a fixed order, auto-regressive first; input order within
  // a group.
  std::vector<ConfigResult> models;
  for (ModelKind kind : {ModelKind::kSummaRunner, ModelKind::kSiatl}) {
    for (const auto& config : configs) {
      if (config.model != kind) continue;
      ConfigResult row;
      row.name = ConfigName(config);
      row.group = ModelKindName(kind);
      row.config = config;
      for (std::uint64_t seed : seeds) {
        RunConfig c = config;
        c.seed = seed;
        const TrainResult trained = Train(c, {splits.train, splits.dev, splits.contextual});
        const keywords::StopwordList stopwords =
            c.keywords ? StopwordsFor(c) : keywords::StopwordList{};
        const auto test_docs =
            Prepare(splits.test, trained.best.vocab, c, {&stopwords, splits.contextual});
        const EvalReport eval =
            Evaluate(*trained.best.model, test_docs, c.threshold, c.max_sentences);
        SeedRun run{.seed = seed,
                    .best_epoch = trained.best.epoch,
                    .dev_score = trained.best.dev_score,
                    .test = eval.aggregate,
                    .system = eval.system};
        row.gold = eval.gold;
        row.runs.push_back(run);
        if (options.progress) options.progress(row.name, run);
      }
      Finish(row);
      models.push_back(std::move(row));
    }
  }

  for (const auto& variant : models) {
    if (!variant.config->bidi) continue;
    const auto key = PairKey(*variant.config);
    for (const auto& base : models) {
      if (base.config->bidi || PairKey(*base.config) != key) continue;
      PairCheck check{.variant = variant.name, .counterpart = base.name};
      check.delta_r1 = variant.r1.mean - base.r1.mean;
      check.seeds = seeds.size();
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (variant.runs[s].test.r1.f1 > base.runs[s].test.r1.f1) ++check.wins;
      }
      check.pass = check.delta_r1 >= -0.5 && 3 * check.wins >= 2 * check.seeds;
      report.pairs.push_back(check);
    }
  }

  const ConfigResult* best[2] = {nullptr, nullptr};
  for (const auto& row : models) {
    if (row.config->mode != corpus::BeginningMode::kThread) continue;
    const int g = row.config->model == ModelKind::kSiatl ? 1 : 0;
    if (best[g] == nullptr || row.r1.mean > best[g]->r1.mean) best[g] = &row;
  }
  if (best[0] != nullptr && best[1] != nullptr) {
    report.order = OrderCheck{.non_autoregressive = best[1]->name,
                              .autoregressive = best[0]->name,
                              .delta_r1 = best[1]->r1.mean - best[0]->r1.mean};
    report.order->pass = report.order->delta_r1 > 0.0;
  }

  for (auto& row : models) report.rows.push_back(std::move(row));
  return report;
}

void WriteMatrixReport(std::ostream& out, const MatrixReport& report) {
  out << "group\tmodel\tseeds\tR1\tR1 std\tR2\tR2 std\tRL\tRL std\tdR1\tdR2\tdRL\tavg len\n";
  for (const auto& row : report.rows) {
    out << row.group << '\t' << row.name << '\t' << row.runs.size() << '\t'
        << Fixed2(row.r1.mean) << '\t' << Fixed2(row.r1.stddev) << '\t' << Fixed2(row.r2.mean)
        << '\t' << Fixed2(row.r2.stddev) << '\t' << Fixed2(row.rl.mean) << '\t'
        << Fixed2(row.rl.stddev);
    const ConfigResult* base = nullptr;
    for (const auto& pair : report.pairs) {
      if (pair.variant != row.name) continue;
      for (const auto& r : report.rows) {
        if (r.name == pair.counterpart) base = &r;
      }
    }
    if (base != nullptr) {
      out << '\t' << Fixed2(row.r1.mean - base->r1.mean) << '\t'
          << Fixed2(row.r2.mean - base->r2.mean) << '\t' << Fixed2(row.rl.mean - base->rl.mean);
    } else {
      out << "\t-\t-\t-";
    }
    double len = 0.0;
    for (const auto& r : row.runs) len += r.system.average;
    out << '\t' << Fixed2(len / static_cast<double>(row.runs.size())) << '\n';
  }
  out << '\n' << "check\tvariant\tcounterpart\tdR1\twins\tseeds\tpass\n";
  for (const auto& p : report.pairs) {
    out << "bidi\t" << p.variant << '\t' << p.counterpart << '\t' << Fixed2(p.delta_r1) << '\t'
        << p.wins << '\t' << p.seeds << '\t' << (p.pass ? "yes" : "no") << '\n';
  }
  if (report.order) {
    out << "non-autoregressive\t" << report.order->non_autoregressive << '\t'
        << report.order->autoregressive << '\t' << Fixed2(report.order->delta_r1) << "\t-\t"
        << report.seeds.size() << '\t' << (report.order->pass ? "yes" : "no") << '\n';
  }
}

std::string FormatMatrixReport(const MatrixReport& report) {
  std::ostringstream out;
  WriteMatrixReport(out, report);
  return out.str();
}

}  // namespace threadsum::harness

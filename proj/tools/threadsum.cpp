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

// Command-line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "threadsum/baselines.hpp"
#include "threadsum/corpus.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/harness/config.hpp"
#include "threadsum/harness/evaluate.hpp"
#include "threadsum/harness/experiment.hpp"
#include "threadsum/harness/model.hpp"
#include "threadsum/harness/synth.hpp"
#include "threadsum/harness/train.hpp"
#include "threadsum/rouge.hpp"

namespace fs = std::filesystem;
namespace h = threadsum::harness;
namespace corpus = threadsum::corpus;

namespace {

// Config file (optional) plus key=value overrides, in that order.
struct ConfigArgs {
  std::string path;
  std::vector<std::string> overrides;

  void Register(CLI::App* app) {
    app->add_option("-c,--config", path, "key=value config file");
    app->add_option("-s,--set", overrides, "override one field, key=value")->take_all();
  }

  h::RunConfig Resolve() const {
    h::RunConfig config = path.empty() ? h::RunConfig{} : h::LoadConfig(path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw threadsum::ConfigError("--set expects key=value: " + kv);
      h::Apply(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.Validate();
    return config;
  }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw threadsum::FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw threadsum::FormatError("cannot write " + path.string());
  out << text;
}

std::unique_ptr<threadsum::encoders::ContextualStore> MaybeContextual(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_unique<threadsum::encoders::ContextualStore>(
      threadsum::encoders::ContextualStore::Load(path));
}

std::vector<std::uint64_t> ParseSeeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw threadsum::ConfigError("bad seed '" + item + "'");
    }
  }
  return seeds;
}

std::string ScoreTable(const std::string& name, const threadsum::rouge::SummaryScore& score) {
  const std::vector<threadsum::rouge::ReportRow> rows{{name, score}};
  return threadsum::rouge::FormatScoreReport(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threadsum: extractive summarization of discussion threads"};
  app.require_subcommand(1);

  // synth
  std::size_t synth_count = 300;
  std::uint64_t synth_seed = 1;
  double synth_overlap = 0.5;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic thread corpus (JSONL)");
  synth->add_option("--count", synth_count, "number of threads");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--min-overlap", synth_overlap, "salient-sentence overlap with the post");
  synth->add_option("-o,--output", synth_out, "output JSONL")->required();

  // prep
  ConfigArgs prep_cfg;
  std::string prep_in, prep_out;
  auto* prep = app.add_subcommand("prep", "assemble a corpus into preprocessed documents");
  prep_cfg.Register(prep);
  prep->add_option("-i,--input", prep_in, "corpus JSONL")->required();
  prep->add_option("-o,--output", prep_out, "document JSONL")->required();

  // train
  ConfigArgs train_cfg;
  auto* train = app.add_subcommand("train", "train and keep the best dev checkpoint");
  train_cfg.Register(train);

  // eval
  std::string eval_ckpt, eval_in, eval_ctx, eval_dir, eval_dataset = "test";
  auto* eval = app.add_subcommand("eval", "score a checkpoint on a corpus");
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint JSON")->required();
  eval->add_option("-i,--input", eval_in, "corpus JSONL")->required();
  eval->add_option("--contextual", eval_ctx, "contextual vector file");
  eval->add_option("--report-dir", eval_dir, "directory for TSV reports");
  eval->add_option("--dataset", eval_dataset, "dataset label for the length table");

  // summarize
  std::string sum_ckpt, sum_in, sum_ctx;
  std::size_t sum_index = 0;
  auto* summarize = app.add_subcommand("summarize", "print the summary of one thread");
  summarize->add_option("--checkpoint", sum_ckpt, "checkpoint JSON")->required();
  summarize->add_option("-i,--input", sum_in, "corpus JSONL")->required();
  summarize->add_option("--index", sum_index, "thread index in the file");
  summarize->add_option("--contextual", sum_ctx, "contextual vector file");

  // baseline
  ConfigArgs base_cfg;
  std::string base_method = "lsa", base_lsa_out;
  std::uint64_t base_seed = 1;
  std::size_t base_n = 3;
  auto* baseline = app.add_subcommand("baseline", "unsupervised baselines (lsa+kmeans, lead)");
  base_cfg.Register(baseline);
  baseline->add_option("--method", base_method, "lsa or lead")
      ->check(CLI::IsMember({"lsa", "lead"}));
  baseline->add_option("--seed", base_seed, "k-means seed");
  baseline->add_option("--n", base_n, "sentences kept by lead");
  baseline->add_option("--save-lsa", base_lsa_out, "write the fitted LSA space");

  // rouge
  std::string rouge_cand;
  std::vector<std::string> rouge_refs;
  auto* rouge_cmd = app.add_subcommand("rouge", "score a candidate file against references");
  rouge_cmd->add_option("candidate", rouge_cand, "candidate text file")->required();
  rouge_cmd->add_option("references", rouge_refs, "reference text files")->required();

  // matrix
  std::vector<std::string> matrix_cfgs;
  std::string matrix_seeds = "1,2,3", matrix_out;
  bool matrix_desk = false;
  std::uint64_t matrix_corpus_seed = 0;
  bool matrix_synthetic = false;
  auto* matrix = app.add_subcommand("matrix", "multi-seed comparison of configurations");
  matrix->add_option("-c,--config", matrix_cfgs, "config files (first one supplies paths)");
  matrix->add_flag("--desk", matrix_desk, "use the built-in reduced-width bidi pairs");
  matrix->add_option("--seeds", matrix_seeds, "comma-separated seeds");
  matrix->add_option("--synthetic", matrix_corpus_seed,
                     "generate a 200/50/50 synthetic corpus with this seed")
      ->each([&](const std::string&) { matrix_synthetic = true; });
  matrix->add_option("-o,--output", matrix_out, "report TSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const auto threads = h::SynthThreads(synth_count, synth_seed, {synth_overlap});
      corpus::WriteCorpus(synth_out, threads);
    } else if (prep->parsed()) {
      const auto config = prep_cfg.Resolve();
      if (config.train_path.empty()) throw threadsum::ConfigError("prep needs train_path");
      const auto vocab =
          corpus::Vocabulary::Build(corpus::ReadCorpus(config.train_path), config.min_count);
      std::ofstream out(prep_out, std::ios::binary);
      if (!out) throw threadsum::FormatError("cannot write " + prep_out);
      for (const auto& t : corpus::ReadCorpus(prep_in)) {
        out << corpus::SerializeDocument(corpus::Assemble(t, vocab, config.Assembly())) << '\n';
      }
    } else if (train->parsed()) {
      const auto config = train_cfg.Resolve();
      if (config.train_path.empty() || config.dev_path.empty()) {
        throw threadsum::ConfigError("train needs train_path and dev_path");
      }
      const auto train_set = corpus::ReadCorpus(config.train_path);
      const auto dev_set = corpus::ReadCorpus(config.dev_path);
      const auto ctx = MaybeContextual(config.contextual ? config.contextual_path : "");
      const fs::path dir(config.output_dir);
      fs::create_directories(dir);
      std::ostringstream history;
      history << "epoch\ttrain_loss\tdev_score\tbest\n";
      const auto result = h::Train(config, {train_set, dev_set, ctx.get()},
                                   [&](const h::EpochRecord& e) {
                                     std::cerr << "epoch " << e.epoch << " loss " << e.train_loss
                                               << " dev " << e.dev_score
                                               << (e.best ? " *" : "") << '\n';
                                     history << e.epoch << '\t' << e.train_loss << '\t'
                                             << e.dev_score << '\t' << (e.best ? 1 : 0) << '\n';
                                   });
      h::SaveCheckpoint((dir / "checkpoint.json").string(), result.best);
      WriteFile(dir / "history.tsv", history.str());
      WriteFile(dir / "config.txt", h::FormatConfig(config));
      std::cout << "best epoch " << result.best.epoch << " dev " << result.best.dev_score << '\n';
    } else if (eval->parsed()) {
      const auto ckpt = h::LoadCheckpoint(eval_ckpt);
      const auto threads = corpus::ReadCorpus(eval_in);
      const auto ctx = MaybeContextual(eval_ctx);
      const auto report = h::EvaluateCheckpoint(ckpt, threads, ctx.get());
      const std::string name = h::ConfigName(ckpt.config);
      const std::string scores = ScoreTable(name, report.aggregate);
      const std::vector<std::string> datasets{eval_dataset};
      const std::vector<h::LengthRow> systems{{name, {report.system}}};
      const std::string lengths =
          h::FormatLengthTable(datasets, {"Human", {report.gold}}, systems);
      std::cout << scores << '\n' << lengths;
      if (!eval_dir.empty()) {
        fs::create_directories(eval_dir);
        std::ostringstream docs;
        h::WriteDocumentReport(docs, report);
        WriteFile(fs::path(eval_dir) / "scores.tsv", scores);
        WriteFile(fs::path(eval_dir) / "lengths.tsv", lengths);
        WriteFile(fs::path(eval_dir) / "documents.tsv", docs.str());
        WriteFile(fs::path(eval_dir) / "config.txt", h::FormatConfig(ckpt.config));
      }
    } else if (summarize->parsed()) {
      const auto ckpt = h::LoadCheckpoint(sum_ckpt);
      const auto threads = corpus::ReadCorpus(sum_in);
      if (sum_index >= threads.size()) {
        throw threadsum::ConfigError("--index " + std::to_string(sum_index) + " out of range");
      }
      const auto ctx = MaybeContextual(sum_ctx);
      const auto stop = ckpt.config.keywords ? h::StopwordsFor(ckpt.config)
                                             : threadsum::keywords::StopwordList{};
      const std::vector<corpus::RawThread> one{threads[sum_index]};
      const auto docs = h::Prepare(one, ckpt.vocab, ckpt.config, {&stop, ctx.get()});
      const auto probs = ckpt.model->Probabilities(docs[0].Inputs());
      for (std::size_t i :
           threadsum::Select(probs, ckpt.config.threshold, ckpt.config.max_sentences)) {
        std::cout << docs[0].doc.sentences[i].text << '\n';
      }
    } else if (baseline->parsed()) {
      const auto config = base_cfg.Resolve();
      if (config.test_path.empty()) throw threadsum::ConfigError("baseline needs test_path");
      const auto test_set = corpus::ReadCorpus(config.test_path);
      const auto vocab = corpus::Vocabulary::Build(test_set, 1);
      std::vector<corpus::ThreadDocument> docs;
      for (const auto& t : test_set) docs.push_back(corpus::Assemble(t, vocab, config.Assembly()));
      std::vector<std::vector<std::size_t>> selections;
      std::string name;
      if (base_method == "lead") {
        name = "lead" + std::to_string(base_n);
        for (const auto& d : docs) selections.push_back(threadsum::baselines::LeadN(d, base_n));
      } else {
        if (config.train_path.empty()) throw threadsum::ConfigError("lsa needs train_path");
        std::vector<std::vector<std::string>> sentences;
        for (const auto& t : corpus::ReadCorpus(config.train_path)) {
          for (const auto& c : t.comments) {
            for (const auto& s : corpus::SplitSentences(c)) {
              sentences.push_back(corpus::Tokenize(s));
            }
          }
        }
        const auto space = threadsum::baselines::LsaSpace::Fit(sentences, config.lsa_dims);
        if (!base_lsa_out.empty()) space.Save(base_lsa_out);
        name = "lsa+kmeans";
        for (const auto& d : docs) {
          selections.push_back(threadsum::baselines::KMeansExtract(d, space, base_seed));
        }
      }
      const auto report = h::EvaluateSelections(docs, selections);
      std::cout << ScoreTable(name, report.aggregate);
    } else if (rouge_cmd->parsed()) {
      const auto candidate = corpus::Tokenize(ReadFile(rouge_cand));
      std::vector<threadsum::rouge::Tokens> refs;
      for (const auto& r : rouge_refs) refs.push_back(corpus::Tokenize(ReadFile(r)));
      const auto score = threadsum::rouge::ScoreSummary(candidate, refs);
      std::cout << ScoreTable(fs::path(rouge_cand).filename().string(), score);
    } else if (matrix->parsed()) {
      std::vector<h::RunConfig> configs;
      for (const auto& path : matrix_cfgs) {
        configs.push_back(h::LoadConfig(path));
        configs.back().Validate();
      }
      if (matrix_desk) {
        for (const auto& c : h::DeskPairs()) configs.push_back(c);
      }
      if (configs.empty()) throw threadsum::ConfigError("matrix needs --config or --desk");
      const auto seeds = ParseSeeds(matrix_seeds);
      h::SyntheticSplits data;
      if (matrix_synthetic) {
        data = h::MakeSyntheticSplits(200, 50, 50, matrix_corpus_seed);
      } else {
        const auto& first = configs.front();
        if (first.train_path.empty() || first.dev_path.empty() || first.test_path.empty()) {
          throw threadsum::ConfigError("matrix needs train/dev/test paths or --synthetic");
        }
        data.train = corpus::ReadCorpus(first.train_path);
        data.dev = corpus::ReadCorpus(first.dev_path);
        data.test = corpus::ReadCorpus(first.test_path);
      }
      const auto ctx = MaybeContextual(configs.front().contextual_path);
      auto splits = data.View();
      splits.contextual = ctx.get();
      h::MatrixOptions options;
      options.lsa_dims = configs.front().lsa_dims;
      options.lead_n = configs.front().begin_n;
      options.progress = [](const std::string& name, const h::SeedRun& run) {
        std::cerr << name << " seed " << run.seed << " R1 " << run.test.r1.f1 << '\n';
      };
      const auto report = h::RunMatrix(configs, seeds, splits, options);
      const std::string text = h::FormatMatrixReport(report);
      if (!matrix_out.empty()) WriteFile(matrix_out, text);
      std::cout << text;
    }
  } catch (const threadsum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

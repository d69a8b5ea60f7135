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

#include "threadsum/harness/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "threadsum/errors.hpp"

namespace threadsum::harness {
namespace {

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

LengthStats ComputeLengthStats(std::span<const std::size_t> counts) {
  if (counts.empty()) throw EmptySupportError("length statistics need at least one document");
  const double n = static_cast<double>(counts.size());
  double sum = 0.0;
  for (std::size_t c : counts) sum += static_cast<double>(c);
  const double mean = sum / n;
  double sq = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / n)};
}

EvalReport EvaluateSelections(std::span<const corpus::ThreadDocument> docs,
                              const std::vector<std::vector<std::size_t>>& selections) {
  if (docs.size() != selections.size()) {
    throw DimensionError("got " + std::to_string(selections.size()) + " selections for " +
                         std::to_string(docs.size()) + " documents");
  }
  if (docs.empty()) throw EmptySupportError("evaluation needs at least one document");
  EvalReport report;
  std::vector<rouge::SummaryScore> scores;
  std::vector<std::size_t> system_counts;
  std::vector<std::size_t> gold_counts;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& doc = docs[i];
    DocumentResult r;
    r.id = doc.id;
    r.selected = selections[i];
    for (int label : doc.labels) r.gold_count += label != 0 ? 1 : 0;
    const auto candidate = corpus::SummaryTokens(doc, r.selected);
    r.score = rouge::ScoreSummary(candidate, {corpus::Tokenize(doc.reference)});
    scores.push_back(r.score);
    system_counts.push_back(r.selected.size());
    gold_counts.push_back(r.gold_count);
    report.documents.push_back(std::move(r));
  }
  report.aggregate = rouge::CorpusAverage(scores);
  report.system = ComputeLengthStats(system_counts);
  report.gold = ComputeLengthStats(gold_counts);
  return report;
}

EvalReport Evaluate(Extractor& model, std::span<const PreparedDoc> docs, double threshold,
                    std::optional<std::size_t> max_sentences) {
  std::vector<corpus::ThreadDocument> plain;
  std::vector<std::vector<std::size_t>> selections;
  plain.reserve(docs.size());
  for (const auto& p : docs) {
    const auto probs = model.Probabilities(p.Inputs());
    selections.push_back(Select(probs, threshold, max_sentences));
    plain.push_back(p.doc);
  }
  return EvaluateSelections(plain, selections);
}

EvalReport EvaluateCheckpoint(const Checkpoint& checkpoint,
                              std::span<const corpus::RawThread> threads,
                              const encoders::ContextualStore* contextual) {
  const RunConfig& config = checkpoint.config;
  const keywords::StopwordList stopwords =
      config.keywords ? StopwordsFor(config) : keywords::StopwordList{};
  const auto docs = Prepare(threads, checkpoint.vocab, config, {&stopwords, contextual});
  bool known = false;
  for (const auto& p : docs) {
    for (const auto& s : p.doc.sentences) {
      for (std::size_t i = 0; i < s.length && !known; ++i) {
        known = s.ids[i] != corpus::Vocabulary::kUnk;
      }
    }
  }
  if (!docs.empty() && !known) {
    throw VocabularyError("no token of the evaluation corpus is in the checkpoint vocabulary");
  }
  return Evaluate(*checkpoint.model, docs, config.threshold, config.max_sentences);
}

void WriteDocumentReport(std::ostream& out, const EvalReport& report) {
  out << "id\tselected\tgold\tR1\tR2\tRL\n";
  for (const auto& d : report.documents) {
    out << d.id << '\t' << d.selected.size() << '\t' << d.gold_count << '\t'
        << Fixed2(100.0 * d.score.r1.f1) << '\t' << Fixed2(100.0 * d.score.r2.f1) << '\t'
        << Fixed2(100.0 * d.score.rl.f1) << '\n';
  }
}

void WriteLengthTable(std::ostream& out, std::span<const std::string> datasets,
                      const LengthRow& human, std::span<const LengthRow> systems) {
  auto row = [&](const LengthRow& r) {
    if (r.stats.size() != datasets.size()) {
      throw DimensionError("length row " + r.system + " has " + std::to_string(r.stats.size()) +
                           " entries for " + std::to_string(datasets.size()) + " datasets");
    }
    out << r.system;
    for (const auto& s : r.stats) out << '\t' << Fixed2(s.average) << '\t' << Fixed2(s.stddev);
    out << '\n';
  };
  out << "model";
  for (const auto& d : datasets) out << '\t' << d << " Avg\t" << d << " Std";
  out << '\n';
  row(human);
  for (const auto& r : systems) row(r);
}

std::string FormatLengthTable(std::span<const std::string> datasets, const LengthRow& human,
                              std::span<const LengthRow> systems) {
  std::ostringstream out;
  WriteLengthTable(out, datasets, human, systems);
  return out.str();
}

}  // namespace threadsum::harness

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

// Scoring a trained extractor and summary-length statistics.

#ifndef THREADSUM_HARNESS_EVALUATE_HPP_
#define THREADSUM_HARNESS_EVALUATE_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "threadsum/extractor.hpp"
#include "threadsum/harness/model.hpp"
#include "threadsum/rouge.hpp"

namespace threadsum::harness {

// Mean and population standard deviation of per-document sentence counts.
struct LengthStats {
  double average = 0.0;
  double stddev = 0.0;
  friend bool operator==(const LengthStats&, const LengthStats&) = default;
};

// Throws EmptySupportError on an empty list.
LengthStats ComputeLengthStats(std::span<const std::size_t> counts);

struct DocumentResult {
  std::string id;
  std::vector<std::size_t> selected;
  std::size_t gold_count = 0;
  rouge::SummaryScore score;
};

struct EvalReport {
  std::vector<DocumentResult> documents;
  rouge::SummaryScore aggregate;
  LengthStats system;
  LengthStats gold;

  // Mean of the aggregate R-1, R-2 and R-L F1.
  double MeanF1() const { return aggregate.MeanF1(); }
};

// Scores the selections of `model` against each document's reference.
EvalReport Evaluate(Extractor& model, std::span<const PreparedDoc> docs, double threshold,
                    std::optional<std::size_t> max_sentences = std::nullopt);

// Prepares `threads` for the checkpoint's model and scores it. Throws
// VocabularyError when no corpus token is in the checkpoint vocabulary.
EvalReport EvaluateCheckpoint(const Checkpoint& checkpoint,
                              std::span<const corpus::RawThread> threads,
                              const encoders::ContextualStore* contextual = nullptr);

// Scores precomputed selections (one index list per document).
EvalReport EvaluateSelections(std::span<const corpus::ThreadDocument> docs,
                              const std::vector<std::vector<std::size_t>>& selections);

// Per-document TSV: id, selected count, gold count, R-1/R-2/R-L F1 x100.
void WriteDocumentReport(std::ostream& out, const EvalReport& report);

// Length table: one Avg/Std column pair per dataset, the human row first.
struct LengthRow {
  std::string system;
  std::vector<LengthStats> stats;  // one per dataset
};

void WriteLengthTable(std::ostream& out, std::span<const std::string> datasets,
                      const LengthRow& human, std::span<const LengthRow> systems);
std::string FormatLengthTable(std::span<const std::string> datasets, const LengthRow& human,
                              std::span<const LengthRow> systems);

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_EVALUATE_HPP_

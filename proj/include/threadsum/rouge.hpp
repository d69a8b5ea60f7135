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

// ROUGE-1 / ROUGE-2 / ROUGE-L scoring.
//
// Inputs are token sequences. NormalizeForRouge() lowercases and drops
// punctuation-only tokens; no stemming is applied, so absolute numbers are
// not directly comparable with toolkits run with a stemmer.

#ifndef THREADSUM_ROUGE_HPP_
#define THREADSUM_ROUGE_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace threadsum::rouge {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const RougeScore&, const RougeScore&) = default;
};

// f1 = 2PR/(P+R), or 0 when P+R == 0.
RougeScore FromPrecisionRecall(double precision, double recall);

struct SummaryScore {
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
  // Set when the candidate or every reference was empty after normalization.
  bool degenerate = false;

  // Mean of the three F1 values.
  double MeanF1() const { return (r1.f1 + r2.f1 + rl.f1) / 3.0; }
  friend bool operator==(const SummaryScore&, const SummaryScore&) = default;
};

using Tokens = std::vector<std::string>;

Tokens NormalizeForRouge(std::span<const std::string> tokens);

// Clipped n-gram overlap. Empty candidate or reference n-gram lists give an
// all-zero score.
RougeScore RougeN(std::span<const std::string> candidate, std::span<const std::string> reference,
                  int n);
// LCS-based score: P = LCS/|cand|, R = LCS/|ref|.
RougeScore RougeL(std::span<const std::string> candidate, std::span<const std::string> reference);
std::size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);

// Normalizes both sides and scores R-1, R-2, R-L. With several references
// each variant takes the maximum F1 over references.
SummaryScore ScoreSummary(std::span<const std::string> candidate,
                          const std::vector<Tokens>& references);

// Unweighted mean of P, R and F1 per variant. Requires at least one score.
SummaryScore CorpusAverage(std::span<const SummaryScore> scores);

struct ReportRow {
  std::string model;
  SummaryScore score;
};

// TSV with header "model\tR1\tR2\tRL"; F1 x100 with two decimals.
void WriteScoreReport(std::ostream& out, std::span<const ReportRow> rows);
std::string FormatScoreReport(std::span<const ReportRow> rows);

}  // namespace threadsum::rouge

#endif  // THREADSUM_ROUGE_HPP_

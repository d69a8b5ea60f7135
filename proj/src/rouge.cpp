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

#include "threadsum/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "threadsum/errors.hpp"

namespace threadsum::rouge {
namespace {

bool IsPunctuationOnly(const std::string& token) {
  return std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::ispunct(c) != 0; });
}

std::map<std::vector<std::string>, std::size_t> CountNgrams(std::span<const std::string> tokens,
                                                           int n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  const auto len = static_cast<std::size_t>(n);
  if (tokens.size() < len) return counts;
  for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + len)];
  }
  return counts;
}

RougeScore Better(const RougeScore& a, const RougeScore& b) { return b.f1 > a.f1 ? b : a; }

}  // namespace

RougeScore FromPrecisionRecall(double precision, double recall) {
  RougeScore s{precision, recall, 0.0};
  if (precision + recall > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

Tokens NormalizeForRouge(std::span<const std::string> tokens) {
  Tokens out;
  for (const auto& tok : tokens) {
    if (tok.empty() || IsPunctuationOnly(tok)) continue;
    std::string lower = tok;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.push_back(std::move(lower));
  }
  return out;
}

RougeScore RougeN(std::span<const std::string> candidate, std::span<const std::string> reference,
                  int n) {
  if (n < 1) throw ConfigError("rouge n must be >= 1");
  const auto cand = CountNgrams(candidate, n);
  const auto ref = CountNgrams(reference, n);
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (const auto& [gram, c] : cand) cand_total += c;
  for (const auto& [gram, c] : ref) ref_total += c;
  if (cand_total == 0 || ref_total == 0) return {};
  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return FromPrecisionRecall(static_cast<double>(overlap) / static_cast<double>(cand_total),
                             static_cast<double>(overlap) / static_cast<double>(ref_total));
}

std::size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(std::span<const std::string> candidate, std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double lcs = static_cast<double>(LcsLength(candidate, reference));
  return FromPrecisionRecall(lcs / static_cast<double>(candidate.size()),
                             lcs / static_cast<double>(reference.size()));
}

SummaryScore ScoreSummary(std::span<const std::string> candidate,
                          const std::vector<Tokens>& references) {
  const Tokens cand = NormalizeForRouge(candidate);
  SummaryScore best;
  bool any_reference = false;
  for (const auto& raw_ref : references) {
    const Tokens ref = NormalizeForRouge(raw_ref);
    if (!ref.empty()) any_reference = true;
    best.r1 = Better(best.r1, RougeN(cand, ref, 1));
    best.r2 = Better(best.r2, RougeN(cand, ref, 2));
    best.rl = Better(best.rl, RougeL(cand, ref));
  }
  best.degenerate = cand.empty() || !any_reference;
  return best;
}

SummaryScore CorpusAverage(std::span<const SummaryScore> scores) {
  if (scores.empty()) throw ConfigError("corpus average over zero documents");
  SummaryScore total;
  auto accumulate = [](RougeScore& into, const RougeScore& s) {
    into.precision += s.precision;
    into.recall += s.recall;
    into.f1 += s.f1;
  };
  for (const auto& s : scores) {
    accumulate(total.r1, s.r1);
    accumulate(total.r2, s.r2);
    accumulate(total.rl, s.rl);
    total.degenerate = total.degenerate || s.degenerate;
  }
  const double n = static_cast<double>(scores.size());
  for (RougeScore* r : {&total.r1, &total.r2, &total.rl}) {
    r->precision /= n;
    r->recall /= n;
    r->f1 /= n;
  }
  return total;
}

void WriteScoreReport(std::ostream& out, std::span<const ReportRow> rows) {
  out << "model\tR1\tR2\tRL\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.2f\t%.2f\n", row.score.r1.f1 * 100.0,
                  row.score.r2.f1 * 100.0, row.score.rl.f1 * 100.0);
    out << row.model << buf;
  }
}

std::string FormatScoreReport(std::span<const ReportRow> rows) {
  std::ostringstream out;
  WriteScoreReport(out, rows);
  return out.str();
}

}  // namespace threadsum::rouge

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

// RAKE keyword extraction, one sentence at a time.

#ifndef THREADSUM_KEYWORDS_HPP_
#define THREADSUM_KEYWORDS_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"

namespace threadsum::keywords {

using StopwordList = std::set<std::string>;

// The built-in English list; identical to data/stopwords_en.txt.
const StopwordList& EnglishStopwords();
// One lowercase token per line; blank lines and '#' comments are skipped.
// Throws FormatError if the file is missing or empty.
StopwordList LoadStopwords(const std::string& path);

struct Phrase {
  std::vector<std::string> tokens;
  double score = 0.0;
  friend bool operator==(const Phrase&, const Phrase&) = default;
};

// Candidates are maximal runs of tokens that are neither stopwords nor
// punctuation. word score = degree / frequency, where degree counts the
// word's own occurrences plus its co-occurrences inside candidates.
// Repeated candidates are reported once, at their first position. Sorted by
// score descending, ties by first occurrence.
std::vector<Phrase> Rake(std::span<const std::string> tokens, const StopwordList& stopwords);

inline constexpr std::size_t kDefaultTopT = 5;

// Per sentence: the top_t phrases flattened, in score order.
// Throws ConfigError when top_t is 0.
std::vector<std::vector<std::string>> KeywordsForDocument(const corpus::ThreadDocument& doc,
                                                          const StopwordList& stopwords,
                                                          std::size_t top_t = kDefaultTopT);

std::vector<std::vector<int>> KeywordIds(const std::vector<std::vector<std::string>>& keywords,
                                         const corpus::Vocabulary& vocab);

}  // namespace threadsum::keywords

#endif  // THREADSUM_KEYWORDS_HPP_

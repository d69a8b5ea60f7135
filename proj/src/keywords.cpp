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

#include "threadsum/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "threadsum/errors.hpp"

namespace threadsum::keywords {

namespace {

bool IsDelimiter(const std::string& token, const StopwordList& stopwords) {
  if (stopwords.count(token) != 0) return true;
  return std::none_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isalnum(c) != 0; });
}

}  // namespace

const StopwordList& EnglishStopwords() {
  static const StopwordList kList{
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
    "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves",
  };
  return kList;
}

StopwordList LoadStopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open stopword file " + path);
  StopwordList words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  if (words.empty()) throw FormatError("stopword file " + path + " is empty");
  return words;
}

std::vector<Phrase> Rake(std::span<const std::string> tokens, const StopwordList& stopwords) {
  std::vector<std::vector<std::string>> candidates;
  std::vector<std::string> current;
  for (const auto& tok : tokens) {
    if (IsDelimiter(tok, stopwords)) {
      if (!current.empty()) candidates.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(tok);
    }
  }
  if (!current.empty()) candidates.push_back(std::move(current));

  std::map<std::string, double> freq;
  std::map<std::string, double> degree;
  for (const auto& phrase : candidates) {
    for (const auto& word : phrase) {
      freq[word] += 1.0;
      degree[word] += static_cast<double>(phrase.size());
    }
  }

  std::vector<Phrase> out;
  for (const auto& phrase : candidates) {
    if (std::any_of(out.begin(), out.end(), [&](const Phrase& p) { return p.tokens == phrase; })) {
      continue;
    }
    double score = 0.0;
    for (const auto& word : phrase) score += degree[word] / freq[word];
    out.push_back({phrase, score});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Phrase& a, const Phrase& b) { return a.score > b.score; });
  return out;
}

std::vector<std::vector<std::string>> KeywordsForDocument(const corpus::ThreadDocument& doc,
                                                          const StopwordList& stopwords,
                                                          std::size_t top_t) {
  if (top_t == 0) throw ConfigError("top_t must be at least 1");
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.size());
  for (const auto& sentence : doc.sentences) {
    std::vector<std::string> flat;
    const auto phrases = Rake(sentence.tokens, stopwords);
    for (std::size_t p = 0; p < phrases.size() && p < top_t; ++p) {
      flat.insert(flat.end(), phrases[p].tokens.begin(), phrases[p].tokens.end());
    }
    out.push_back(std::move(flat));
  }
  return out;
}

std::vector<std::vector<int>> KeywordIds(const std::vector<std::vector<std::string>>& keywords,
                                         const corpus::Vocabulary& vocab) {
  std::vector<std::vector<int>> out;
  out.reserve(keywords.size());
  for (const auto& seq : keywords) {
    std::vector<int> ids;
    ids.reserve(seq.size());
    for (const auto& tok : seq) ids.push_back(vocab.Lookup(tok));
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace threadsum::keywords

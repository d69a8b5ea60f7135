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

#include "threadsum/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>

#include "json.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/rouge.hpp"

namespace threadsum::corpus {
namespace {

using nlohmann::json;

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsTerminal(char c) { return c == '.' || c == '?' || c == '!'; }
bool IsCloser(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

constexpr std::array<std::string_view, 44> kAbbreviations = {
    "mr.",   "mrs.",  "ms.",   "dr.",   "prof.", "sr.",  "jr.",  "st.",  "mt.",
    "vs.",   "etc.",  "e.g.",  "i.e.",  "u.s.",  "u.k.", "inc.", "ltd.", "co.",
    "corp.", "no.",   "fig.",  "jan.",  "feb.",  "mar.", "apr.", "jun.", "jul.",
    "aug.",  "sep.",  "sept.", "oct.",  "nov.",  "dec.", "gen.", "gov.", "rep.",
    "sen.",  "capt.", "lt.",   "col.",  "approx.", "ave.", "rd.", "dept.",
};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// True when the word ending at text[dot] (inclusive) must not end a sentence.
bool GuardedAbbreviation(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !IsSpace(text[start - 1])) --start;
  while (start < dot && (text[start] == '(' || text[start] == '"' || text[start] == '\'')) ++start;
  const std::string word = Lower(text.substr(start, dot - start + 1));
  if (word.size() == 2 && IsAlpha(word[0])) return true;  // initials such as "J."
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

std::vector<int> ParseLabelRow(const json& row) {
  std::vector<int> out;
  for (const auto& v : row) {
    const int label = v.get<int>();
    if (label != 0 && label != 1) throw FormatError("labels must be 0 or 1");
    out.push_back(label);
  }
  return out;
}

}  // namespace

std::span<const std::string_view> AbbreviationGuards() { return kAbbreviations; }

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (IsSpace(c)) {
      flush();
    } else if (IsPunct(c)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsTerminal(text[j])) ++j;
    const bool single_dot = j - i == 1 && text[i] == '.';
    while (j < text.size() && IsCloser(text[j])) ++j;
    std::size_t next = j;
    while (next < text.size() && IsSpace(text[next])) ++next;
    const bool at_end = next == text.size();
    const bool before_capital = next > j && !at_end && IsUpper(text[next]);
    const bool guarded = single_dot && GuardedAbbreviation(text, i);
    if ((at_end || before_capital) && !guarded) {
      const auto sentence = Trim(text.substr(start, j - start));
      if (!sentence.empty()) out.emplace_back(sentence);
      start = j;
    }
    i = j;
  }
  const auto tail = Trim(text.substr(std::min(start, text.size())));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

Vocabulary::Vocabulary() {
  Add(std::string(kPadToken));
  Add(std::string(kUnkToken));
}

void Vocabulary::Add(std::string token) {
  index_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

Vocabulary Vocabulary::Build(std::span<const RawThread> corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  for (const auto& thread : corpus) {
    for (const auto& comment : thread.comments) {
      for (auto& tok : Tokenize(comment)) ++counts[std::move(tok)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : counts) {
    if (n >= min_count && tok != kPadToken && tok != kUnkToken) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  for (auto& [tok, n] : kept) vocab.Add(tok);
  return vocab;
}

Vocabulary Vocabulary::FromTokens(std::span<const std::string> tokens) {
  Vocabulary vocab;
  for (const auto& tok : tokens) {
    if (vocab.Contains(tok)) throw FormatError("duplicate vocabulary token '" + tok + "'");
    vocab.Add(tok);
  }
  return vocab;
}

int Vocabulary::Lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::Contains(std::string_view token) const {
  return index_.count(std::string(token)) != 0;
}

const std::string& Vocabulary::Token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw VocabularyError("token id " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

IndexRange BeginningGeneric(std::size_t num_sentences, std::size_t n) {
  return {0, std::min(n, num_sentences)};
}

std::vector<int> GreedyOracleLabels(std::span<const std::vector<std::string>> sentences,
                                    std::span<const std::string> reference) {
  const std::vector<rouge::Tokens> refs{rouge::Tokens(reference.begin(), reference.end())};
  std::vector<int> labels(sentences.size(), 0);
  double current = 0.0;
  while (true) {
    double best_gain = 0.0;
    std::size_t best = sentences.size();
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (labels[i] != 0) continue;
      std::vector<std::string> cand;
      for (std::size_t k = 0; k < sentences.size(); ++k) {
        if (labels[k] != 0 || k == i) cand.insert(cand.end(), sentences[k].begin(), sentences[k].end());
      }
      const double gain = rouge::ScoreSummary(cand, refs).r1.f1 - current;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == sentences.size()) break;
    labels[best] = 1;
    current += best_gain;
  }
  return labels;
}

ThreadDocument Assemble(const RawThread& thread, const Vocabulary& vocab,
                        const AssembleOptions& options) {
  if (options.max_tokens == 0) throw ConfigError("max_tokens must be positive");
  ThreadDocument doc;
  doc.id = thread.id;
  doc.max_tokens = options.max_tokens;
  if (thread.labels && thread.labels->size() != thread.comments.size()) {
    throw FormatError("thread '" + thread.id + "': labels cover " +
                      std::to_string(thread.labels->size()) + " comments, thread has " +
                      std::to_string(thread.comments.size()));
  }
  std::size_t first_comment_sentences = 0;
  for (std::size_t c = 0; c < thread.comments.size(); ++c) {
    const auto split = SplitSentences(thread.comments[c]);
    if (thread.labels && (*thread.labels)[c].size() != split.size()) {
      throw FormatError("thread '" + thread.id + "' comment " + std::to_string(c) + ": " +
                        std::to_string((*thread.labels)[c].size()) + " labels for " +
                        std::to_string(split.size()) + " sentences");
    }
    for (std::size_t s = 0; s < split.size(); ++s) {
      Sentence sent;
      sent.text = split[s];
      sent.tokens = Tokenize(split[s]);
      if (sent.tokens.size() > options.max_tokens) sent.tokens.resize(options.max_tokens);
      sent.length = sent.tokens.size();
      sent.ids.assign(options.max_tokens, Vocabulary::kPad);
      for (std::size_t t = 0; t < sent.length; ++t) sent.ids[t] = vocab.Lookup(sent.tokens[t]);
      doc.sentences.push_back(std::move(sent));
      doc.comment_of.push_back(c);
      doc.labels.push_back(thread.labels ? (*thread.labels)[c][s] : 0);
    }
    if (c == 0) first_comment_sentences = split.size();
  }
  if (doc.sentences.empty()) throw FormatError("thread '" + thread.id + "' is empty");

  if (options.mode == BeginningMode::kGeneric) {
    doc.beginning = BeginningGeneric(doc.size(), std::max<std::size_t>(options.begin_n, 1));
  } else if (first_comment_sentences > 0) {
    doc.beginning = {0, first_comment_sentences};
  } else {
    // Blank first comment: fall back to the first non-empty comment.
    const std::size_t first = doc.comment_of.front();
    std::size_t end = 0;
    while (end < doc.size() && doc.comment_of[end] == first) ++end;
    doc.beginning = {0, end};
  }

  if (thread.summary) {
    doc.reference = *thread.summary;
    if (!thread.labels) {
      std::vector<std::vector<std::string>> sents;
      for (const auto& s : doc.sentences) sents.push_back(Tokenize(s.text));
      doc.labels = GreedyOracleLabels(sents, Tokenize(*thread.summary));
    }
  } else {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (doc.labels[i] == 0) continue;
      if (!doc.reference.empty()) doc.reference += ' ';
      doc.reference += doc.sentences[i].text;
    }
  }
  return doc;
}

std::vector<std::string> SummaryTokens(const ThreadDocument& doc,
                                       std::span<const std::size_t> indices) {
  std::vector<std::string> out;
  for (std::size_t i : indices) {
    auto toks = Tokenize(doc.sentences.at(i).text);
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

RawThread ParseThread(std::string_view json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("corpus line is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("id") || !j.contains("comments") ||
      !j["comments"].is_array()) {
    throw FormatError("corpus line needs \"id\" and a \"comments\" array");
  }
  RawThread t;
  try {
    t.id = j["id"].get<std::string>();
    for (const auto& c : j["comments"]) t.comments.push_back(c.get<std::string>());
    if (j.contains("labels") && !j["labels"].is_null()) {
      std::vector<std::vector<int>> labels;
      for (const auto& row : j["labels"]) labels.push_back(ParseLabelRow(row));
      t.labels = std::move(labels);
    }
    if (j.contains("summary") && !j["summary"].is_null()) {
      t.summary = j["summary"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw FormatError("thread '" + t.id + "': " + e.what());
  }
  if (t.comments.empty()) throw FormatError("thread '" + t.id + "' has no comments");
  return t;
}

std::string SerializeThread(const RawThread& thread) {
  json j;
  j["id"] = thread.id;
  j["comments"] = thread.comments;
  if (thread.labels) j["labels"] = *thread.labels;
  if (thread.summary) j["summary"] = *thread.summary;
  return j.dump();
}

std::vector<RawThread> ReadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open corpus file '" + path + "'");
  std::vector<RawThread> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(ParseThread(line));
    } catch (const FormatError& e) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void WriteCorpus(const std::string& path, std::span<const RawThread> threads) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write corpus file '" + path + "'");
  for (const auto& t : threads) out << SerializeThread(t) << '\n';
}

std::string SerializeDocument(const ThreadDocument& doc) {
  json j;
  j["id"] = doc.id;
  j["max_tokens"] = doc.max_tokens;
  j["beginning"] = {doc.beginning.begin, doc.beginning.end};
  j["labels"] = doc.labels;
  j["comment_of"] = doc.comment_of;
  j["reference"] = doc.reference;
  json sents = json::array();
  for (const auto& s : doc.sentences) {
    sents.push_back({{"text", s.text}, {"tokens", s.tokens}, {"ids", s.ids}, {"length", s.length}});
  }
  j["sentences"] = std::move(sents);
  return j.dump();
}

ThreadDocument ParseDocument(std::string_view json_line) {
  ThreadDocument doc;
  try {
    const json j = json::parse(json_line);
    doc.id = j.at("id").get<std::string>();
    doc.max_tokens = j.at("max_tokens").get<std::size_t>();
    doc.beginning = {j.at("beginning").at(0).get<std::size_t>(),
                     j.at("beginning").at(1).get<std::size_t>()};
    doc.labels = j.at("labels").get<std::vector<int>>();
    doc.comment_of = j.at("comment_of").get<std::vector<std::size_t>>();
    doc.reference = j.at("reference").get<std::string>();
    for (const auto& s : j.at("sentences")) {
      Sentence sent;
      sent.text = s.at("text").get<std::string>();
      sent.tokens = s.at("tokens").get<std::vector<std::string>>();
      sent.ids = s.at("ids").get<std::vector<int>>();
      sent.length = s.at("length").get<std::size_t>();
      doc.sentences.push_back(std::move(sent));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed document record: ") + e.what());
  }
  if (doc.sentences.empty() || doc.labels.size() != doc.size() ||
      doc.comment_of.size() != doc.size() || doc.beginning.size() == 0 ||
      doc.beginning.end > doc.size()) {
    throw FormatError("document record '" + doc.id + "' is inconsistent");
  }
  return doc;
}

}  // namespace threadsum::corpus

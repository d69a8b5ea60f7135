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

// Thread ingestion: sentence splitting, tokenization, vocabulary, and the
// flattening of a thread's comments into one document whose first comment
// is the "beginning" part.
//
// Corpus files are JSON Lines, one thread per line:
//   {"id": "t1", "comments": ["...", "..."],
//    "labels": [[1, 0], [0]],        // optional, per comment per sentence
//    "summary": "..."}               // optional reference summary
// A generic (non-thread) document is a single-element "comments" list.

#ifndef THREADSUM_CORPUS_HPP_
#define THREADSUM_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace threadsum::corpus {

// Lowercases and splits on whitespace and ASCII punctuation. Punctuation
// characters are kept as one-character tokens. Bytes >= 0x80 are treated as
// word characters so UTF-8 text passes through intact.
std::vector<std::string> Tokenize(std::string_view text);

// Rule-based splitter: a run of [.?!] (plus closing quotes/brackets) ends a
// sentence when followed by whitespace and an uppercase letter, or by the end
// of the text. Known abbreviations and single-letter initials never end a
// sentence. Text without a boundary comes back as one sentence.
std::vector<std::string> SplitSentences(std::string_view text);

// The abbreviation guard list used by SplitSentences, e.g. "dr.", "e.g.".
std::span<const std::string_view> AbbreviationGuards();

struct RawThread {
  std::string id;
  std::vector<std::string> comments;
  std::optional<std::vector<std::vector<int>>> labels;
  std::optional<std::string> summary;

  friend bool operator==(const RawThread&, const RawThread&) = default;
};

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Counts tokens over every comment; tokens seen at least min_count times
  // get ids in order of descending frequency, ties broken lexicographically.
  static Vocabulary Build(std::span<const RawThread> corpus, std::size_t min_count = 2);
  // Restores a vocabulary from its non-reserved tokens in id order.
  static Vocabulary FromTokens(std::span<const std::string> tokens);

  int Lookup(std::string_view token) const;
  bool Contains(std::string_view token) const;
  const std::string& Token(int id) const;
  std::size_t size() const { return tokens_.size(); }
  // Every token in id order, reserved entries included.
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  void Add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Half-open sentence index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool Contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

enum class BeginningMode {
  kThread,   // beginning = sentences of the first comment
  kGeneric,  // beginning = first N sentences
};

struct AssembleOptions {
  // 75 for the document-level extractor, 80 for the sentence-level one.
  std::size_t max_tokens = 75;
  BeginningMode mode = BeginningMode::kThread;
  std::size_t begin_n = 3;
};

struct Sentence {
  std::string text;
  // Tokens after truncation to max_tokens.
  std::vector<std::string> tokens;
  // Token ids padded with kPad up to max_tokens.
  std::vector<int> ids;
  std::size_t length = 0;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct ThreadDocument {
  std::string id;
  std::vector<Sentence> sentences;
  std::vector<std::size_t> comment_of;
  IndexRange beginning;
  std::vector<int> labels;
  std::size_t max_tokens = 0;
  // Reference summary text: the corpus "summary" field when present,
  // otherwise the gold-labelled sentences joined in order.
  std::string reference;

  std::size_t size() const { return sentences.size(); }
  friend bool operator==(const ThreadDocument&, const ThreadDocument&) = default;
};

// Flattens comments in order into one document. Sentences are truncated to
// options.max_tokens tokens and padded; no sentence is ever dropped.
// Throws FormatError on an empty thread or misaligned labels.
ThreadDocument Assemble(const RawThread& thread, const Vocabulary& vocab,
                        const AssembleOptions& options);

// [0, min(n, num_sentences)).
IndexRange BeginningGeneric(std::size_t num_sentences, std::size_t n);

// Greedy extractive labels: repeatedly adds the sentence with the largest
// ROUGE-1 F1 gain against the reference, stopping once no gain is positive.
std::vector<int> GreedyOracleLabels(std::span<const std::vector<std::string>> sentences,
                                    std::span<const std::string> reference);

// JSON Lines I/O for RawThread.
RawThread ParseThread(std::string_view json_line);
std::string SerializeThread(const RawThread& thread);
std::vector<RawThread> ReadCorpus(const std::string& path);
void WriteCorpus(const std::string& path, std::span<const RawThread> threads);

// One-line JSON form of an assembled document (used by the `prep` cache).
std::string SerializeDocument(const ThreadDocument& doc);
ThreadDocument ParseDocument(std::string_view json_line);

// Candidate tokens of a summary: the selected sentences' tokens concatenated.
std::vector<std::string> SummaryTokens(const ThreadDocument& doc,
                                       std::span<const std::size_t> indices);

}  // namespace threadsum::corpus

#endif  // THREADSUM_CORPUS_HPP_

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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "threadsum/corpus.hpp"
#include "threadsum/errors.hpp"

namespace corpus = threadsum::corpus;
using corpus::RawThread;
using corpus::Vocabulary;
using Strings = std::vector<std::string>;

namespace {

std::string StripSpaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

RawThread Thread(std::string id, Strings comments) {
  RawThread t;
  t.id = std::move(id);
  t.comments = std::move(comments);
  return t;
}

}  // namespace

TEST_CASE("split_sentences examples") {
  CHECK(corpus::SplitSentences("Go now. It rains.") == Strings{"Go now.", "It rains."});
  CHECK(corpus::SplitSentences("Dr. Lee arrived.") == Strings{"Dr. Lee arrived."});
  CHECK(corpus::SplitSentences("hello") == Strings{"hello"});
  CHECK(corpus::SplitSentences("Really?! Yes. it is lower. Done") ==
        Strings{"Really?!", "Yes. it is lower.", "Done"});
  CHECK(corpus::SplitSentences("He said \"stop.\" Then left.") ==
        Strings{"He said \"stop.\"", "Then left."});
  CHECK(corpus::SplitSentences("We met J. Smith, e.g. Today.") ==
        Strings{"We met J. Smith, e.g. Today."});
  const auto guards = corpus::AbbreviationGuards();
  CHECK(std::find(guards.begin(), guards.end(), "dr.") != guards.end());
}

TEST_CASE("split_sentences reproduces the input modulo whitespace") {
  std::mt19937_64 rng(3);
  const Strings pieces{"Hello", "world", ".", "Dr.", "Who", "?", "!", "yes", "No", "e.g.",
                       "\"", "A", "b"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int n = std::uniform_int_distribution<int>(1, 15)(rng);
    for (int k = 0; k < n; ++k) {
      text += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
      text += std::bernoulli_distribution(0.7)(rng) ? " " : "";
    }
    std::string joined;
    for (const auto& s : corpus::SplitSentences(text)) {
      CHECK_FALSE(s.empty());
      joined += s;
    }
    CHECK(StripSpaces(joined) == StripSpaces(text));
  }
}

TEST_CASE("tokenize lowercases and keeps punctuation tokens") {
  CHECK(corpus::Tokenize("Hello, World!  it's") ==
        Strings{"hello", ",", "world", "!", "it", "'", "s"});
  CHECK(corpus::Tokenize("   ").empty());
}

TEST_CASE("build_vocab thresholds and ordering") {
  const std::vector<RawThread> one{Thread("a", {"a a b"})};
  auto v = Vocabulary::Build(one, 2);
  CHECK(v.Contains("a"));
  CHECK_FALSE(v.Contains("b"));
  CHECK(v.Lookup("b") == Vocabulary::kUnk);
  CHECK(v.Lookup("a") == 2);

  auto reserved = Vocabulary::Build(std::vector{Thread("b", {"x y z"})}, 2);
  CHECK(reserved.size() == 2);
  CHECK(reserved.Token(Vocabulary::kPad) == "<pad>");
  CHECK(reserved.Token(Vocabulary::kUnk) == "<unk>");

  auto ties = Vocabulary::Build(std::vector{Thread("c", {"y x y x z z z"})}, 1);
  CHECK(ties.Lookup("z") == 2);
  CHECK(ties.Lookup("x") < ties.Lookup("y"));

  CHECK(Vocabulary::FromTokens(std::vector<std::string>(ties.tokens().begin() + 2,
                                                        ties.tokens().end())) == ties);
  CHECK_THROWS_AS(v.Token(99), threadsum::VocabularyError);
}

TEST_CASE("assemble flattens comments and sets the beginning") {
  auto t = Thread("t", {"S one. S two.", "S three."});
  const auto vocab = Vocabulary::Build(std::vector{t}, 1);
  const auto doc = corpus::Assemble(t, vocab, {});
  REQUIRE(doc.size() == 3);
  CHECK(doc.sentences[0].text == "S one.");
  CHECK(doc.sentences[2].text == "S three.");
  CHECK(doc.comment_of == std::vector<std::size_t>{0, 0, 1});
  CHECK(doc.beginning == corpus::IndexRange{0, 2});
  CHECK(doc.labels == std::vector<int>{0, 0, 0});

  auto single = Thread("s", {"Only one."});
  CHECK(corpus::Assemble(single, vocab, {}).beginning == corpus::IndexRange{0, 1});
}

TEST_CASE("assemble truncates tokens but never drops sentences") {
  std::string longest;
  for (int i = 0; i < 80; ++i) longest += "w" + std::to_string(i % 7) + " ";
  auto t = Thread("t", {longest + "end.", "Short one."});
  t.labels = std::vector<std::vector<int>>{{1}, {0}};
  const auto vocab = Vocabulary::Build(std::vector{t}, 1);
  const auto doc = corpus::Assemble(t, vocab, {.max_tokens = 75});
  REQUIRE(doc.size() == 2);
  CHECK(doc.sentences[0].length == 75);
  CHECK(doc.sentences[0].tokens.size() == 75);
  CHECK(doc.sentences[0].ids.size() == 75);
  CHECK(doc.sentences[1].length == 3);
  CHECK(doc.sentences[1].ids[3] == Vocabulary::kPad);
  CHECK(doc.sentences[1].ids[74] == Vocabulary::kPad);
  CHECK(doc.labels == std::vector<int>{1, 0});
  CHECK(doc.reference == doc.sentences[0].text);

  const auto siatl_doc = corpus::Assemble(t, vocab, {.max_tokens = 80});
  CHECK(siatl_doc.sentences[0].length == 80);
}

TEST_CASE("assemble error paths") {
  const Vocabulary vocab;
  CHECK_THROWS_AS(corpus::Assemble(Thread("e", {"   "}), vocab, {}), threadsum::FormatError);
  auto bad = Thread("b", {"One. Two."});
  bad.labels = std::vector<std::vector<int>>{{1}};
  CHECK_THROWS_AS(corpus::Assemble(bad, vocab, {}), threadsum::FormatError);
}

TEST_CASE("generic beginning") {
  CHECK(corpus::BeginningGeneric(10, 3) == corpus::IndexRange{0, 3});
  CHECK(corpus::BeginningGeneric(2, 3) == corpus::IndexRange{0, 2});
  CHECK(corpus::BeginningGeneric(1, 1) == corpus::IndexRange{0, 1});
  auto t = Thread("g", {"Alpha one. Beta two. Gamma three. Delta four. Eps five."});
  const auto doc = corpus::Assemble(t, Vocabulary(), {.mode = corpus::BeginningMode::kGeneric});
  CHECK(doc.beginning == corpus::IndexRange{0, 3});
}

TEST_CASE("sentence count and label alignment are preserved") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    RawThread t;
    t.id = "r" + std::to_string(trial);
    std::vector<std::vector<int>> labels;
    std::size_t expected = 0;
    const int comments = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int c = 0; c < comments; ++c) {
      const int sents = std::uniform_int_distribution<int>(1, 4)(rng);
      std::string text;
      std::vector<int> row;
      for (int s = 0; s < sents; ++s) {
        text += "Word" + std::to_string(s) + " here. ";
        row.push_back(static_cast<int>(rng() % 2));
      }
      expected += static_cast<std::size_t>(sents);
      t.comments.push_back(text);
      labels.push_back(row);
    }
    t.labels = labels;
    const auto doc = corpus::Assemble(t, Vocabulary(), {.max_tokens = 2});
    CHECK(doc.size() == expected);
    CHECK(doc.labels.size() == doc.size());
    CHECK(doc.comment_of.size() == doc.size());
    CHECK(corpus::ParseDocument(corpus::SerializeDocument(doc)) == doc);
  }
}

TEST_CASE("greedy oracle labels follow ROUGE-1 gain") {
  const std::vector<Strings> sents{{"the", "cat", "sat"}, {"a", "dog", "ran"}, {"the", "mat"}};
  const Strings ref{"the", "cat", "sat", "on", "the", "mat"};
  CHECK(corpus::GreedyOracleLabels(sents, ref) == std::vector<int>{1, 0, 1});

  auto t = Thread("o", {"The cat sat. A dog ran.", "The mat."});
  t.summary = "the cat sat on the mat";
  const auto doc = corpus::Assemble(t, Vocabulary(), {});
  CHECK(doc.labels == std::vector<int>{1, 0, 1});
  CHECK(doc.reference == "the cat sat on the mat");
}

TEST_CASE("thread JSON lines round trip and reject malformed input") {
  RawThread t = Thread("x", {"Hi there.", "Reply."});
  t.labels = std::vector<std::vector<int>>{{1}, {0}};
  t.summary = "Hi there.";
  CHECK(corpus::ParseThread(corpus::SerializeThread(t)) == t);
  CHECK(corpus::ParseThread(R"({"id":"g","comments":["One doc."]})").comments.size() == 1);
  CHECK_THROWS_AS(corpus::ParseThread("{not json"), threadsum::FormatError);
  CHECK_THROWS_AS(corpus::ParseThread(R"({"id":"g"})"), threadsum::FormatError);
  CHECK_THROWS_AS(corpus::ParseThread(R"({"id":"g","comments":[]})"), threadsum::FormatError);
  CHECK_THROWS_AS(corpus::ParseThread(R"({"id":"g","comments":["a"],"labels":[[2]]})"),
                  threadsum::FormatError);
}

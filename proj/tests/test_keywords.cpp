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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/rake_oracle.hpp"
#include "threadsum/corpus.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/keywords.hpp"

namespace kw = threadsum::keywords;
namespace corpus = threadsum::corpus;
using Tokens = std::vector<std::string>;

TEST_CASE("rake examples") {
  const kw::StopwordList none;
  CHECK(kw::Rake(Tokens{"the", "of", "and"}, kw::EnglishStopwords()).empty());
  CHECK(kw::Rake(Tokens{}, none).empty());

  const Tokens text{"deep", "learning", "improves", "deep", "models"};
  const auto phrases = kw::Rake(text, none);
  REQUIRE(phrases.size() == 1);
  CHECK(phrases[0].tokens == text);
  CHECK(phrases[0].score == threadsum::testing::BruteRake(text, none)[0].score);

  const auto single = kw::Rake(Tokens{"a", "b"}, kw::StopwordList{"a"});
  REQUIRE(single.size() == 1);
  CHECK(single[0].tokens == Tokens{"b"});
  CHECK(single[0].score == 1.0);
}

TEST_CASE("punctuation splits candidates and repeats are reported once") {
  const auto phrases = kw::Rake(Tokens{"red", "car", ",", "fast", "car", ".", "red", "car"},
                                kw::StopwordList{});
  REQUIRE(phrases.size() == 2);
  // freq(car)=3, degree(car)=6; freq(red)=2, degree(red)=4; fast: 2/1.
  // Both score 4; the earlier phrase wins the tie.
  CHECK(phrases[0].tokens == Tokens{"red", "car"});
  CHECK(phrases[0].score == 4.0);
  CHECK(phrases[1].tokens == Tokens{"fast", "car"});
  CHECK(phrases[1].score == 4.0);
}

TEST_CASE("ties keep first occurrence") {
  const auto phrases = kw::Rake(Tokens{"alpha", "the", "beta", "the", "gamma"},
                                kw::EnglishStopwords());
  REQUIRE(phrases.size() == 3);
  CHECK(phrases[0].tokens == Tokens{"alpha"});
  CHECK(phrases[1].tokens == Tokens{"beta"});
  CHECK(phrases[2].tokens == Tokens{"gamma"});
}

TEST_CASE("rake equals the co-occurrence matrix oracle on random toy texts") {
  std::mt19937_64 rng(77);
  const Tokens pool{"the", "of", "and", ",", ".", "!", "cat", "dog", "fish", "tree", "sky", "run"};
  const kw::StopwordList stop{"the", "of", "and"};
  std::uniform_int_distribution<std::size_t> len(0, 16);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    Tokens text(len(rng));
    for (auto& t : text) t = pool[pick(rng)];
    CAPTURE(trial);
    const auto got = kw::Rake(text, stop);
    const auto want = threadsum::testing::BruteRake(text, stop);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].tokens == want[i].tokens);
      CHECK(got[i].score == want[i].score);
      for (const auto& tok : got[i].tokens) CHECK(stop.count(tok) == 0);
      CHECK(got[i].score >= 1.0);
    }
    CHECK(kw::Rake(text, stop) == got);
  }
}

TEST_CASE("document keywords take the top phrases per sentence") {
  corpus::RawThread thread;
  thread.id = "t";
  thread.comments = {"Battery life is great. The of and."};
  const std::vector<corpus::RawThread> threads{thread};
  const auto vocab = corpus::Vocabulary::Build(threads, 1);
  const auto doc = corpus::Assemble(thread, vocab, {});
  const auto all = kw::KeywordsForDocument(doc, kw::EnglishStopwords());
  REQUIRE(all.size() == 2);
  // "battery life" scores 4, "great" scores 1.
  CHECK(all[0] == Tokens{"battery", "life", "great"});
  CHECK(all[1].empty());
  const auto top1 = kw::KeywordsForDocument(doc, kw::EnglishStopwords(), 1);
  CHECK(top1[0] == Tokens{"battery", "life"});
  CHECK_THROWS_AS(kw::KeywordsForDocument(doc, kw::EnglishStopwords(), 0), threadsum::ConfigError);

  const auto ids = kw::KeywordIds(all, vocab);
  const std::vector<int> want{vocab.Lookup("battery"), vocab.Lookup("life"),
                              vocab.Lookup("great")};
  CHECK(ids[0] == want);
  CHECK(ids[1].empty());
}

TEST_CASE("shipped stopword file matches the built-in list") {
  const auto loaded = kw::LoadStopwords(std::string(THREADSUM_DATA_DIR) + "/stopwords_en.txt");
  CHECK(loaded == kw::EnglishStopwords());
  for (const auto& w : loaded) {
    for (char c : w) CHECK(!(c >= 'A' && c <= 'Z'));
  }
  CHECK_THROWS_AS(kw::LoadStopwords("/nonexistent/stopwords.txt"), threadsum::FormatError);
}

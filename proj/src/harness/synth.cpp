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

#include "threadsum/harness/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "threadsum/errors.hpp"
#include "threadsum/numerics/optim.hpp"

namespace threadsum::harness {
namespace {

constexpr std::size_t kVocabularySize = 60;
constexpr std::size_t kTopicPool = 10;
constexpr std::size_t kDistractorPool = 30;
constexpr double kSalientRate = 0.4;

std::size_t Uniform(nn::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// `count` distinct entries of `pool`, in draw order.
std::vector<std::string> Draw(const std::vector<std::string>& pool, std::size_t count,
                              nn::Rng& rng) {
  std::vector<std::string> copy = pool;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count && !copy.empty(); ++i) {
    const std::size_t j = Uniform(rng, 0, copy.size() - 1);
    out.push_back(copy[j]);
    copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

std::string Render(std::vector<std::string> words, nn::Rng& rng) {
  std::shuffle(words.begin(), words.end(), rng);
  const auto& fillers = SynthFillers();
  std::string text;
  for (const auto& w : words) {
    if (std::bernoulli_distribution(0.5)(rng)) {
      text += fillers[Uniform(rng, 0, fillers.size() - 1)];
      text += ' ';
    }
    text += w;
    text += ' ';
  }
  text.back() = '.';
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text;
}

std::string Join(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& SynthVocabulary() {
  static const std::vector<std::string> words = [] {
    const std::string consonants = "bdfgklmnprstvz";
    const std::string vowels = "aeiou";
    std::vector<std::string> syllables;
    for (char c : consonants) {
      for (char v : vowels) syllables.push_back(std::string{c, v});
    }
    std::vector<std::string> all;
    for (const auto& a : syllables) {
      for (const auto& b : syllables) all.push_back(a + b);
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; out.size() < kVocabularySize; i += 79) out.push_back(all[i]);
    return out;
  }();
  return words;
}

const std::vector<std::string>& SynthFillers() {
  static const std::vector<std::string> fillers{"the", "a", "and", "was", "to", "of", "we", "it"};
  return fillers;
}

std::vector<corpus::RawThread> SynthThreads(std::size_t count, std::uint64_t seed,
                                            const SalienceRule& rule) {
  if (count == 0) throw ConfigError("synthetic corpus needs at least one thread");
  if (!(rule.min_overlap > 0.0 && rule.min_overlap <= 1.0)) {
    throw ConfigError("salience overlap must lie in (0, 1]");
  }
  nn::Rng rng(seed);
  std::vector<corpus::RawThread> threads;
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<std::string> shuffled = SynthVocabulary();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::vector<std::string> topic(shuffled.begin(), shuffled.begin() + kTopicPool);
    const std::vector<std::string> distractor(
        shuffled.begin() + kTopicPool, shuffled.begin() + kTopicPool + kDistractorPool);

    corpus::RawThread thread;
    thread.id = "synth-" + std::to_string(seed) + "-" + std::to_string(t);
    std::vector<std::vector<int>> labels;
    std::vector<std::string> reference;

    std::vector<std::string> post;
    std::set<std::string> post_words;
    const std::size_t post_sentences = Uniform(rng, 2, 4);
    for (std::size_t s = 0; s < post_sentences; ++s) {
      auto words = Draw(topic, Uniform(rng, 4, 6), rng);
      post_words.insert(words.begin(), words.end());
      post.push_back(Render(words, rng));
    }
    thread.comments.push_back(Join(post));
    labels.emplace_back(post.size(), 1);
    reference.insert(reference.end(), post.begin(), post.end());

    const std::vector<std::string> post_pool(post_words.begin(), post_words.end());
    const std::size_t replies = Uniform(rng, 2, 4);
    for (std::size_t r = 0; r < replies; ++r) {
      std::vector<std::string> sentences;
      std::vector<int> comment_labels;
      const std::size_t n = Uniform(rng, 1, 2);
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t k = Uniform(rng, 4, 6);
        std::vector<std::string> words;
        const bool salient = std::bernoulli_distribution(kSalientRate)(rng);
        if (salient) {
          const auto shared = std::min(
              k, static_cast<std::size_t>(std::ceil(rule.min_overlap * static_cast<double>(k))));
          words = Draw(post_pool, shared, rng);
          const auto rest = Draw(distractor, k - words.size(), rng);
          words.insert(words.end(), rest.begin(), rest.end());
        } else {
          words = Draw(distractor, k, rng);
        }
        sentences.push_back(Render(words, rng));
        comment_labels.push_back(salient ? 1 : 0);
        if (salient) reference.push_back(sentences.back());
      }
      thread.comments.push_back(Join(sentences));
      labels.push_back(std::move(comment_labels));
    }
    thread.labels = std::move(labels);
    thread.summary = Join(reference);
    threads.push_back(std::move(thread));
  }
  return threads;
}

std::vector<std::string> ContentWords(const std::vector<std::string>& tokens) {
  static const std::unordered_set<std::string> vocab(SynthVocabulary().begin(),
                                                     SynthVocabulary().end());
  std::vector<std::string> out;
  for (const auto& tok : tokens) {
    std::string lower = tok;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (vocab.count(lower) != 0) out.push_back(std::move(lower));
  }
  return out;
}

double ContentOverlap(const std::vector<std::string>& sentence,
                      const std::vector<std::string>& post) {
  const auto words = ContentWords(sentence);
  if (words.empty()) return 0.0;
  const auto post_words = ContentWords(post);
  const std::set<std::string> post_set(post_words.begin(), post_words.end());
  std::size_t shared = 0;
  for (const auto& w : words) shared += post_set.count(w);
  return static_cast<double>(shared) / static_cast<double>(words.size());
}

}  // namespace threadsum::harness

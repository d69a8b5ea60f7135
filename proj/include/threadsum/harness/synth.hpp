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

// Synthetic threads with a planted beginning-relevance signal.
//
// Every thread draws a topic pool and a disjoint distractor pool from one
// shared pseudo-word vocabulary, so no word is salient by itself. The first
// comment is built from the topic pool. Reply sentences are either salient
// (most of their content words reappear in the first comment, label 1) or
// distractors (only distractor words, label 0). The reference summary is the
// first comment followed by the salient reply sentences.

#ifndef THREADSUM_HARNESS_SYNTH_HPP_
#define THREADSUM_HARNESS_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"

namespace threadsum::harness {

struct SalienceRule {
  // Minimum fraction of a salient sentence's content words that also occur
  // in the first comment.
  double min_overlap = 0.5;
};

// Pseudo-words shared by all threads.
const std::vector<std::string>& SynthVocabulary();
// Filler words mixed into every sentence; never counted as content.
const std::vector<std::string>& SynthFillers();

std::vector<corpus::RawThread> SynthThreads(std::size_t count, std::uint64_t seed,
                                            const SalienceRule& rule = {});

// Content words of a tokenized sentence: lowercased tokens that are pseudo
// words (fillers and punctuation dropped).
std::vector<std::string> ContentWords(const std::vector<std::string>& tokens);
// Fraction of `sentence` content tokens that occur anywhere in `post`.
double ContentOverlap(const std::vector<std::string>& sentence,
                      const std::vector<std::string>& post);

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_SYNTH_HPP_

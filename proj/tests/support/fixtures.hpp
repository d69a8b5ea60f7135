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

// Small assembled documents for model tests.

#ifndef THREADSUM_TESTS_SUPPORT_FIXTURES_HPP_
#define THREADSUM_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>
#include <vector>

#include "threadsum/corpus.hpp"

namespace threadsum::testing {

struct Fixture {
  corpus::Vocabulary vocab;
  corpus::ThreadDocument doc;
};

inline Fixture MakeFixture(std::vector<std::string> comments,
                           std::vector<std::vector<int>> labels, std::size_t max_tokens = 75) {
  corpus::RawThread thread;
  thread.id = "fixture";
  thread.comments = std::move(comments);
  thread.labels = std::move(labels);
  const std::vector<corpus::RawThread> threads{thread};
  Fixture f;
  f.vocab = corpus::Vocabulary::Build(threads, 1);
  corpus::AssembleOptions options;
  options.max_tokens = max_tokens;
  f.doc = corpus::Assemble(thread, f.vocab, options);
  return f;
}

// Two-comment thread: a 2-sentence opening post and a 3-sentence reply.
inline Fixture SmallThread(std::size_t max_tokens = 75) {
  return MakeFixture({"The hotel pool was great. Breakfast was cold.",
                      "I agree the pool was great. Parking cost extra. Staff were kind."},
                     {{1, 0}, {1, 0, 1}}, max_tokens);
}

}  // namespace threadsum::testing

#endif  // THREADSUM_TESTS_SUPPORT_FIXTURES_HPP_

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

// Mini-batch training with dev-set checkpoint selection.

#ifndef THREADSUM_HARNESS_TRAIN_HPP_
#define THREADSUM_HARNESS_TRAIN_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/harness/config.hpp"
#include "threadsum/harness/model.hpp"

namespace threadsum::harness {

// Keeps the first epoch with the highest score; later ties lose.
class BestTracker {
 public:
  // True when `score` becomes the new best.
  bool Offer(std::size_t epoch, double score);
  bool has_best() const { return best_epoch_.has_value(); }
  std::size_t epoch() const { return best_epoch_.value(); }
  double score() const { return best_score_; }

 private:
  std::optional<std::size_t> best_epoch_;
  double best_score_ = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // mean per-document loss
  double dev_score = 0.0;   // mean of R-1, R-2, R-L F1
  bool best = false;
};

struct TrainResult {
  Checkpoint best;
  std::vector<EpochRecord> history;
};

struct TrainData {
  std::span<const corpus::RawThread> train;
  std::span<const corpus::RawThread> dev;
  const encoders::ContextualStore* contextual = nullptr;
};

// Builds the vocabulary from the training split, trains for config.epochs
// and returns the checkpoint with the best dev score. Throws DivergenceError
// naming epoch, step and document on a non-finite loss or gradient.
TrainResult Train(const RunConfig& config, const TrainData& data,
                  const std::function<void(const EpochRecord&)>& on_epoch = {});

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_TRAIN_HPP_

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

#include "threadsum/harness/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "threadsum/errors.hpp"
#include "threadsum/harness/evaluate.hpp"
#include "threadsum/numerics/optim.hpp"
#include "threadsum/siatl.hpp"

namespace threadsum::harness {
namespace {

using LossFn = std::function<nn::Var(nn::Tape&, const DocumentInputs&)>;

// One pass over `docs` in a seeded shuffled order; returns the mean loss.
double RunEpoch(std::size_t epoch, std::span<const PreparedDoc> docs, std::size_t batch_size,
                nn::Rng& rng, nn::Adam& adam, Extractor& model, const LossFn& loss_fn) {
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  double total = 0.0;
  std::size_t step = 0;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    ++step;
    for (std::size_t k = start; k < end; ++k) {
      const PreparedDoc& doc = docs[order[k]];
      auto fail = [&](const std::string& what) {
        return DivergenceError(what + " at epoch " + std::to_string(epoch) + ", step " +
                               std::to_string(step) + ", document " + doc.doc.id);
      };
      nn::Tape tape;
      const nn::Var loss = loss_fn(tape, doc.Inputs());
      const double value = loss.value()[0];
      if (!std::isfinite(value)) throw fail("non-finite loss " + std::to_string(value));
      try {
        tape.Backward(loss);
      } catch (const NumericError& e) {
        throw fail(std::string("non-finite gradient (") + e.what() + ")");
      }
      total += value;
    }
    adam.Step(1.0 / static_cast<double>(end - start));
    model.AfterStep();
  }
  return total / static_cast<double>(docs.size());
}

}  // namespace

bool BestTracker::Offer(std::size_t epoch, double score) {
  if (best_epoch_.has_value() && !(score > best_score_)) return false;
  best_epoch_ = epoch;
  best_score_ = score;
  return true;
}

TrainResult Train(const RunConfig& config, const TrainData& data,
                  const std::function<void(const EpochRecord&)>& on_epoch) {
  config.Validate();
  if (data.train.empty()) throw EmptySupportError("training split is empty");
  if (data.dev.empty()) throw EmptySupportError("dev split is empty");

  const corpus::Vocabulary vocab = corpus::Vocabulary::Build(data.train, config.min_count);
  const keywords::StopwordList stopwords =
      config.keywords ? StopwordsFor(config) : keywords::StopwordList{};
  const PrepareContext context{&stopwords, data.contextual};
  const auto train_docs = Prepare(data.train, vocab, config, context);
  const auto dev_docs = Prepare(data.dev, vocab, config, context);

  nn::Rng rng(config.seed);
  std::unique_ptr<Extractor> model = BuildExtractor(config, vocab.size(), rng);
  const nn::AdamOptions adam_options{.lr = config.learning_rate};

  if (config.model == ModelKind::kSiatl && config.pretrain_epochs > 0) {
    auto& siatl = static_cast<siatl::Siatl&>(*model);
    nn::Adam lm_adam(siatl.LmParams(), adam_options);
    const LossFn lm = [&](nn::Tape& t, const DocumentInputs& in) { return siatl.LmLoss(t, in); };
    for (std::size_t e = 1; e <= config.pretrain_epochs; ++e) {
      RunEpoch(e, train_docs, config.batch_size, rng, lm_adam, *model, lm);
    }
  }

  nn::Adam adam(model->Params(), adam_options);
  const LossFn task = [&](nn::Tape& t, const DocumentInputs& in) { return model->Loss(t, in); };
  TrainResult result;
  result.best.config = config;
  result.best.vocab = vocab;
  nn::Rng scratch(0);
  result.best.model = BuildExtractor(config, vocab.size(), scratch);
  BestTracker tracker;
  for (std::size_t e = 1; e <= config.epochs; ++e) {
    EpochRecord record;
    record.epoch = e;
    record.train_loss = RunEpoch(e, train_docs, config.batch_size, rng, adam, *model, task);
    record.dev_score =
        Evaluate(*model, dev_docs, config.threshold, config.max_sentences).MeanF1();
    record.best = tracker.Offer(e, record.dev_score);
    if (record.best) {
      CopyWeights(*model, *result.best.model);
      result.best.epoch = e;
      result.best.dev_score = record.dev_score;
    }
    result.history.push_back(record);
    if (on_epoch) on_epoch(record);
  }
  if (!tracker.has_best()) CopyWeights(*model, *result.best.model);
  return result;
}

}  // namespace threadsum::harness

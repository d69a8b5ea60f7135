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

// Multi-seed comparison of configurations over one corpus split.

#ifndef THREADSUM_HARNESS_EXPERIMENT_HPP_
#define THREADSUM_HARNESS_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/encoders.hpp"
#include "threadsum/harness/config.hpp"
#include "threadsum/harness/evaluate.hpp"
#include "threadsum/rouge.hpp"

namespace threadsum::harness {

// Display name: model kind plus enabled features, e.g. "siatl+bidi".
std::string ConfigName(const RunConfig& config);

struct CorpusSplits {
  std::span<const corpus::RawThread> train;
  std::span<const corpus::RawThread> dev;
  std::span<const corpus::RawThread> test;
  const encoders::ContextualStore* contextual = nullptr;
};

struct SeedRun {
  std::uint64_t seed = 0;
  std::size_t best_epoch = 0;
  double dev_score = 0.0;
  rouge::SummaryScore test;
  LengthStats system;
};

// Mean and population standard deviation over seeds, F1 x100.
struct F1Summary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct ConfigResult {
  std::string name;
  std::string group;  // "baselines", "summarunner" or "siatl"
  std::optional<RunConfig> config;  // unset for baselines
  std::vector<SeedRun> runs;
  F1Summary r1, r2, rl;
  LengthStats gold;
};

// A +bidi configuration against the same configuration without bidi.
struct PairCheck {
  std::string variant;
  std::string counterpart;
  double delta_r1 = 0.0;  // mean R-1 F1 difference, points
  std::size_t wins = 0;   // seeds where the variant's R-1 is strictly higher
  std::size_t seeds = 0;
  // delta_r1 >= -0.5 and strict wins on at least two thirds of the seeds.
  bool pass = false;
};

// Best mean R-1 of each model group over thread-mode configurations; set
// when both groups ran.
struct OrderCheck {
  std::string non_autoregressive;
  std::string autoregressive;
  double delta_r1 = 0.0;
  bool pass = false;  // delta_r1 > 0
};

struct MatrixReport {
  std::vector<std::uint64_t> seeds;
  std::vector<ConfigResult> rows;  // baselines first, then model groups
  std::vector<PairCheck> pairs;
  std::optional<OrderCheck> order;
};

struct MatrixOptions {
  bool baselines = true;
  std::size_t lead_n = 3;
  std::size_t lsa_dims = 200;
  // Called after each (config, seed) run.
  std::function<void(const std::string&, const SeedRun&)> progress;
};

// Reduced-width settings for single-core runs on synthetic threads.
RunConfig DeskConfig();
// The bidi pairs of the directional experiment, each without then with
// bidi: summarunner and siatl on threads, then summarunner in generic mode.
std::vector<RunConfig> DeskPairs(const RunConfig& base = DeskConfig());

struct SyntheticSplits {
  std::vector<corpus::RawThread> train;
  std::vector<corpus::RawThread> dev;
  std::vector<corpus::RawThread> test;

  CorpusSplits View() const { return {train, dev, test}; }
};

// One synthetic corpus cut into consecutive train/dev/test parts.
SyntheticSplits MakeSyntheticSplits(std::size_t train, std::size_t dev, std::size_t test,
                                    std::uint64_t seed);

// Requires at least two configs and three seeds. Each run trains on
// splits.train with config.seed replaced by the seed, selects on
// splits.dev and scores splits.test.
MatrixReport RunMatrix(std::span<const RunConfig> configs, std::span<const std::uint64_t> seeds,
                       const CorpusSplits& splits, const MatrixOptions& options = {});

// Row TSV (group, model, mean and std of each F1, deltas against the non-bidi
// counterpart) followed by a check TSV separated by a blank line.
void WriteMatrixReport(std::ostream& out, const MatrixReport& report);
std::string FormatMatrixReport(const MatrixReport& report);

}  // namespace threadsum::harness

#endif  // THREADSUM_HARNESS_EXPERIMENT_HPP_

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

// Unsupervised baselines: LSA + k-means cluster heads, and lead-N.

#ifndef THREADSUM_BASELINES_HPP_
#define THREADSUM_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/numerics/matrix.hpp"

namespace threadsum::baselines {

inline constexpr std::size_t kDefaultLsaDims = 200;

// Terms kept for LSA: tokens with an alphanumeric character that are not
// stopwords.
std::vector<std::string> LsaTerms(std::span<const std::string> tokens);

// TF-IDF term-sentence matrix factored by a truncated SVD. Term weights are
// raw counts times idf(t) = ln((1 + n) / (1 + df(t))) + 1, and every
// sentence column is scaled to unit length.
class LsaSpace {
 public:
  // Throws EmptySupportError when fewer than two sentences or no terms.
  static LsaSpace Fit(std::span<const std::vector<std::string>> sentences,
                      std::size_t dims = kDefaultLsaDims);

  // Weighted, normalized term vector (#terms). Unknown terms are ignored.
  std::vector<double> TermVector(std::span<const std::string> tokens) const;
  // U_k^T x.
  std::vector<double> Embed(std::span<const std::string> tokens) const;
  // One row per sentence.
  nn::Matrix EmbedAll(std::span<const std::vector<std::string>> sentences) const;

  std::size_t dims() const { return projection_.cols(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  const nn::Matrix& projection() const { return projection_; }  // #terms x dims
  const std::vector<double>& singular_values() const { return singular_values_; }

  std::string ToJson() const;
  // Throws FormatError on malformed input.
  static LsaSpace FromJson(const std::string& text);
  void Save(const std::string& path) const;
  static LsaSpace Load(const std::string& path);

 private:
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  nn::Matrix projection_;
  std::vector<double> singular_values_;
};

// ceil(sqrt(n)).
std::size_t ClusterCount(std::size_t n);

struct KMeansResult {
  std::size_t k = 0;
  nn::Matrix centroids;                 // k x dims, means of the final assignment
  std::vector<std::size_t> assignment;  // per point
  // Total within-cluster squared distance after each assignment step.
  std::vector<double> objective;
  std::size_t iterations = 0;
  // One member per nonempty cluster, ascending.
  std::vector<std::size_t> heads;
};

// k-means++ seeding from `seed`, then Lloyd iterations until the assignment
// stops changing or max_iterations. Assignment ties go to the lower
// centroid; a head is the member closest to its centroid, ties to the lower
// index. Empty clusters are dropped. Throws EmptySupportError on no points.
KMeansResult KMeans(const nn::Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 100);

std::vector<std::size_t> KMeansExtract(const corpus::ThreadDocument& doc, const LsaSpace& space,
                                       std::uint64_t seed);

// The first min(n, #sentences) sentences.
std::vector<std::size_t> LeadN(const corpus::ThreadDocument& doc, std::size_t n);

}  // namespace threadsum::baselines

#endif  // THREADSUM_BASELINES_HPP_

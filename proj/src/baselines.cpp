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

#include "threadsum/baselines.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/keywords.hpp"

namespace threadsum::baselines {

namespace {

constexpr const char* kLsaFormat = "threadsum-lsa";
constexpr int kLsaVersion = 1;

double SquaredDistance(const nn::Matrix& a, std::size_t i, const nn::Matrix& b, std::size_t j) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const double d = a(i, c) - b(j, c);
    acc += d * d;
  }
  return acc;
}

}  // namespace

std::vector<std::string> LsaTerms(std::span<const std::string> tokens) {
  const auto& stop = keywords::EnglishStopwords();
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    const bool word = std::any_of(t.begin(), t.end(),
                                  [](unsigned char c) { return std::isalnum(c) != 0; });
    if (word && stop.count(t) == 0) out.push_back(t);
  }
  return out;
}

LsaSpace LsaSpace::Fit(std::span<const std::vector<std::string>> sentences, std::size_t dims) {
  if (sentences.size() < 2) throw EmptySupportError("LSA needs at least two sentences");
  if (dims == 0) throw ConfigError("LSA dims must be positive");
  std::map<std::string, std::size_t> df;
  std::vector<std::vector<std::string>> kept;
  for (const auto& s : sentences) {
    kept.push_back(LsaTerms(s));
    std::vector<std::string> uniq = kept.back();
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (const auto& t : uniq) ++df[t];
  }
  if (df.empty()) throw EmptySupportError("LSA corpus has no terms");

  LsaSpace space;
  const double n = static_cast<double>(sentences.size());
  for (const auto& [term, count] : df) {
    space.terms_.push_back(term);
    space.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  const std::size_t num_terms = space.terms_.size();
  Eigen::MatrixXd x(num_terms, sentences.size());
  for (std::size_t s = 0; s < kept.size(); ++s) {
    const auto v = space.TermVector(kept[s]);
    for (std::size_t t = 0; t < num_terms; ++t) x(t, s) = v[t];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  const std::size_t rank = static_cast<std::size_t>(svd.rank());
  const std::size_t k = std::min(dims, std::max<std::size_t>(rank, 1));
  space.projection_ = nn::Matrix(num_terms, k);
  for (std::size_t t = 0; t < num_terms; ++t) {
    for (std::size_t c = 0; c < k; ++c) space.projection_(t, c) = svd.matrixU()(t, c);
  }
  for (std::size_t c = 0; c < k; ++c) space.singular_values_.push_back(svd.singularValues()(c));
  return space;
}

std::vector<double> LsaSpace::TermVector(std::span<const std::string> tokens) const {
  std::vector<double> v(terms_.size(), 0.0);
  for (const auto& t : LsaTerms(tokens)) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
    if (it == terms_.end() || *it != t) continue;
    const auto idx = static_cast<std::size_t>(it - terms_.begin());
    v[idx] += idf_[idx];
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<double> LsaSpace::Embed(std::span<const std::string> tokens) const {
  const auto v = TermVector(tokens);
  std::vector<double> out(dims(), 0.0);
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t] == 0.0) continue;
    for (std::size_t c = 0; c < dims(); ++c) out[c] += projection_(t, c) * v[t];
  }
  return out;
}

nn::Matrix LsaSpace::EmbedAll(std::span<const std::vector<std::string>> sentences) const {
  nn::Matrix out(sentences.size(), dims());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto e = Embed(sentences[s]);
    std::copy(e.begin(), e.end(), out.row(s).begin());
  }
  return out;
}

std::string LsaSpace::ToJson() const {
  nlohmann::json j;
  j["format"] = kLsaFormat;
  j["version"] = kLsaVersion;
  j["terms"] = terms_;
  j["idf"] = idf_;
  j["singular_values"] = singular_values_;
  j["dims"] = dims();
  std::vector<std::vector<double>> rows;
  for (std::size_t t = 0; t < projection_.rows(); ++t) {
    auto r = projection_.row(t);
    rows.emplace_back(r.begin(), r.end());
  }
  j["projection"] = rows;
  return j.dump();
}

LsaSpace LsaSpace::FromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kLsaFormat || j.at("version").get<int>() != kLsaVersion) {
      throw FormatError("not a threadsum LSA space (version " + std::to_string(kLsaVersion) + ")");
    }
    LsaSpace space;
    space.terms_ = j.at("terms").get<std::vector<std::string>>();
    space.idf_ = j.at("idf").get<std::vector<double>>();
    space.singular_values_ = j.at("singular_values").get<std::vector<double>>();
    const auto dims = j.at("dims").get<std::size_t>();
    const auto rows = j.at("projection").get<std::vector<std::vector<double>>>();
    if (space.idf_.size() != space.terms_.size() || rows.size() != space.terms_.size() ||
        !std::is_sorted(space.terms_.begin(), space.terms_.end())) {
      throw FormatError("LSA space terms, idf and projection disagree");
    }
    space.projection_ = nn::Matrix(rows.size(), dims);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (rows[t].size() != dims) throw FormatError("LSA projection row has the wrong width");
      std::copy(rows[t].begin(), rows[t].end(), space.projection_.row(t).begin());
    }
    return space;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed LSA space: ") + e.what());
  }
}

void LsaSpace::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << ToJson() << '\n';
}

LsaSpace LsaSpace::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

std::size_t ClusterCount(std::size_t n) {
  std::size_t k = 0;
  while (k * k < n) ++k;
  return k;
}

KMeansResult KMeans(const nn::Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations) {
  const std::size_t n = points.rows();
  if (n == 0) throw EmptySupportError("k-means needs at least one point");
  if (k == 0) throw ConfigError("k-means needs k >= 1");
  k = std::min(k, n);
  const std::size_t dims = points.cols();

  // k-means++ seeding.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  chosen.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < k) {
    const std::size_t last = chosen.back();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], SquaredDistance(points, i, points, last));
      total += nearest[i];
    }
    std::size_t next = n;
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] == 0.0) continue;
        next = i;
        if (target < nearest[i]) break;
        target -= nearest[i];
      }
    } else {
      for (std::size_t i = 0; i < n && next == n; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) next = i;
      }
    }
    chosen.push_back(next);
  }

  KMeansResult result;
  result.k = k;
  result.centroids = nn::Matrix(k, dims);
  for (std::size_t c = 0; c < k; ++c) {
    std::copy_n(&points(chosen[c], 0), dims, &result.centroids(c, 0));
  }

  auto recompute = [&] {
    nn::Matrix sums(k, dims);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = result.assignment[i];
      ++counts[c];
      for (std::size_t d = 0; d < dims; ++d) sums(c, d) += points(i, d);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // keep the old centroid
      for (std::size_t d = 0; d < dims; ++d) {
        result.centroids(c, d) = sums(c, d) / static_cast<double>(counts[c]);
      }
    }
  };

  std::vector<std::size_t> assignment(n, k);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::vector<std::size_t> next(n);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = SquaredDistance(points, i, result.centroids, 0);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = SquaredDistance(points, i, result.centroids, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[i] = best;
      objective += best_d;
    }
    result.objective.push_back(objective);
    result.iterations = iter + 1;
    const bool changed = next != assignment;
    assignment = std::move(next);
    result.assignment = assignment;
    if (!changed) break;
    recompute();
  }

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t head = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (result.assignment[i] != c) continue;
      const double d = SquaredDistance(points, i, result.centroids, c);
      if (d < best) {
        best = d;
        head = i;
      }
    }
    if (head != n) result.heads.push_back(head);
  }
  std::sort(result.heads.begin(), result.heads.end());
  return result;
}

std::vector<std::size_t> KMeansExtract(const corpus::ThreadDocument& doc, const LsaSpace& space,
                                       std::uint64_t seed) {
  if (doc.size() == 0) return {};
  std::vector<std::vector<std::string>> sentences;
  for (const auto& s : doc.sentences) sentences.push_back(corpus::Tokenize(s.text));
  const nn::Matrix points = space.EmbedAll(sentences);
  return KMeans(points, ClusterCount(doc.size()), seed).heads;
}

std::vector<std::size_t> LeadN(const corpus::ThreadDocument& doc, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(n, doc.size()); ++i) out.push_back(i);
  return out;
}

}  // namespace threadsum::baselines

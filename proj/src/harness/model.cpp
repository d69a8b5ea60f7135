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

#include "threadsum/harness/model.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "threadsum/errors.hpp"
#include "threadsum/siatl.hpp"
#include "threadsum/summarunner.hpp"

namespace threadsum::harness {
namespace {

constexpr const char* kFormat = "threadsum-checkpoint";
constexpr int kVersion = 1;

using Json = nlohmann::json;

}  // namespace

std::unique_ptr<Extractor> BuildExtractor(const RunConfig& config, std::size_t vocab_size,
                                          nn::Rng& rng) {
  config.Validate();
  if (config.model == ModelKind::kSummaRunner) {
    summarunner::SummaRunnerConfig c;
    c.embedding_width = config.embedding_width;
    c.hidden = config.hidden;
    c.use_bidi = config.bidi;
    c.use_keywords = config.keywords;
    c.use_contextual = config.contextual;
    return std::make_unique<summarunner::SummaRunner>(
        summarunner::SummaRunner::Init(c, vocab_size, rng));
  }
  siatl::SiatlConfig c;
  c.embedding_width = config.siatl_embedding_width;
  c.shared_hidden = config.shared_hidden;
  c.task_hidden = config.task_hidden;
  c.use_bidi = config.bidi;
  c.use_self_att = config.self_att;
  c.use_contextual = config.contextual;
  c.attend_raw_inputs = config.attend_raw_inputs;
  c.lm_weight = config.lm_weight;
  return std::make_unique<siatl::Siatl>(siatl::Siatl::Init(c, vocab_size, rng));
}

DocumentInputs PreparedDoc::Inputs() const {
  DocumentInputs in;
  in.doc = &doc;
  in.contextual = contextual.empty() ? nullptr : &contextual;
  in.keyword_ids = keyword_ids;
  return in;
}

std::vector<PreparedDoc> Prepare(std::span<const corpus::RawThread> threads,
                                 const corpus::Vocabulary& vocab, const RunConfig& config,
                                 const PrepareContext& context) {
  if (config.keywords && context.stopwords == nullptr) {
    throw ConfigError("keyword features need a stopword list");
  }
  if (config.contextual && context.contextual == nullptr) {
    throw ConfigError("contextual features need a contextual vector store");
  }
  const corpus::AssembleOptions options = config.Assembly();
  std::vector<PreparedDoc> out;
  out.reserve(threads.size());
  for (const auto& thread : threads) {
    PreparedDoc p;
    p.doc = corpus::Assemble(thread, vocab, options);
    if (config.contextual) p.contextual = encoders::LoadContextual(*context.contextual, p.doc);
    if (config.keywords) {
      p.keyword_ids = keywords::KeywordIds(
          keywords::KeywordsForDocument(p.doc, *context.stopwords, config.top_t), vocab);
    }
    out.push_back(std::move(p));
  }
  return out;
}

keywords::StopwordList StopwordsFor(const RunConfig& config) {
  if (config.stopwords_path.empty()) return keywords::EnglishStopwords();
  return keywords::LoadStopwords(config.stopwords_path);
}

void CopyWeights(Extractor& from, Extractor& to) {
  const auto src = from.Params();
  const auto dst = to.Params();
  if (src.size() != dst.size()) throw DimensionError("models have different parameter counts");
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i]->value.SameShape(dst[i]->value) || src[i]->name != dst[i]->name) {
      throw DimensionError("parameter " + src[i]->name + " does not match " + dst[i]->name);
    }
    dst[i]->value = src[i]->value;
  }
}

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  if (!checkpoint.model) throw ConfigError("checkpoint has no model");
  Json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["model"] = checkpoint.model->kind();
  Json config = Json::array();
  for (const auto& [key, value] : ConfigEntries(checkpoint.config)) {
    config.push_back(Json::array({key, value}));
  }
  j["config"] = std::move(config);
  const auto& tokens = checkpoint.vocab.tokens();
  j["vocab"] = std::vector<std::string>(tokens.begin() + 2, tokens.end());
  j["epoch"] = checkpoint.epoch;
  j["dev_score"] = checkpoint.dev_score;
  Json params = Json::array();
  for (const nn::Parameter* p : checkpoint.model->Params()) {
    params.push_back({{"name", p->name},
                      {"rows", p->value.rows()},
                      {"cols", p->value.cols()},
                      {"data", p->value.storage()}});
  }
  j["params"] = std::move(params);
  return j.dump() + "\n";
}

Checkpoint ParseCheckpoint(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat || j.at("version").get<int>() != kVersion) {
      throw FormatError("unsupported checkpoint format");
    }
    Checkpoint c;
    for (const auto& entry : j.at("config")) {
      Apply(c.config, entry.at(0).get<std::string>(), entry.at(1).get<std::string>());
    }
    const auto tokens = j.at("vocab").get<std::vector<std::string>>();
    c.vocab = corpus::Vocabulary::FromTokens(tokens);
    c.epoch = j.at("epoch").get<std::size_t>();
    c.dev_score = j.at("dev_score").get<double>();
    nn::Rng rng(0);
    c.model = BuildExtractor(c.config, c.vocab.size(), rng);
    if (c.model->kind() != j.at("model").get<std::string>()) {
      throw FormatError("checkpoint model kind does not match its config");
    }
    const auto params = c.model->Params();
    const auto& stored = j.at("params");
    if (stored.size() != params.size()) {
      throw FormatError("checkpoint has " + std::to_string(stored.size()) + " parameters, model " +
                        std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto& s = stored[i];
      const auto rows = s.at("rows").get<std::size_t>();
      const auto cols = s.at("cols").get<std::size_t>();
      auto data = s.at("data").get<std::vector<double>>();
      if (s.at("name").get<std::string>() != params[i]->name ||
          rows != params[i]->value.rows() || cols != params[i]->value.cols() ||
          data.size() != rows * cols) {
        throw FormatError("checkpoint parameter " + s.at("name").get<std::string>() +
                          " does not match " + params[i]->name + " " +
                          params[i]->value.ShapeString());
      }
      params[i]->value = nn::Matrix(rows, cols, std::move(data));
      params[i]->ZeroGrad();
    }
    return c;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << SerializeCheckpoint(checkpoint);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseCheckpoint(ss.str());
}

}  // namespace threadsum::harness

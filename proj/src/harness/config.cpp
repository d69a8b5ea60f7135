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

#include "threadsum/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "threadsum/errors.hpp"

namespace threadsum::harness {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool ParseBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects a boolean, got '" + v + "'");
}

std::uint64_t ParseUnsigned(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

double ParseDouble(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatBool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string ModelKindName(ModelKind kind) {
  return kind == ModelKind::kSummaRunner ? "summarunner" : "siatl";
}

ModelKind ParseModelKind(const std::string& name) {
  if (name == "summarunner") return ModelKind::kSummaRunner;
  if (name == "siatl") return ModelKind::kSiatl;
  throw ConfigError("unknown model '" + name + "' (expected summarunner or siatl)");
}

std::size_t RunConfig::EffectiveMaxTokens() const {
  if (max_tokens != 0) return max_tokens;
  return model == ModelKind::kSummaRunner ? 75 : 80;
}

corpus::AssembleOptions RunConfig::Assembly() const {
  corpus::AssembleOptions o;
  o.max_tokens = EffectiveMaxTokens();
  o.mode = mode;
  o.begin_n = begin_n;
  return o;
}

void RunConfig::Validate() const {
  if (batch_size == 0) throw ConfigError("batch_size must be at least 1");
  if (begin_n == 0) throw ConfigError("begin_n must be at least 1");
  if (top_t == 0) throw ConfigError("top_t must be at least 1");
  if (lm_weight < 0.0) throw ConfigError("lm_weight must be non-negative");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (threshold < 0.0 || threshold > 1.0) throw ConfigError("threshold must lie in [0, 1]");
  if (max_sentences && *max_sentences == 0) throw ConfigError("max_sentences must be at least 1");
  if (embedding_width == 0 || hidden == 0 || siatl_embedding_width == 0 || shared_hidden == 0 ||
      task_hidden == 0) {
    throw ConfigError("model widths must be positive");
  }
  if (keywords && model != ModelKind::kSummaRunner) {
    throw ConfigError("keywords are only supported by the summarunner model");
  }
  if (contextual && contextual_path.empty()) {
    throw ConfigError("contextual=true needs contextual_path");
  }
}

void Apply(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = Trim(raw);
  // Each setter gets (config, key, value).
  using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  auto size = [](std::size_t RunConfig::*field) -> Setter {
    return [field](RunConfig& cfg, const std::string& k, const std::string& s) {
      cfg.*field = ParseUnsigned(k, s);
    };
  };
  auto flag = [](bool RunConfig::*field) -> Setter {
    return [field](RunConfig& cfg, const std::string& k, const std::string& s) {
      cfg.*field = ParseBool(k, s);
    };
  };
  auto real = [](double RunConfig::*field) -> Setter {
    return [field](RunConfig& cfg, const std::string& k, const std::string& s) {
      cfg.*field = ParseDouble(k, s);
    };
  };
  auto text = [](std::string RunConfig::*field) -> Setter {
    return [field](RunConfig& cfg, const std::string&, const std::string& s) { cfg.*field = s; };
  };
  static const std::map<std::string, Setter> kSetters = {
      {"model",
       [](RunConfig& cfg, const std::string&, const std::string& s) {
         cfg.model = ParseModelKind(s);
       }},
      {"bidi", flag(&RunConfig::bidi)},
      {"keywords", flag(&RunConfig::keywords)},
      {"contextual", flag(&RunConfig::contextual)},
      {"self_att", flag(&RunConfig::self_att)},
      {"batch_size", size(&RunConfig::batch_size)},
      {"epochs", size(&RunConfig::epochs)},
      {"mode",
       [](RunConfig& cfg, const std::string&, const std::string& s) {
         if (s == "thread") {
           cfg.mode = corpus::BeginningMode::kThread;
         } else if (s == "generic") {
           cfg.mode = corpus::BeginningMode::kGeneric;
         } else {
           throw ConfigError("mode must be thread or generic, got '" + s + "'");
         }
       }},
      {"begin_n", size(&RunConfig::begin_n)},
      {"seed",
       [](RunConfig& cfg, const std::string& k, const std::string& s) {
         cfg.seed = ParseUnsigned(k, s);
       }},
      {"embedding_width", size(&RunConfig::embedding_width)},
      {"hidden", size(&RunConfig::hidden)},
      {"siatl_embedding_width", size(&RunConfig::siatl_embedding_width)},
      {"shared_hidden", size(&RunConfig::shared_hidden)},
      {"task_hidden", size(&RunConfig::task_hidden)},
      {"attend_raw_inputs", flag(&RunConfig::attend_raw_inputs)},
      {"lm_weight", real(&RunConfig::lm_weight)},
      {"pretrain_epochs", size(&RunConfig::pretrain_epochs)},
      {"max_tokens", size(&RunConfig::max_tokens)},
      {"threshold", real(&RunConfig::threshold)},
      {"max_sentences",
       [](RunConfig& cfg, const std::string& k, const std::string& s) {
         if (s.empty() || s == "none") {
           cfg.max_sentences.reset();
         } else {
           cfg.max_sentences = ParseUnsigned(k, s);
         }
       }},
      {"learning_rate", real(&RunConfig::learning_rate)},
      {"min_count", size(&RunConfig::min_count)},
      {"top_t", size(&RunConfig::top_t)},
      {"lsa_dims", size(&RunConfig::lsa_dims)},
      {"train_path", text(&RunConfig::train_path)},
      {"dev_path", text(&RunConfig::dev_path)},
      {"test_path", text(&RunConfig::test_path)},
      {"contextual_path", text(&RunConfig::contextual_path)},
      {"stopwords_path", text(&RunConfig::stopwords_path)},
      {"output_dir", text(&RunConfig::output_dir)},
  };
  const auto it = kSetters.find(key);
  if (it == kSetters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(c, key, v);
}

RunConfig ParseConfig(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not key=value: " + t);
    }
    Apply(base, Trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

RunConfig LoadConfig(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return ParseConfig(in, std::move(base));
}

std::vector<std::pair<std::string, std::string>> ConfigEntries(const RunConfig& c) {
  return {
      {"model", ModelKindName(c.model)},
      {"bidi", FormatBool(c.bidi)},
      {"keywords", FormatBool(c.keywords)},
      {"contextual", FormatBool(c.contextual)},
      {"self_att", FormatBool(c.self_att)},
      {"batch_size", std::to_string(c.batch_size)},
      {"epochs", std::to_string(c.epochs)},
      {"mode", c.mode == corpus::BeginningMode::kThread ? "thread" : "generic"},
      {"begin_n", std::to_string(c.begin_n)},
      {"seed", std::to_string(c.seed)},
      {"embedding_width", std::to_string(c.embedding_width)},
      {"hidden", std::to_string(c.hidden)},
      {"siatl_embedding_width", std::to_string(c.siatl_embedding_width)},
      {"shared_hidden", std::to_string(c.shared_hidden)},
      {"task_hidden", std::to_string(c.task_hidden)},
      {"attend_raw_inputs", FormatBool(c.attend_raw_inputs)},
      {"lm_weight", FormatDouble(c.lm_weight)},
      {"pretrain_epochs", std::to_string(c.pretrain_epochs)},
      {"max_tokens", std::to_string(c.max_tokens)},
      {"threshold", FormatDouble(c.threshold)},
      {"max_sentences", c.max_sentences ? std::to_string(*c.max_sentences) : "none"},
      {"learning_rate", FormatDouble(c.learning_rate)},
      {"min_count", std::to_string(c.min_count)},
      {"top_t", std::to_string(c.top_t)},
      {"lsa_dims", std::to_string(c.lsa_dims)},
      {"train_path", c.train_path},
      {"dev_path", c.dev_path},
      {"test_path", c.test_path},
      {"contextual_path", c.contextual_path},
      {"stopwords_path", c.stopwords_path},
      {"output_dir", c.output_dir},
  };
}

std::string FormatConfig(const RunConfig& c) {
  std::ostringstream out;
  for (const auto& [k, v] : ConfigEntries(c)) out << k << '=' << v << '\n';
  return out.str();
}

}  // namespace threadsum::harness

#include "core/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <regex>

#include "core/error.hpp"
#include "core/model.hpp"

namespace xlt {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string item =
        trim(comma == std::string::npos ? value.substr(start)
                                        : value.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Setter {
  RunConfig& config;
  const std::string& key;
  const std::string& value;
  std::vector<std::string>& problems;

  void problem(const std::string& msg) const { problems.push_back(key + ": " + msg); }

  void set_bool(bool& target) const {
    if (value == "true" || value == "1") {
      target = true;
    } else if (value == "false" || value == "0") {
      target = false;
    } else {
      problem("expected true/false, got '" + value + "'");
    }
  }

  template <typename T>
  void set_uint(T& target) const {
    T parsed{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      problem("expected a non-negative integer, got '" + value + "'");
      return;
    }
    target = parsed;
  }

  void set_double(double& target) const {
    try {
      std::size_t used = 0;
      double parsed = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      target = parsed;
    } catch (const std::exception&) {
      problem("expected a number, got '" + value + "'");
    }
  }
};

bool apply_key(RunConfig& c, const std::string& key, const std::string& value,
               std::vector<std::string>& problems) {
  Setter s{c, key, value, problems};
  if (key == "dataset_id") c.dataset_id = value;
  else if (key == "corpus") c.corpus = value;
  else if (key == "links") c.links = value;
  else if (key == "link_pattern") c.link_pattern = value;
  else if (key == "out_dir") c.out_dir = value;
  else if (key == "seed") s.set_uint(c.seed);
  else if (key == "jobs") s.set_uint(c.jobs);
  else if (key == "prune.linked") s.set_bool(c.prune_linked);
  else if (key == "prune.intermingled") s.set_bool(c.prune_intermingled);
  else if (key == "tokenize.cjk_bigrams") s.set_bool(c.cjk_bigrams);
  else if (key == "tokenize.stopwords") s.set_bool(c.remove_stopwords);
  else if (key == "tokenize.stopword_file") c.stopword_file = value;
  else if (key == "tokenize.stem") s.set_bool(c.stem);
  else if (key == "tfidf.variant") c.tfidf_variant = value;
  else if (key == "translate.mode") c.translate_mode = value;
  else if (key == "translate.glossary") c.glossary = value;
  else if (key == "translate.cache") c.cache = value;
  else if (key == "translate.target") c.target_language = value;
  else if (key == "translate.endpoint") c.endpoint = value;
  else if (key == "translate.api_key_env") c.api_key_env = value;
  else if (key == "translate.retries") s.set_uint(c.retries);
  else if (key == "translate.backoff_ms") s.set_uint(c.backoff_ms);
  else if (key == "embeddings.mono") c.mono_vectors = value;
  else if (key == "embeddings.cross") c.cross_vectors = value;
  else if (key == "embeddings.sample_size") s.set_uint(c.sample_size);
  else if (key == "embeddings.sample_seed") s.set_uint(c.sample_seed);
  else if (key == "models.variants") c.variants = split_list(value);
  else if (key == "models.lsi_k") s.set_uint(c.lsi_k);
  else if (key == "models.lda_topics") s.set_uint(c.lda_topics);
  else if (key == "models.lda_alpha") s.set_double(c.lda_alpha);
  else if (key == "models.lda_beta") s.set_double(c.lda_beta);
  else if (key == "models.lda_iterations") s.set_uint(c.lda_iterations);
  else if (key == "models.lda_metric") c.lda_metric = value;
  else if (key == "models.gvsm_mode") c.gvsm_mode = value;
  else if (key == "models.gvsm_clamp") s.set_bool(c.gvsm_clamp);
  else if (key == "compare.inputs") c.compare_inputs = split_list(value);
  else if (key == "compare.table") c.compare_table = value;
  else return false;
  return true;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config file: " + path);

  RunConfig config;
  std::vector<std::string> problems;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      problems.push_back(path + ":" + std::to_string(line_no) +
                         ": expected 'key = value'");
      continue;
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      problems.push_back(path + ":" + std::to_string(line_no) + ": empty key");
      continue;
    }
    std::vector<std::string> key_problems;
    if (!apply_key(config, key, value, key_problems)) {
      problems.push_back(path + ":" + std::to_string(line_no) + ": unknown key '" +
                         key + "'");
    }
    for (const std::string& p : key_problems) {
      problems.push_back(path + ":" + std::to_string(line_no) + ": " + p);
    }
  }

  if (!problems.empty()) {
    std::string joined = "invalid config:";
    for (const std::string& p : problems) joined += "\n  " + p;
    fail(ErrorCode::config, joined);
  }
  return config;
}

void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value) {
  std::vector<std::string> problems;
  if (!apply_key(config, trim(key), trim(value), problems)) {
    fail(ErrorCode::config, "unknown config key '" + key + "'");
  }
  if (!problems.empty()) fail(ErrorCode::config, problems.front());
}

std::vector<std::string> validate_config(const RunConfig& config, Command command) {
  namespace fs = std::filesystem;
  std::vector<std::string> problems;
  auto require_file = [&](const std::string& path, const std::string& what) {
    if (path.empty()) {
      problems.push_back(what + " is required but not set");
    } else if (!fs::exists(path)) {
      problems.push_back(what + " does not exist: " + path);
    }
  };
  auto check_optional_file = [&](const std::string& path, const std::string& what) {
    if (!path.empty() && !fs::exists(path)) {
      problems.push_back(what + " does not exist: " + path);
    }
  };

  if (config.jobs < 1) problems.push_back("jobs must be at least 1");
  if (config.out_dir.empty()) problems.push_back("out_dir must not be empty");
  if (config.tfidf_variant != "smoothed" && config.tfidf_variant != "raw") {
    problems.push_back("tfidf.variant must be smoothed or raw, got '" +
                       config.tfidf_variant + "'");
  }
  if (config.translate_mode != "none" && config.translate_mode != "identity" &&
      config.translate_mode != "glossary" && config.translate_mode != "http") {
    problems.push_back("translate.mode must be none, identity, glossary or http, got '" +
                       config.translate_mode + "'");
  }
  if (config.lda_metric != "cosine" && config.lda_metric != "hellinger") {
    problems.push_back("models.lda_metric must be cosine or hellinger, got '" +
                       config.lda_metric + "'");
  }
  if (config.gvsm_mode != "eq7" && config.gvsm_mode != "eq4") {
    problems.push_back("models.gvsm_mode must be eq7 or eq4, got '" +
                       config.gvsm_mode + "'");
  }
  if (config.lda_topics < 2) problems.push_back("models.lda_topics must be at least 2");
  if (config.lda_beta <= 0.0) problems.push_back("models.lda_beta must be positive");
  try {
    std::regex re(config.link_pattern);
  } catch (const std::regex_error& e) {
    problems.push_back(std::string("link_pattern does not compile: ") + e.what());
  }
  check_optional_file(config.stopword_file, "tokenize.stopword_file");

  const bool needs_corpus = command != Command::compare;
  if (needs_corpus) {
    require_file(config.corpus, "corpus");
    check_optional_file(config.links, "links");
  }

  const bool translation_used =
      command == Command::translate ||
      (config.translate_mode != "none" &&
       (command == Command::trace || command == Command::eval));
  if (command == Command::translate && config.translate_mode == "none") {
    problems.push_back("translate.mode is none; nothing to translate");
  }
  if (translation_used) {
    if (config.translate_mode == "glossary") {
      require_file(config.glossary, "translate.glossary");
    } else if (config.translate_mode == "http") {
      if (config.endpoint.empty()) {
        problems.push_back("translate.endpoint is required for translate.mode=http");
      }
    }
  }

  if (command == Command::trace || command == Command::eval) {
    if (config.variants.empty()) {
      problems.push_back("models.variants must name at least one variant");
    }
    bool needs_mono = false, needs_cross = false, needs_sample = false,
         needs_translation = false;
    for (const std::string& name : config.variants) {
      Variant v;
      try {
        v = parse_variant(name);
      } catch (const Error& e) {
        problems.push_back(e.what());
        continue;
      }
      if (variant_translated(v)) needs_translation = true;
      switch (variant_table(v)) {
        case TableKind::cross:
          needs_cross = true;
          break;
        case TableKind::sampled_mono:
          needs_mono = true;
          needs_sample = true;
          break;
        case TableKind::full_mono:
          needs_mono = true;
          break;
        case TableKind::none:
          break;
      }
    }
    if (needs_translation && config.translate_mode == "none") {
      problems.push_back(
          "translated variants are listed but translate.mode is none");
    }
    if (needs_cross) require_file(config.cross_vectors, "embeddings.cross");
    if (needs_mono) require_file(config.mono_vectors, "embeddings.mono");
    if (needs_sample && config.sample_size == 0 && config.cross_vectors.empty()) {
      problems.push_back(
          "WEG needs embeddings.sample_size, or embeddings.cross to copy its size");
    }
    check_optional_file(config.cross_vectors, "embeddings.cross");
  }

  if (command == Command::compare) {
    if (config.compare_inputs.empty() && config.compare_table.empty()) {
      problems.push_back("compare needs compare.inputs or compare.table");
    }
    for (const std::string& p : config.compare_inputs) {
      require_file(p, "compare input");
    }
    check_optional_file(config.compare_table, "compare.table");
  }

  return problems;
}

}  // namespace xlt

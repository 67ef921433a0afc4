#include "core/translator.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <openssl/evp.h>

#include "httplib.h"
#include "json.hpp"

#include "core/error.hpp"
#include "core/script.hpp"
#include "core/sentences.hpp"

namespace xlt {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Glossary translator

GlossaryTranslator::GlossaryTranslator(std::map<std::string, std::string> glossary)
    : glossary_(std::move(glossary)) {
  for (const auto& [key, value] : glossary_) {
    if (key.empty()) fail(ErrorCode::invalid_argument, "glossary key must be non-empty");
    max_key_bytes_ = std::max(max_key_bytes_, key.size());
  }
}

GlossaryTranslator GlossaryTranslator::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open glossary file: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    fail(ErrorCode::parse, "glossary must be a JSON object: " + path);
  }
  std::map<std::string, std::string> glossary;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_string()) {
      fail(ErrorCode::parse, "glossary value for '" + it.key() + "' must be a string");
    }
    glossary[it.key()] = it.value().get<std::string>();
  }
  return GlossaryTranslator(std::move(glossary));
}

std::string glossary_translate(const std::string& sentence,
                               const std::map<std::string, std::string>& glossary) {
  GlossaryTranslator t{glossary};
  return t.translate(sentence, "en");
}

std::string GlossaryTranslator::translate(const std::string& sentence, const std::string&) {
  std::string out;
  out.reserve(sentence.size());
  bool just_replaced = false;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    // longest glossary key matching at this position
    const std::string* replacement = nullptr;
    std::size_t match_len = 0;
    std::size_t cap = std::min(max_key_bytes_, sentence.size() - pos);
    for (std::size_t len = cap; len > 0; --len) {
      auto it = glossary_.find(sentence.substr(pos, len));
      if (it != glossary_.end()) {
        replacement = &it->second;
        match_len = len;
        break;
      }
    }
    if (replacement) {
      if (!out.empty() && out.back() != ' ' && out.back() != '\t' && out.back() != '\n') {
        out.push_back(' ');
      }
      out += *replacement;
      pos += match_len;
      just_replaced = true;
    } else {
      char32_t cp;
      std::size_t len = decode_utf8(sentence, pos, cp);
      if (just_replaced && cp != ' ' && cp != '\t' && cp != '\n' && cp != '\r') {
        out.push_back(' ');
      }
      out.append(sentence, pos, len);
      pos += len;
      just_replaced = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HTTP translator

struct HttpTranslator::Impl {
  Options options;
  std::string host;
  std::string request_path;
};

namespace {

// Splits "http://host:port/path" into client target and path.
void split_endpoint(const std::string& endpoint, std::string& host, std::string& path) {
  std::size_t scheme = endpoint.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  std::size_t slash = endpoint.find('/', host_start);
  if (slash == std::string::npos) {
    host = endpoint;
    path = "/";
  } else {
    host = endpoint.substr(0, slash);
    path = endpoint.substr(slash);
  }
}

}  // namespace

HttpTranslator::HttpTranslator(Options options) : impl_(std::make_unique<Impl>()) {
  if (options.endpoint.empty()) {
    fail(ErrorCode::config, "http translator requires an endpoint");
  }
  impl_->options = std::move(options);
  split_endpoint(impl_->options.endpoint, impl_->host, impl_->request_path);
}

HttpTranslator::~HttpTranslator() = default;

std::string HttpTranslator::translate(const std::string& sentence,
                                      const std::string& target_language) {
  json req;
  req["text"] = sentence;
  req["source"] = "auto";
  req["target"] = target_language;
  const std::string body = req.dump();

  std::string last_failure = "no attempt made";
  int attempts = impl_->options.retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      int delay = impl_->options.backoff_ms * (1 << (attempt - 1));
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
    httplib::Client client(impl_->host);
    client.set_read_timeout(impl_->options.timeout_s, 0);
    client.set_connection_timeout(impl_->options.timeout_s, 0);
    httplib::Headers headers;
    if (!impl_->options.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + impl_->options.api_key);
    }
    auto res = client.Post(impl_->request_path, headers, body, "application/json");
    if (!res) {
      last_failure = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {  // transient server error, retry
      last_failure = "server returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      fail(ErrorCode::translation,
           "translator rejected request (status " + std::to_string(res->status) + ")");
    }
    json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("translation") ||
        !doc["translation"].is_string()) {
      fail(ErrorCode::translation, "translator returned malformed response body");
    }
    return doc["translation"].get<std::string>();
  }
  fail(ErrorCode::translation,
       "translator unreachable after " + std::to_string(attempts) + " attempts (" +
           last_failure + ")");
}

// ---------------------------------------------------------------------------
// Cache

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string TranslationCache::key_of(const std::string& sentence, const std::string& target) {
  return sha256_hex(sentence + '\x1f' + target);
}

TranslationCache::TranslationCache(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) return;  // created on first store
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;  // tolerate torn tail writes
    if (!rec.contains("key") || !rec.contains("text")) continue;
    entries_[rec["key"].get<std::string>()] = rec["text"].get<std::string>();
  }
}

bool TranslationCache::lookup(const std::string& sentence, const std::string& target,
                              std::string& translation_out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key_of(sentence, target));
  if (it == entries_.end()) return false;
  translation_out = it->second;
  return true;
}

void TranslationCache::store(const std::string& sentence, const std::string& target,
                             const std::string& translation) {
  std::string key = key_of(sentence, target);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, translation);
  if (!inserted) return;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) fail(ErrorCode::io, "cannot append to translation cache: " + path_);
    json rec;
    rec["key"] = key;
    rec["target"] = target;
    rec["text"] = translation;
    out << rec.dump() << '\n';
  }
}

std::size_t TranslationCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

// ---------------------------------------------------------------------------
// Corpus translation

namespace {

struct SentenceTask {
  std::string sentence;
  // all (artifact, field, span) slots holding this sentence share the result
};

// Rewrites one text field, replacing bilingual sentence spans with their
// translations (already resolved in `results`).
std::string splice_translations(
    const std::string& text, const std::vector<SentenceSpan>& spans,
    const std::vector<const std::string*>& replacements) {
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (!replacements[i]) continue;
    out.append(text, cursor, spans[i].begin - cursor);
    out += *replacements[i];
    cursor = spans[i].end;
  }
  out.append(text, cursor, text.size() - cursor);
  return out;
}

}  // namespace

TraceDataset translate_corpus(const TraceDataset& dataset, Translator& translator,
                              TranslationCache* cache, const std::string& target_language,
                              int jobs, TranslationStats* stats) {
  TranslationStats local;

  // Collect distinct bilingual sentences across all artifacts first so each
  // is translated exactly once.
  std::vector<std::string> pending;  // distinct, in discovery order
  std::vector<std::string> owner;   // id of the first artifact holding it
  std::unordered_map<std::string, std::size_t> pending_index;

  auto scan_text = [&](const std::string& text, const std::string& artifact_id) {
    for (const SentenceSpan& span : sentence_spans(text)) {
      ++local.sentences;
      std::string sentence = text.substr(span.begin, span.end - span.begin);
      if (!is_bilingual_sentence(sentence)) continue;
      ++local.bilingual;
      if (pending_index.emplace(sentence, pending.size()).second) {
        pending.push_back(std::move(sentence));
        owner.push_back(artifact_id);
      }
    }
  };
  for (const Artifact& a : dataset.sources) {
    scan_text(a.summary, a.id);
    scan_text(a.body, a.id);
  }
  for (const Artifact& a : dataset.targets) {
    scan_text(a.summary, a.id);
    scan_text(a.body, a.id);
  }

  // Resolve each distinct sentence, preferring the cache.
  std::vector<std::string> resolved(pending.size());
  std::vector<std::size_t> misses;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (cache && cache->lookup(pending[i], target_language, resolved[i])) {
      ++local.cache_hits;
    } else {
      misses.push_back(i);
    }
  }

  if (!misses.empty()) {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
      for (;;) {
        std::size_t slot = next.fetch_add(1);
        if (slot >= misses.size()) return;
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error.empty()) return;
        }
        std::size_t i = misses[slot];
        try {
          resolved[i] = translator.translate(pending[i], target_language);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) {
            std::string snippet = pending[i].substr(0, 120);
            first_error = std::string(e.what()) + " while translating sentence '" +
                          snippet + "' of artifact " + owner[i];
          }
          return;
        }
      }
    };

    int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(misses.size())));
    if (n_workers == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      threads.reserve(static_cast<std::size_t>(n_workers));
      for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (!first_error.empty()) fail(ErrorCode::translation, first_error);

    local.translator_calls = misses.size();
    if (cache) {
      for (std::size_t i : misses) cache->store(pending[i], target_language, resolved[i]);
    }
  }

  // Splice translations back into artifact text.
  auto rewrite = [&](const std::string& text) {
    std::vector<SentenceSpan> spans = sentence_spans(text);
    std::vector<const std::string*> replacements(spans.size(), nullptr);
    bool any = false;
    for (std::size_t i = 0; i < spans.size(); ++i) {
      std::string sentence = text.substr(spans[i].begin, spans[i].end - spans[i].begin);
      auto it = pending_index.find(sentence);
      if (it == pending_index.end()) continue;
      replacements[i] = &resolved[it->second];
      any = true;
    }
    if (!any) return text;
    return splice_translations(text, spans, replacements);
  };

  TraceDataset out;
  out.id = dataset.id;
  out.golden = dataset.golden;
  out.sources.reserve(dataset.sources.size());
  out.targets.reserve(dataset.targets.size());
  for (const Artifact& a : dataset.sources) {
    Artifact b = a;
    b.summary = rewrite(a.summary);
    b.body = rewrite(a.body);
    out.sources.push_back(std::move(b));
  }
  for (const Artifact& a : dataset.targets) {
    Artifact b = a;
    b.summary = rewrite(a.summary);
    b.body = rewrite(a.body);
    out.targets.push_back(std::move(b));
  }
  out.rebuild_index();

  if (stats) *stats = local;
  return out;
}

}  // namespace xlt

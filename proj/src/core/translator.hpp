#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/artifact.hpp"

namespace xlt {

// Sentence-level translator. Implementations must be deterministic for a
// fixed configuration and return valid UTF-8.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate(const std::string& sentence,
                                const std::string& target_language) = 0;
  virtual const char* name() const = 0;
};

class IdentityTranslator : public Translator {
 public:
  std::string translate(const std::string& sentence, const std::string&) override {
    return sentence;
  }
  const char* name() const override { return "identity"; }
};

// Deterministic dictionary substitution: longest-match, left-to-right
// replacement of foreign-script keys; unknown spans pass through unchanged.
// A space is inserted where a substitution would otherwise fuse with
// adjacent non-space text.
class GlossaryTranslator : public Translator {
 public:
  explicit GlossaryTranslator(std::map<std::string, std::string> glossary);

  // JSON object file: {"foreign term": "replacement", ...}
  static GlossaryTranslator from_file(const std::string& path);

  std::string translate(const std::string& sentence, const std::string&) override;
  const char* name() const override { return "glossary"; }

 private:
  std::map<std::string, std::string> glossary_;
  std::size_t max_key_bytes_ = 0;
};

std::string glossary_translate(const std::string& sentence,
                               const std::map<std::string, std::string>& glossary);

// HTTP translator. POSTs {"text": ..., "source": "auto", "target": ...} to
// the endpoint and expects {"translation": ...} back. Retries transient
// failures with exponential backoff.
class HttpTranslator : public Translator {
 public:
  struct Options {
    std::string endpoint;     // e.g. "http://localhost:8089/translate"
    std::string api_key;      // sent as "Authorization: Bearer <key>" when set
    int retries = 3;
    int backoff_ms = 250;
    int timeout_s = 30;
  };

  explicit HttpTranslator(Options options);
  ~HttpTranslator() override;

  std::string translate(const std::string& sentence,
                        const std::string& target_language) override;
  const char* name() const override { return "http"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Persistent translation cache: an append-only JSON-lines log keyed by the
// SHA-256 of (sentence, target language). A hit returns the byte-identical
// previous result.
class TranslationCache {
 public:
  TranslationCache() = default;                      // in-memory only
  explicit TranslationCache(const std::string& path);  // file-backed

  bool lookup(const std::string& sentence, const std::string& target,
              std::string& translation_out) const;
  void store(const std::string& sentence, const std::string& target,
             const std::string& translation);
  std::size_t size() const;

 private:
  static std::string key_of(const std::string& sentence, const std::string& target);

  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
  std::string path_;  // empty for in-memory caches
};

struct TranslationStats {
  std::size_t sentences = 0;          // sentences scanned
  std::size_t bilingual = 0;          // sentences containing foreign spans
  std::size_t translator_calls = 0;   // actual translator invocations
  std::size_t cache_hits = 0;
};

// Replaces every bilingual sentence with its translation; everything else,
// including ids, timestamps and links, is preserved byte for byte. Fails
// without partial output if the translator gives up on any sentence.
TraceDataset translate_corpus(const TraceDataset& dataset, Translator& translator,
                              TranslationCache* cache = nullptr,
                              const std::string& target_language = "en",
                              int jobs = 1, TranslationStats* stats = nullptr);

}  // namespace xlt

#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "core/script.hpp"

namespace xlt {

struct Token {
  std::string surface;  // normalized (Latin script lowercased)
  Script script = Script::latin;

  bool operator==(const Token&) const = default;
};

struct TokenizerOptions {
  // Emit character bigrams for CJK runs in addition to single characters.
  bool cjk_bigrams = true;
  // Drop English stopwords (applies to ASCII Latin tokens).
  bool remove_stopwords = true;
  // Light suffix stripping for ASCII Latin tokens (off by default).
  bool stem = false;
  // nullptr selects the built-in list.
  const std::unordered_set<std::string>* stopwords = nullptr;
};

// Splits mixed-script text into tokens:
//  - Latin-script runs (letters/digits) split on everything else, lowercased;
//    digit-only runs are dropped, alphanumeric identifiers kept whole
//  - CJK runs become single-character tokens, plus character bigrams when
//    enabled
//  - Hangul / Kana / other-script letter runs are kept whole
std::vector<Token> tokenize(std::string_view text, const TokenizerOptions& opts = {});

// The built-in English stopword list (lowercase).
const std::unordered_set<std::string>& builtin_stopwords();

// One term per line; '#' comments and blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::string& path);

}  // namespace xlt

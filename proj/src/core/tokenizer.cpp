#include "core/tokenizer.hpp"

#include <fstream>

#include "core/error.hpp"

namespace xlt {
namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Strips one common English suffix when enough stem remains.
std::string light_stem(const std::string& term) {
  static const char* suffixes[] = {"ing", "edly", "ed", "ies", "es", "s"};
  for (const char* suf : suffixes) {
    std::size_t n = std::char_traits<char>::length(suf);
    if (term.size() > n + 2 && term.ends_with(suf)) {
      return term.substr(0, term.size() - n);
    }
  }
  return term;
}

}  // namespace

const std::unordered_set<std::string>& builtin_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",       "about",  "above",  "after",   "again",  "against", "all",
      "am",      "an",     "and",    "any",     "are",    "as",      "at",
      "be",      "because", "been",  "before",  "being",  "below",   "between",
      "both",    "but",    "by",     "can",     "cannot", "could",   "did",
      "do",      "does",   "doing",  "down",    "during", "each",    "few",
      "for",     "from",   "further", "had",    "has",    "have",    "having",
      "he",      "her",    "here",   "hers",    "herself", "him",    "himself",
      "his",     "how",    "i",      "if",      "in",     "into",    "is",
      "it",      "its",    "itself", "just",    "me",     "more",    "most",
      "my",      "myself", "no",     "nor",     "not",    "now",     "of",
      "off",     "on",     "once",   "only",    "or",     "other",   "ought",
      "our",     "ours",   "ourselves", "out",  "over",   "own",     "same",
      "she",     "should", "so",     "some",    "such",   "than",    "that",
      "the",     "their",  "theirs", "them",    "themselves", "then", "there",
      "these",   "they",   "this",   "those",   "through", "to",     "too",
      "under",   "until",  "up",     "very",    "was",    "we",      "were",
      "what",    "when",   "where",  "which",   "while",  "who",     "whom",
      "why",     "will",   "with",   "would",   "you",    "your",    "yours",
      "yourself", "yourselves",
  };
  return words;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open stopword file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return words;
}

std::vector<Token> tokenize(std::string_view text, const TokenizerOptions& opts) {
  const std::unordered_set<std::string>& stop =
      opts.stopwords ? *opts.stopwords : builtin_stopwords();

  std::vector<Token> tokens;

  std::string latin_run;
  bool latin_has_letter = false;
  bool latin_has_ext = false;

  std::vector<std::string> cjk_run;  // single chars of the current CJK span

  std::string foreign_run;  // hangul / kana / other run
  CharClass foreign_cls = CharClass::nonword;

  auto flush_latin = [&] {
    if (latin_run.empty()) return;
    // digit-only runs dropped
    if (latin_has_letter) {
      std::string t = latin_run;
      if (opts.stem && !latin_has_ext) t = light_stem(t);
      bool stopped = opts.remove_stopwords && !latin_has_ext && stop.count(t) > 0;
      if (!stopped) {
        tokens.push_back({std::move(t), latin_has_ext ? Script::latin_extended : Script::latin});
      }
    }
    latin_run.clear();
    latin_has_letter = false;
    latin_has_ext = false;
  };

  auto flush_cjk = [&] {
    if (cjk_run.empty()) return;
    for (const auto& ch : cjk_run) tokens.push_back({ch, Script::cjk});
    if (opts.cjk_bigrams) {
      for (std::size_t i = 0; i + 1 < cjk_run.size(); ++i) {
        tokens.push_back({cjk_run[i] + cjk_run[i + 1], Script::cjk});
      }
    }
    cjk_run.clear();
  };

  auto flush_foreign = [&] {
    if (foreign_run.empty()) return;
    Script sc = foreign_cls == CharClass::hangul  ? Script::hangul
                : foreign_cls == CharClass::kana  ? Script::kana
                                                  : Script::other;
    tokens.push_back({std::move(foreign_run), sc});
    foreign_run.clear();
    foreign_cls = CharClass::nonword;
  };

  auto flush_all = [&] {
    flush_latin();
    flush_cjk();
    flush_foreign();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(text, pos, cp);
    CharClass cls = classify_char(cp);
    switch (cls) {
      case CharClass::latin_letter:
      case CharClass::digit:
      case CharClass::latin_ext_letter:
        flush_cjk();
        flush_foreign();
        append_utf8(latin_run, to_lower(cp));
        latin_has_letter = latin_has_letter || cls != CharClass::digit;
        latin_has_ext = latin_has_ext || cls == CharClass::latin_ext_letter;
        break;
      case CharClass::cjk: {
        flush_latin();
        flush_foreign();
        std::string ch;
        append_utf8(ch, cp);
        cjk_run.push_back(std::move(ch));
        break;
      }
      case CharClass::hangul:
      case CharClass::kana:
      case CharClass::other_letter:
        flush_latin();
        flush_cjk();
        if (foreign_cls != cls) flush_foreign();
        foreign_cls = cls;
        append_utf8(foreign_run, cp);
        break;
      case CharClass::nonword:
        flush_all();
        break;
    }
    pos += len;
  }
  flush_all();
  return tokens;
}

}  // namespace xlt

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace xlt {

// Script class of a token or span, decided purely from code points.
enum class Script {
  latin,           // ASCII letters / digits
  cjk,             // CJK unified ideographs (incl. extensions and compat)
  hangul,          // Hangul syllables and jamo
  kana,            // Hiragana / Katakana
  latin_extended,  // Latin letters outside ASCII (ä, ö, ü, ß, ...)
  other,           // any other letter script (Cyrillic, Greek, Arabic, ...)
};

const char* script_name(Script s);

// Per-code-point classification shared by span detection and tokenization.
enum class CharClass {
  latin_letter,
  digit,
  cjk,
  hangul,
  kana,
  latin_ext_letter,
  other_letter,
  nonword,  // whitespace, punctuation, symbols, unassigned
};

CharClass classify_char(char32_t cp);

// True for classes that make a span "foreign" (anything but ASCII Latin).
bool is_foreign_class(CharClass c);

// Decodes one UTF-8 sequence starting at `pos`; returns bytes consumed
// (at least 1, so malformed bytes never stall a scan). Malformed input
// yields U+FFFD.
std::size_t decode_utf8(std::string_view text, std::size_t pos, char32_t& cp);

// Lowercases ASCII and the common Latin-1 / Latin Extended-A letters.
char32_t to_lower(char32_t cp);

// A maximal run of same-script foreign letters, as byte offsets into the
// original text.
struct ForeignSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last byte
  Script script = Script::other;
};

// Maximal contiguous spans of non-ASCII-Latin letters. Adjacent letters of
// the same script class coalesce; a script change starts a new span.
std::vector<ForeignSpan> detect_foreign_spans(std::string_view text);

// Early-exit variant of detect_foreign_spans(text).empty().
bool has_foreign_letters(std::string_view text);

}  // namespace xlt

#include "core/script.hpp"

namespace xlt {

const char* script_name(Script s) {
  switch (s) {
    case Script::latin: return "latin";
    case Script::cjk: return "cjk";
    case Script::hangul: return "hangul";
    case Script::kana: return "kana";
    case Script::latin_extended: return "latin_extended";
    case Script::other: return "other";
  }
  return "unknown";
}

namespace {

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

bool is_cjk(char32_t cp) {
  return in(cp, 0x4E00, 0x9FFF) ||    // unified ideographs
         in(cp, 0x3400, 0x4DBF) ||    // extension A
         in(cp, 0xF900, 0xFAFF) ||    // compatibility ideographs
         in(cp, 0x20000, 0x2A6DF) ||  // extension B
         in(cp, 0x2A700, 0x2FA1F);    // extensions C..F + compat supplement
}

bool is_hangul(char32_t cp) {
  return in(cp, 0xAC00, 0xD7A3) ||  // syllables
         in(cp, 0x1100, 0x11FF) ||  // jamo
         in(cp, 0x3130, 0x318F) ||  // compatibility jamo
         in(cp, 0xA960, 0xA97F) || in(cp, 0xD7B0, 0xD7FF);
}

bool is_kana(char32_t cp) {
  return in(cp, 0x3041, 0x309F) ||  // hiragana
         in(cp, 0x30A0, 0x30FF) ||  // katakana (incl. U+30FC prolonged mark)
         in(cp, 0x31F0, 0x31FF) ||  // small kana extension
         in(cp, 0xFF66, 0xFF9F);    // halfwidth katakana
}

bool is_latin_ext(char32_t cp) {
  if (in(cp, 0x00C0, 0x00FF)) return cp != 0x00D7 && cp != 0x00F7;  // skip × ÷
  return in(cp, 0x0100, 0x024F) ||  // Latin Extended-A / B
         in(cp, 0x1E00, 0x1EFF) ||  // Latin Extended Additional
         in(cp, 0xFF21, 0xFF3A) || in(cp, 0xFF41, 0xFF5A);  // fullwidth A-Z a-z
}

// Letter blocks for scripts we do not need to tell apart.
bool is_other_letter(char32_t cp) {
  return in(cp, 0x0370, 0x03FF) || in(cp, 0x1F00, 0x1FFF) ||  // Greek
         in(cp, 0x0400, 0x052F) ||                            // Cyrillic
         in(cp, 0x0530, 0x058F) ||                            // Armenian
         in(cp, 0x0590, 0x05FF) ||                            // Hebrew
         in(cp, 0x0600, 0x06FF) || in(cp, 0x0750, 0x077F) ||  // Arabic
         in(cp, 0x0700, 0x074F) ||                            // Syriac
         in(cp, 0x0900, 0x0D7F) ||                            // Indic scripts
         in(cp, 0x0D80, 0x0DFF) ||                            // Sinhala
         in(cp, 0x0E00, 0x0E7F) || in(cp, 0x0E80, 0x0EFF) ||  // Thai, Lao
         in(cp, 0x0F00, 0x0FFF) ||                            // Tibetan
         in(cp, 0x1000, 0x109F) ||                            // Myanmar
         in(cp, 0x10A0, 0x10FF) ||                            // Georgian
         in(cp, 0x1200, 0x137F) ||                            // Ethiopic
         in(cp, 0x13A0, 0x13FF) ||                            // Cherokee
         in(cp, 0x1780, 0x17FF) ||                            // Khmer
         in(cp, 0x1800, 0x18AF) ||                            // Mongolian
         in(cp, 0x3100, 0x312F) || in(cp, 0x31A0, 0x31BF) ||  // Bopomofo
         in(cp, 0xA000, 0xA48F);                              // Yi
}

}  // namespace

CharClass classify_char(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return CharClass::latin_letter;
  if (cp >= '0' && cp <= '9') return CharClass::digit;
  if (in(cp, 0xFF10, 0xFF19)) return CharClass::digit;  // fullwidth digits
  if (is_cjk(cp)) return CharClass::cjk;
  if (is_hangul(cp)) return CharClass::hangul;
  if (is_kana(cp)) return CharClass::kana;
  if (is_latin_ext(cp)) return CharClass::latin_ext_letter;
  if (is_other_letter(cp)) return CharClass::other_letter;
  return CharClass::nonword;
}

bool is_foreign_class(CharClass c) {
  switch (c) {
    case CharClass::cjk:
    case CharClass::hangul:
    case CharClass::kana:
    case CharClass::latin_ext_letter:
    case CharClass::other_letter:
      return true;
    default:
      return false;
  }
}

std::size_t decode_utf8(std::string_view text, std::size_t pos, char32_t& cp) {
  const auto byte = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(text[i]);
  };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len;
  char32_t v;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    v = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    v = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    v = b0 & 0x07;
  } else {
    cp = 0xFFFD;
    return 1;
  }
  if (pos + len > text.size()) {
    cp = 0xFFFD;
    return 1;
  }
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      cp = 0xFFFD;
      return 1;
    }
    v = (v << 6) | (b & 0x3F);
  }
  cp = v;
  return len;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  // Latin-1 supplement uppercase letters
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  // Latin Extended-A pairs upper/lower alternately, with a few exceptions
  if (cp >= 0x0100 && cp <= 0x0177 && (cp & 1) == 0) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017E) return (cp & 1) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;  // Ÿ
  // fullwidth A-Z
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
  return cp;
}

namespace {

Script script_of_class(CharClass c) {
  switch (c) {
    case CharClass::cjk: return Script::cjk;
    case CharClass::hangul: return Script::hangul;
    case CharClass::kana: return Script::kana;
    case CharClass::latin_ext_letter: return Script::latin_extended;
    case CharClass::other_letter: return Script::other;
    default: return Script::latin;
  }
}

}  // namespace

std::vector<ForeignSpan> detect_foreign_spans(std::string_view text) {
  std::vector<ForeignSpan> spans;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(text, pos, cp);
    CharClass cls = classify_char(cp);
    if (is_foreign_class(cls)) {
      Script sc = script_of_class(cls);
      if (!spans.empty() && spans.back().end == pos && spans.back().script == sc) {
        spans.back().end = pos + len;
      } else {
        spans.push_back({pos, pos + len, sc});
      }
    }
    pos += len;
  }
  return spans;
}

bool has_foreign_letters(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(text, pos, cp);
    if (is_foreign_class(classify_char(cp))) return true;
    pos += len;
  }
  return false;
}

}  // namespace xlt

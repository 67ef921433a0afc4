#include "core/sentences.hpp"

#include "core/script.hpp"

namespace xlt {
namespace {

bool is_terminator(char32_t cp) {
  switch (cp) {
    case '.':
    case '!':
    case '?':
    case '\n':
    case 0x3002:  // 。
    case 0xFF01:  // ！
    case 0xFF1F:  // ？
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n' || cp == 0x3000;
}

}  // namespace

std::vector<SentenceSpan> sentence_spans(std::string_view text) {
  std::vector<SentenceSpan> spans;
  std::size_t piece_start = 0;
  std::size_t pos = 0;

  auto emit = [&](std::size_t end) {
    // trim to the non-whitespace extent
    std::size_t b = piece_start, e = end;
    while (b < e) {
      char32_t cp;
      std::size_t len = decode_utf8(text, b, cp);
      if (!is_space(cp)) break;
      b += len;
    }
    std::size_t last_nonspace = b;
    for (std::size_t p = b; p < e;) {
      char32_t cp;
      std::size_t len = decode_utf8(text, p, cp);
      if (!is_space(cp)) last_nonspace = p + len;
      p += len;
    }
    e = last_nonspace;
    if (b < e) spans.push_back({b, e});
    piece_start = end;
  };

  while (pos < text.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(text, pos, cp);
    if (is_terminator(cp)) {
      // consume the whole terminator run
      std::size_t run_end = pos + len;
      while (run_end < text.size()) {
        char32_t next;
        std::size_t nlen = decode_utf8(text, run_end, next);
        if (!is_terminator(next)) break;
        run_end += nlen;
      }
      emit(run_end);
      pos = run_end;
    } else {
      pos += len;
    }
  }
  if (piece_start < text.size()) emit(text.size());
  return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (const SentenceSpan& s : sentence_spans(text)) {
    out.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return out;
}

bool is_bilingual_sentence(std::string_view sentence) {
  return has_foreign_letters(sentence);
}

}  // namespace xlt

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace xlt {

// Byte range of one sentence, trimmed to its non-whitespace extent.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Sentence boundaries fall after maximal runs of the terminators
// . ! ? 。 ！ ？ and newline. Whitespace-only pieces are dropped, so the
// concatenated spans lose no non-whitespace characters.
std::vector<SentenceSpan> sentence_spans(std::string_view text);

std::vector<std::string> split_sentences(std::string_view text);

// True iff the sentence contains at least one foreign-script span.
bool is_bilingual_sentence(std::string_view sentence);

}  // namespace xlt

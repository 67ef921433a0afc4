#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/tokenizer.hpp"

namespace xlt {

// Indexed term space over a corpus. Indices are assigned in first-encounter
// order, so a fixed document order yields a fixed vocabulary.
class Vocabulary {
 public:
  static Vocabulary build(const std::vector<std::vector<Token>>& docs);

  int index_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : it->second;
  }
  const std::string& term_at(int idx) const { return terms_[static_cast<std::size_t>(idx)]; }
  int doc_frequency(int idx) const { return df_[static_cast<std::size_t>(idx)]; }
  std::size_t size() const { return terms_.size(); }
  std::size_t doc_count() const { return docs_; }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> terms_;
  std::vector<int> df_;
  std::size_t docs_ = 0;
};

enum class TfidfVariant {
  smoothed,  // tf * (ln((1+N)/(1+df)) + 1); corpus-wide terms keep weight
  raw,       // tf * ln(N/df); terms present in every document get zero
};

// Sparse non-negative document vector over a Vocabulary; entries sorted by
// term index, zero weights never stored.
struct DocVector {
  std::vector<std::pair<int, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const;
  double dot(const DocVector& other) const;
};

// Out-of-vocabulary tokens are ignored.
DocVector tfidf_vectorize(const std::vector<Token>& doc, const Vocabulary& vocab,
                          TfidfVariant variant = TfidfVariant::smoothed);

}  // namespace xlt

#include "core/vocabulary.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace xlt {

Vocabulary Vocabulary::build(const std::vector<std::vector<Token>>& docs) {
  if (docs.empty()) fail(ErrorCode::invalid_argument, "vocabulary requires at least one document");
  Vocabulary v;
  v.docs_ = docs.size();
  std::vector<int> seen_in;  // doc index where the term was last counted
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const Token& tok : docs[d]) {
      auto [it, inserted] = v.index_.try_emplace(tok.surface, static_cast<int>(v.terms_.size()));
      if (inserted) {
        v.terms_.push_back(tok.surface);
        v.df_.push_back(0);
        seen_in.push_back(-1);
      }
      int idx = it->second;
      if (seen_in[static_cast<std::size_t>(idx)] != static_cast<int>(d)) {
        seen_in[static_cast<std::size_t>(idx)] = static_cast<int>(d);
        ++v.df_[static_cast<std::size_t>(idx)];
      }
    }
  }
  return v;
}

double DocVector::norm() const {
  double s = 0.0;
  for (const auto& [idx, w] : entries) s += w * w;
  return std::sqrt(s);
}

double DocVector::dot(const DocVector& other) const {
  double s = 0.0;
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() && b != other.entries.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

DocVector tfidf_vectorize(const std::vector<Token>& doc, const Vocabulary& vocab,
                          TfidfVariant variant) {
  std::unordered_map<int, int> counts;
  for (const Token& tok : doc) {
    int idx = vocab.index_of(tok.surface);
    if (idx >= 0) ++counts[idx];
  }
  const double n_docs = static_cast<double>(vocab.doc_count());
  DocVector v;
  v.entries.reserve(counts.size());
  for (const auto& [idx, tf] : counts) {
    double df = static_cast<double>(vocab.doc_frequency(idx));
    double w;
    if (variant == TfidfVariant::smoothed) {
      w = tf * (std::log((1.0 + n_docs) / (1.0 + df)) + 1.0);
    } else {
      w = tf * std::log(n_docs / df);
    }
    if (w > 0.0) v.entries.emplace_back(idx, w);
  }
  std::sort(v.entries.begin(), v.entries.end());
  return v;
}

}  // namespace xlt

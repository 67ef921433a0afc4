#include "core/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace xlt {
namespace {

double dense_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

double vsm_similarity(const DocVector& a, const DocVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

GvsmScorer::GvsmScorer(const std::vector<DocVector>& docs, const Vocabulary& vocab,
                       const EmbeddingTable& table, const GvsmOptions& options)
    : options_(options) {
  docs_.reserve(docs.size());
  for (const DocVector& doc : docs) {
    DocState state;
    state.embedding = table.doc_embedding(doc, vocab);
    for (const auto& [idx, weight] : doc.entries) {
      if (!table.contains(vocab.term_at(idx))) {
        state.oov.entries.emplace_back(idx, weight);
      }
    }
    state.vector_norm = doc.norm();
    double self = numerator(state, state);
    state.kernel_norm = self > 0.0 ? std::sqrt(self) : 0.0;
    docs_.push_back(std::move(state));
  }
}

double GvsmScorer::numerator(const DocState& a, const DocState& b) const {
  return dense_dot(a.embedding, b.embedding) + a.oov.dot(b.oov);
}

double GvsmScorer::score(std::size_t i, std::size_t j) const {
  const DocState& a = docs_[i];
  const DocState& b = docs_[j];
  double num = numerator(a, b);
  if (options_.clamp_negative && num < 0.0) num = 0.0;
  double denom;
  if (options_.mode == GvsmMode::eq7) {
    denom = a.vector_norm * b.vector_norm;
  } else {
    denom = a.kernel_norm * b.kernel_norm;
  }
  if (denom == 0.0) return 0.0;
  return num / denom;
}

double gvsm_similarity(const DocVector& a, const DocVector& b,
                       const Vocabulary& vocab, const EmbeddingTable& table,
                       const GvsmOptions& options) {
  GvsmScorer scorer({a, b}, vocab, table, options);
  return scorer.score(0, 1);
}

double cosine_similarity(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    fail(ErrorCode::invalid_argument, "cosine: vectors differ in length");
  }
  double pp = dense_dot(p, p);
  double qq = dense_dot(q, q);
  if (pp == 0.0 || qq == 0.0) return 0.0;
  return dense_dot(p, q) / (std::sqrt(pp) * std::sqrt(qq));
}

double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    fail(ErrorCode::invalid_argument, "hellinger: vectors differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double diff = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += diff * diff;
  }
  // Rounding can push the sum for disjoint supports a hair past 1.
  return std::min(1.0, std::sqrt(0.5 * sum));
}

double hellinger_similarity(const std::vector<double>& p, const std::vector<double>& q) {
  return 1.0 - hellinger_distance(p, q);
}

}  // namespace xlt

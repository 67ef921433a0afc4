#pragma once

#include <cstddef>
#include <vector>

#include "core/embedding.hpp"
#include "core/vocabulary.hpp"

namespace xlt {

// Cosine similarity between two sparse TF-IDF vectors. Returns 0 when either
// vector is empty.
double vsm_similarity(const DocVector& a, const DocVector& b);

// Denominator convention for the embedding-backed similarity. "eq7" divides
// by the plain TF-IDF vector norms; "eq4" divides by the square roots of each
// document's self-numerator (its generalized self-similarity).
enum class GvsmMode { eq7, eq4 };

struct GvsmOptions {
  GvsmMode mode = GvsmMode::eq7;
  // Real embedding tables can produce negative numerators; clamping keeps
  // scores in [0,1] so they rank like the other models.
  bool clamp_negative = true;
};

// One-off similarity between two documents. The table must be normalized.
// Terms absent from the table fall back to sim(t,t)=1, sim(t,u)=0, which is
// exactly their VSM contribution.
double gvsm_similarity(const DocVector& a, const DocVector& b,
                       const Vocabulary& vocab, const EmbeddingTable& table,
                       const GvsmOptions& options = {});

// Precomputes per-document embeddings, out-of-table residuals, and norms so
// scoring a full candidate list costs one dense dot per pair.
class GvsmScorer {
 public:
  GvsmScorer(const std::vector<DocVector>& docs, const Vocabulary& vocab,
             const EmbeddingTable& table, const GvsmOptions& options = {});

  // Similarity between docs[i] and docs[j] as passed to the constructor.
  double score(std::size_t i, std::size_t j) const;

 private:
  struct DocState {
    std::vector<double> embedding;
    DocVector oov;
    double vector_norm = 0.0;
    double kernel_norm = 0.0;
  };

  double numerator(const DocState& a, const DocState& b) const;

  GvsmOptions options_;
  std::vector<DocState> docs_;
};

// Cosine similarity between two dense real vectors. Returns 0 when either
// vector is all zeros.
double cosine_similarity(const std::vector<double>& p, const std::vector<double>& q);

// Hellinger distance between two discrete distributions of equal length:
// H = sqrt(0.5 * sum_i (sqrt(p_i) - sqrt(q_i))^2), in [0,1].
double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q);

// 1 - H, so identical distributions score 1 and disjoint ones score 0.
double hellinger_similarity(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace xlt

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/vocabulary.hpp"

namespace xlt {

// Token -> fixed-dimension vector store, loaded from word2vec-style text
// files. Mono- and cross-lingual tables share this type; which one a table
// is depends only on the file it was loaded from.
class EmbeddingTable {
 public:
  // First line "<count> <dimension>", then one "token v1 .. vd" per line.
  // With `limit` > 0 only the first `limit` rows are kept.
  static EmbeddingTable load(const std::string& path, std::size_t limit = 0);

  // Builder used by tests and sampling.
  static EmbeddingTable from_entries(
      std::size_t dimension,
      const std::vector<std::pair<std::string, std::vector<float>>>& entries);

  std::size_t size() const { return tokens_.size(); }
  std::size_t dimension() const { return dim_; }
  bool normalized() const { return normalized_; }
  bool contains(const std::string& token) const { return index_.count(token) > 0; }
  const std::string& token_at(std::size_t i) const { return tokens_[i]; }

  // nullptr when absent; vectors are `dimension()` floats.
  const float* vector_of(const std::string& token) const;

  // Scales every vector to unit Euclidean norm. A zero vector is an error.
  EmbeddingTable l2_normalized() const;

  // Uniform random subset of exactly target_size entries, reproducible per
  // seed; original file order is preserved.
  EmbeddingTable sample(std::size_t target_size, std::uint64_t seed) const;

  // Cosine of two in-table tokens (table must be normalized). When either
  // token is missing: 1 for identical tokens, 0 otherwise. Clamped to [-1,1].
  double term_similarity(const std::string& a, const std::string& b) const;

  // Weighted sum of term vectors over in-table terms; OOV terms skipped.
  std::vector<double> doc_embedding(const DocVector& doc, const Vocabulary& vocab) const;

 private:
  std::size_t dim_ = 0;
  bool normalized_ = false;
  std::vector<std::string> tokens_;
  std::vector<float> data_;  // size() * dim_, row-major
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace xlt

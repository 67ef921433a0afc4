#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/vocabulary.hpp"

namespace xlt {

// Rank-k latent space fitted over a document collection. The decomposition
// works on the document Gram matrix, so memory stays O(docs^2 + nnz) and the
// term-document matrix is never densified.
class LsiSpace {
 public:
  // k = 0 picks min(200, rank). An explicit k larger than the numerical rank
  // is clamped and recorded in warnings().
  static LsiSpace fit(std::vector<DocVector> corpus, std::size_t k = 0);

  std::size_t k() const { return k_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Folds an arbitrary document into the latent space. For documents of the
  // fitted corpus this reproduces their rank-k representation exactly.
  std::vector<double> project(const DocVector& doc) const;

 private:
  std::size_t k_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::string> warnings_;
  std::vector<DocVector> corpus_;
  Eigen::MatrixXd basis_;      // docs x k eigenvectors, strongest first
  Eigen::VectorXd inv_sigma_;  // reciprocal singular values, length k
};

// Cosine of the two projections.
double lsi_similarity(const LsiSpace& space, const DocVector& a, const DocVector& b);

}  // namespace xlt

#include "core/lsi.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/similarity.hpp"

namespace xlt {

LsiSpace LsiSpace::fit(std::vector<DocVector> corpus, std::size_t k) {
  if (corpus.empty()) fail(ErrorCode::invalid_argument, "lsi: empty corpus");
  const std::size_t n = corpus.size();

  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double d = corpus[i].dot(corpus[j]);
      gram(i, j) = d;
      gram(j, i) = d;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::internal, "lsi: eigendecomposition failed");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending

  double max_value = values(n - 1);
  if (max_value <= 0.0) {
    fail(ErrorCode::invalid_argument, "lsi: corpus has no nonzero document vectors");
  }
  double cutoff = max_value * 1e-10;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > cutoff) ++rank;
  }

  LsiSpace space;
  space.rank_ = rank;
  if (k == 0) {
    space.k_ = std::min<std::size_t>(200, rank);
  } else if (k > rank) {
    space.k_ = rank;
    space.warnings_.push_back("requested k=" + std::to_string(k) +
                              " exceeds rank " + std::to_string(rank) +
                              "; clamped to " + std::to_string(rank));
  } else {
    space.k_ = k;
  }

  space.basis_.resize(n, space.k_);
  space.inv_sigma_.resize(space.k_);
  for (std::size_t j = 0; j < space.k_; ++j) {
    Eigen::Index col = static_cast<Eigen::Index>(n - 1 - j);
    space.basis_.col(j) = solver.eigenvectors().col(col);
    space.inv_sigma_(j) = 1.0 / std::sqrt(values(col));
  }
  space.corpus_ = std::move(corpus);
  return space;
}

std::vector<double> LsiSpace::project(const DocVector& doc) const {
  Eigen::VectorXd against(corpus_.size());
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    against(static_cast<Eigen::Index>(i)) = corpus_[i].dot(doc);
  }
  Eigen::VectorXd coords = basis_.transpose() * against;
  std::vector<double> out(k_);
  for (std::size_t j = 0; j < k_; ++j) {
    out[j] = inv_sigma_(static_cast<Eigen::Index>(j)) *
             coords(static_cast<Eigen::Index>(j));
  }
  return out;
}

double lsi_similarity(const LsiSpace& space, const DocVector& a, const DocVector& b) {
  return cosine_similarity(space.project(a), space.project(b));
}

}  // namespace xlt

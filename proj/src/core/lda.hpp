#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xlt {

struct LdaOptions {
  std::size_t topics = 60;
  double alpha = 0.0;  // <= 0 picks 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
};

// Fits topic distributions over tokenized documents with collapsed Gibbs
// sampling. Returns one distribution of length `topics` per document,
// smoothed by alpha so even empty documents get a proper (uniform)
// distribution. Deterministic per seed.
std::vector<std::vector<double>> lda_fit(const std::vector<std::vector<std::string>>& docs,
                                         const LdaOptions& options = {});

enum class DistributionMetric { cosine, hellinger };

// Cosine of the distributions, or 1 - Hellinger distance.
double lda_similarity(const std::vector<double>& p, const std::vector<double>& q,
                      DistributionMetric metric);

}  // namespace xlt

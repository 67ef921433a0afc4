#include "core/lda.hpp"

#include <unordered_map>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/similarity.hpp"

namespace xlt {

std::vector<std::vector<double>> lda_fit(const std::vector<std::vector<std::string>>& docs,
                                         const LdaOptions& options) {
  if (docs.empty()) fail(ErrorCode::invalid_argument, "lda: empty corpus");
  if (options.topics < 2) fail(ErrorCode::invalid_argument, "lda: need at least 2 topics");

  const std::size_t K = options.topics;
  const double alpha = options.alpha > 0.0 ? options.alpha : 50.0 / static_cast<double>(K);
  const double beta = options.beta;
  if (beta <= 0.0) fail(ErrorCode::invalid_argument, "lda: beta must be positive");

  // First-encounter term ids keep the sampler independent of hash order.
  std::unordered_map<std::string, std::size_t> term_ids;
  std::vector<std::vector<std::size_t>> word_ids(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    word_ids[d].reserve(docs[d].size());
    for (const std::string& token : docs[d]) {
      auto [it, inserted] = term_ids.emplace(token, term_ids.size());
      word_ids[d].push_back(it->second);
    }
  }
  const std::size_t V = term_ids.size();

  std::vector<std::size_t> doc_topic(docs.size() * K, 0);
  std::vector<std::size_t> topic_word(K * V, 0);
  std::vector<std::size_t> topic_total(K, 0);
  std::vector<std::vector<std::size_t>> assignment(docs.size());

  std::mt19937_64 rng(options.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    assignment[d].resize(word_ids[d].size());
    for (std::size_t i = 0; i < word_ids[d].size(); ++i) {
      std::size_t z = uniform_below(rng, K);
      assignment[d][i] = z;
      ++doc_topic[d * K + z];
      ++topic_word[z * V + word_ids[d][i]];
      ++topic_total[z];
    }
  }

  std::vector<double> weight(K);
  const double v_beta = static_cast<double>(V) * beta;
  for (std::size_t sweep = 0; sweep < options.iterations; ++sweep) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < word_ids[d].size(); ++i) {
        const std::size_t w = word_ids[d][i];
        const std::size_t old_z = assignment[d][i];
        --doc_topic[d * K + old_z];
        --topic_word[old_z * V + w];
        --topic_total[old_z];

        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          total += (static_cast<double>(doc_topic[d * K + k]) + alpha) *
                   (static_cast<double>(topic_word[k * V + w]) + beta) /
                   (static_cast<double>(topic_total[k]) + v_beta);
          weight[k] = total;
        }
        const double u = unit_real(rng) * total;
        std::size_t z = 0;
        while (z + 1 < K && weight[z] <= u) ++z;

        assignment[d][i] = z;
        ++doc_topic[d * K + z];
        ++topic_word[z * V + w];
        ++topic_total[z];
      }
    }
  }

  std::vector<std::vector<double>> theta(docs.size(), std::vector<double>(K));
  const double k_alpha = static_cast<double>(K) * alpha;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const double denom = static_cast<double>(word_ids[d].size()) + k_alpha;
    for (std::size_t k = 0; k < K; ++k) {
      theta[d][k] = (static_cast<double>(doc_topic[d * K + k]) + alpha) / denom;
    }
  }
  return theta;
}

double lda_similarity(const std::vector<double>& p, const std::vector<double>& q,
                      DistributionMetric metric) {
  if (metric == DistributionMetric::hellinger) return hellinger_similarity(p, q);
  return cosine_similarity(p, q);
}

}  // namespace xlt

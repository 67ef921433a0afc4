#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace xlt {

struct ScoredCandidate {
  std::string source_id;
  std::string target_id;
  double score = 0.0;
};

struct RankedEntry {
  std::string source_id;
  std::string target_id;
  double score = 0.0;
  bool is_true = false;
};

using RankedList = std::vector<RankedEntry>;

// Sorts by descending score. Exact ties are ordered by a seeded hash of the
// pair ids (then lexicographically), so reruns produce identical lists
// without favoring input order. Non-finite scores are rejected.
RankedList rank_candidates(std::vector<ScoredCandidate> scores,
                           const std::unordered_set<std::string>& golden_keys,
                           std::uint64_t tie_seed);

// Sum over ranks i of Precision(i)·rel(i), divided by total_true. total_true
// counts every golden link, including ones missing from `ranked` (candidates
// filtered away upstream still weigh on the denominator).
double average_precision(const RankedList& ranked, std::size_t total_true);

// Writes "source_id,target_id,score,is_true" rows after a header line.
void write_ranked_csv(const std::string& path, const RankedList& ranked);

}  // namespace xlt

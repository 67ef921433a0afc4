#include "core/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "core/artifact.hpp"
#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace xlt {

RankedList rank_candidates(std::vector<ScoredCandidate> scores,
                           const std::unordered_set<std::string>& golden_keys,
                           std::uint64_t tie_seed) {
  struct Keyed {
    ScoredCandidate candidate;
    std::uint64_t tie_hash;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(scores.size());
  for (ScoredCandidate& c : scores) {
    if (!std::isfinite(c.score)) {
      fail(ErrorCode::invalid_argument,
           "non-finite score for pair " + c.source_id + " -> " + c.target_id);
    }
    std::uint64_t h = fnv1a64(c.source_id);
    h = fnv1a64_byte(0x1f, h);
    h = fnv1a64(c.target_id, h);
    h = fnv1a64_u64(tie_seed, h);
    keyed.push_back({std::move(c), h});
  }

  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.candidate.score != b.candidate.score) {
      return a.candidate.score > b.candidate.score;
    }
    if (a.tie_hash != b.tie_hash) return a.tie_hash < b.tie_hash;
    if (a.candidate.source_id != b.candidate.source_id) {
      return a.candidate.source_id < b.candidate.source_id;
    }
    return a.candidate.target_id < b.candidate.target_id;
  });

  RankedList out;
  out.reserve(keyed.size());
  for (Keyed& k : keyed) {
    bool is_true =
        golden_keys.count(pair_key(k.candidate.source_id, k.candidate.target_id)) > 0;
    out.push_back({std::move(k.candidate.source_id), std::move(k.candidate.target_id),
                   k.candidate.score, is_true});
  }
  return out;
}

double average_precision(const RankedList& ranked, std::size_t total_true) {
  if (total_true == 0) {
    fail(ErrorCode::invalid_argument, "average precision needs at least one true link");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].is_true) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(total_true);
}

void write_ranked_csv(const std::string& path, const RankedList& ranked) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path);
  out << "source_id,target_id,score,is_true\n";
  for (const RankedEntry& e : ranked) {
    out << csv_field(e.source_id) << ',' << csv_field(e.target_id) << ','
        << format_score(e.score) << ',' << (e.is_true ? "true" : "false") << '\n';
  }
  if (!out) fail(ErrorCode::io, "failed writing " + path);
}

}  // namespace xlt

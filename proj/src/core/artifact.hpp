#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/iso8601.hpp"

namespace xlt {

enum class ArtifactKind { commit, issue };

// One commit or issue. Commits carry the message in `summary` and the change
// set in `body`; issues carry the summary and the description + discussion.
struct Artifact {
  std::string id;
  ArtifactKind kind = ArtifactKind::commit;
  std::string summary;
  std::string body;
  UnixTime created_at = 0;
  std::optional<UnixTime> closed_at;  // issues only

  std::string text() const {
    if (body.empty()) return summary;
    return summary + "\n" + body;
  }
};

struct TraceLink {
  std::string source_id;  // commit
  std::string target_id;  // issue
  bool intermingled = false;
};

// Source commits, target issues and the golden link set. Treated as
// immutable once built; the pruning operations return new datasets.
struct TraceDataset {
  std::string id;
  std::vector<Artifact> sources;  // commits
  std::vector<Artifact> targets;  // issues
  std::vector<TraceLink> golden;

  std::unordered_map<std::string, std::size_t> source_index;
  std::unordered_map<std::string, std::size_t> target_index;

  void rebuild_index() {
    source_index.clear();
    target_index.clear();
    for (std::size_t i = 0; i < sources.size(); ++i) source_index[sources[i].id] = i;
    for (std::size_t i = 0; i < targets.size(); ++i) target_index[targets[i].id] = i;
  }

  // Golden membership keyed as pair_key(source, target).
  std::unordered_set<std::string> golden_keys() const {
    std::unordered_set<std::string> keys;
    keys.reserve(golden.size());
    for (const TraceLink& l : golden) keys.insert(l.source_id + '\x1f' + l.target_id);
    return keys;
  }
};

inline std::string pair_key(const std::string& source_id, const std::string& target_id) {
  return source_id + '\x1f' + target_id;
}

}  // namespace xlt

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "core/artifact.hpp"

namespace xlt {

// Corpus files are UTF-8 JSON lines, one artifact per line:
//   {"id": "...", "kind": "commit"|"issue", "summary": "...", "body": "...",
//    "created_at": "2019-08-29T13:54:29Z", "closed_at": "..."?}
// An optional link file holds one {"source_id": ..., "target_id": ...,
// "intermingled": bool?} per line.

TraceDataset load_corpus(const std::string& path);

// Loads golden links into an existing dataset; every endpoint must exist.
void load_links(TraceDataset& dataset, const std::string& path);

void save_corpus(const TraceDataset& dataset, const std::string& path);
void save_links(const TraceDataset& dataset, const std::string& path);

struct LinkExtractionReport {
  std::size_t links = 0;             // distinct links added
  std::size_t skipped_references = 0;  // references to unknown issues
};

// Scans commit messages for issue references (default pattern "#(\d+)"),
// one link per distinct (commit, referenced issue). References that do not
// resolve to a known issue are skipped and counted.
LinkExtractionReport extract_golden_links(TraceDataset& dataset,
                                          const std::string& pattern = "#(\\d+)");

// Keeps exactly the artifacts that appear in at least one golden link.
TraceDataset prune_to_linked(const TraceDataset& dataset);

// Keeps a link (and both endpoints) iff at least one endpoint contains a
// foreign-script span; retained links are flagged intermingled.
TraceDataset prune_to_intermingled(const TraceDataset& dataset);

// All (source index, target index) pairs with
// issue.created_at < commit.created_at < issue.closed_at
// (a missing closed_at is an open issue, upper bound +infinity).
std::vector<std::pair<std::size_t, std::size_t>> time_filter_candidates(
    const TraceDataset& dataset);

// Foreign vocabulary types / total vocabulary types over all artifact text.
// Counted on plain tokens (no bigrams, no stopword removal).
double foreign_term_ratio(const TraceDataset& dataset);

}  // namespace xlt

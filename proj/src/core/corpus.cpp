#include "core/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <unordered_set>

#include "json.hpp"

#include "core/error.hpp"
#include "core/script.hpp"
#include "core/tokenizer.hpp"

namespace xlt {

using nlohmann::json;

namespace {

[[noreturn]] void record_error(const std::string& path, std::size_t line,
                               const std::string& what) {
  fail(ErrorCode::parse, path + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& rec, const char* field, const std::string& path,
                           std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) {
    record_error(path, line, std::string("missing field '") + field + "'");
  }
  if (!it->is_string()) {
    record_error(path, line, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

TraceDataset load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open corpus file: " + path);

  TraceDataset ds;
  ds.id = std::filesystem::path(path).stem().string();

  std::unordered_set<std::string> commit_ids, issue_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      record_error(path, line_no, "malformed JSON record");
    }

    Artifact a;
    a.id = require_string(rec, "id", path, line_no);
    if (a.id.empty()) record_error(path, line_no, "empty artifact id");

    std::string kind = require_string(rec, "kind", path, line_no);
    if (kind == "commit") {
      a.kind = ArtifactKind::commit;
    } else if (kind == "issue") {
      a.kind = ArtifactKind::issue;
    } else {
      record_error(path, line_no, "unknown kind '" + kind + "' (id=" + a.id + ")");
    }

    a.summary = require_string(rec, "summary", path, line_no);
    if (auto it = rec.find("body"); it != rec.end() && !it->is_null()) {
      if (!it->is_string()) record_error(path, line_no, "field 'body' must be a string");
      a.body = it->get<std::string>();
    }

    std::string created = require_string(rec, "created_at", path, line_no);
    try {
      a.created_at = parse_iso8601(created);
    } catch (const Error& e) {
      record_error(path, line_no, std::string(e.what()) + " (id=" + a.id + ")");
    }

    if (auto it = rec.find("closed_at"); it != rec.end() && !it->is_null()) {
      if (!it->is_string()) record_error(path, line_no, "field 'closed_at' must be a string");
      UnixTime closed;
      try {
        closed = parse_iso8601(it->get<std::string>());
      } catch (const Error& e) {
        record_error(path, line_no, std::string(e.what()) + " (id=" + a.id + ")");
      }
      if (a.kind == ArtifactKind::commit) {
        record_error(path, line_no, "commit must not carry closed_at (id=" + a.id + ")");
      }
      if (closed < a.created_at) {
        record_error(path, line_no, "closed_at before created_at (id=" + a.id + ")");
      }
      a.closed_at = closed;
    }

    auto& ids = a.kind == ArtifactKind::commit ? commit_ids : issue_ids;
    if (!ids.insert(a.id).second) {
      record_error(path, line_no, "duplicate " + kind + " id '" + a.id + "'");
    }
    (a.kind == ArtifactKind::commit ? ds.sources : ds.targets).push_back(std::move(a));
  }

  ds.rebuild_index();
  return ds;
}

void load_links(TraceDataset& dataset, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open link file: " + path);

  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      record_error(path, line_no, "malformed JSON record");
    }
    TraceLink l;
    l.source_id = require_string(rec, "source_id", path, line_no);
    l.target_id = require_string(rec, "target_id", path, line_no);
    if (auto it = rec.find("intermingled"); it != rec.end() && it->is_boolean()) {
      l.intermingled = it->get<bool>();
    }
    if (!dataset.source_index.count(l.source_id)) {
      record_error(path, line_no, "link references unknown commit '" + l.source_id + "'");
    }
    if (!dataset.target_index.count(l.target_id)) {
      record_error(path, line_no, "link references unknown issue '" + l.target_id + "'");
    }
    if (!seen.insert(l.source_id + '\x1f' + l.target_id).second) {
      record_error(path, line_no,
                   "duplicate link (" + l.source_id + ", " + l.target_id + ")");
    }
    dataset.golden.push_back(std::move(l));
  }
}

namespace {

json artifact_to_json(const Artifact& a) {
  json rec;
  rec["id"] = a.id;
  rec["kind"] = a.kind == ArtifactKind::commit ? "commit" : "issue";
  rec["summary"] = a.summary;
  rec["body"] = a.body;
  rec["created_at"] = format_iso8601(a.created_at);
  if (a.closed_at) rec["closed_at"] = format_iso8601(*a.closed_at);
  return rec;
}

}  // namespace

void save_corpus(const TraceDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write corpus file: " + path);
  for (const Artifact& a : dataset.sources) out << artifact_to_json(a).dump() << '\n';
  for (const Artifact& a : dataset.targets) out << artifact_to_json(a).dump() << '\n';
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

void save_links(const TraceDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write link file: " + path);
  for (const TraceLink& l : dataset.golden) {
    json rec;
    rec["source_id"] = l.source_id;
    rec["target_id"] = l.target_id;
    rec["intermingled"] = l.intermingled;
    out << rec.dump() << '\n';
  }
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

LinkExtractionReport extract_golden_links(TraceDataset& dataset, const std::string& pattern) {
  std::regex re;
  try {
    re = std::regex(pattern);
  } catch (const std::regex_error& e) {
    fail(ErrorCode::invalid_argument,
         "invalid issue reference pattern '" + pattern + "': " + e.what());
  }

  LinkExtractionReport report;
  std::unordered_set<std::string> seen;
  for (const TraceLink& l : dataset.golden) seen.insert(l.source_id + '\x1f' + l.target_id);

  for (const Artifact& commit : dataset.sources) {
    auto begin = std::sregex_iterator(commit.summary.begin(), commit.summary.end(), re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      std::string ref = m.size() > 1 && m[1].matched ? m[1].str() : m[0].str();
      if (!dataset.target_index.count(ref)) {
        ++report.skipped_references;
        continue;
      }
      if (seen.insert(commit.id + '\x1f' + ref).second) {
        dataset.golden.push_back({commit.id, ref, false});
        ++report.links;
      }
    }
  }
  return report;
}

TraceDataset prune_to_linked(const TraceDataset& dataset) {
  if (dataset.golden.empty()) {
    fail(ErrorCode::invalid_argument, "cannot prune: golden link set is empty");
  }
  std::unordered_set<std::string> keep_sources, keep_targets;
  for (const TraceLink& l : dataset.golden) {
    keep_sources.insert(l.source_id);
    keep_targets.insert(l.target_id);
  }

  TraceDataset out;
  out.id = dataset.id;
  out.golden = dataset.golden;
  for (const Artifact& a : dataset.sources) {
    if (keep_sources.count(a.id)) out.sources.push_back(a);
  }
  for (const Artifact& a : dataset.targets) {
    if (keep_targets.count(a.id)) out.targets.push_back(a);
  }
  out.rebuild_index();
  return out;
}

TraceDataset prune_to_intermingled(const TraceDataset& dataset) {
  // An artifact is intermingled if any of its text holds a foreign span.
  auto is_intermingled = [&](const Artifact& a) {
    return has_foreign_letters(a.summary) || has_foreign_letters(a.body);
  };

  std::unordered_set<std::string> keep_sources, keep_targets;
  std::vector<TraceLink> kept_links;
  for (const TraceLink& l : dataset.golden) {
    auto s = dataset.source_index.find(l.source_id);
    auto t = dataset.target_index.find(l.target_id);
    if (s == dataset.source_index.end() || t == dataset.target_index.end()) continue;
    if (is_intermingled(dataset.sources[s->second]) ||
        is_intermingled(dataset.targets[t->second])) {
      TraceLink kept = l;
      kept.intermingled = true;
      kept_links.push_back(kept);
      keep_sources.insert(l.source_id);
      keep_targets.insert(l.target_id);
    }
  }

  TraceDataset out;
  out.id = dataset.id;
  out.golden = std::move(kept_links);
  for (const Artifact& a : dataset.sources) {
    if (keep_sources.count(a.id)) out.sources.push_back(a);
  }
  for (const Artifact& a : dataset.targets) {
    if (keep_targets.count(a.id)) out.targets.push_back(a);
  }
  out.rebuild_index();
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> time_filter_candidates(
    const TraceDataset& dataset) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < dataset.sources.size(); ++s) {
    const UnixTime commit_time = dataset.sources[s].created_at;
    for (std::size_t t = 0; t < dataset.targets.size(); ++t) {
      const Artifact& issue = dataset.targets[t];
      if (issue.created_at < commit_time &&
          (!issue.closed_at || commit_time < *issue.closed_at)) {
        pairs.emplace_back(s, t);
      }
    }
  }
  return pairs;
}

double foreign_term_ratio(const TraceDataset& dataset) {
  TokenizerOptions opts;
  opts.cjk_bigrams = false;
  opts.remove_stopwords = false;
  opts.stem = false;

  std::unordered_set<std::string> all, foreign;
  auto scan = [&](const Artifact& a) {
    for (const Token& tok : tokenize(a.text(), opts)) {
      all.insert(tok.surface);
      if (tok.script != Script::latin) foreign.insert(tok.surface);
    }
  };
  for (const Artifact& a : dataset.sources) scan(a);
  for (const Artifact& a : dataset.targets) scan(a);

  if (all.empty()) fail(ErrorCode::invalid_argument, "empty corpus: no vocabulary");
  return static_cast<double>(foreign.size()) / static_cast<double>(all.size());
}

}  // namespace xlt

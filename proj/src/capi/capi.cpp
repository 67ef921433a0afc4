#include "xltrace/xltrace.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "core/config.hpp"
#include "core/corpus.hpp"
#include "core/embedding.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"

using namespace xlt;

struct xlt_dataset {
  TraceDataset dataset;
};

struct xlt_embedding {
  EmbeddingTable table;
};

struct xlt_config {
  RunConfig config;
};

namespace {

thread_local std::string g_last_error;

xlt_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return XLT_ERR_INVALID_ARGUMENT;
    case ErrorCode::io:
      return XLT_ERR_IO;
    case ErrorCode::parse:
      return XLT_ERR_PARSE;
    case ErrorCode::config:
      return XLT_ERR_CONFIG;
    case ErrorCode::translation:
      return XLT_ERR_TRANSLATION;
    case ErrorCode::unsupported:
      return XLT_ERR_UNSUPPORTED;
    case ErrorCode::internal:
      return XLT_ERR_INTERNAL;
  }
  return XLT_ERR_INTERNAL;
}

xlt_status fail_status(xlt_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes + the thread-local
// message.
template <typename Fn>
xlt_status guarded(Fn&& fn) {
  try {
    fn();
    return XLT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return XLT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return XLT_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

xlt_status run_command(const xlt_config* config, char** summary_json,
                       std::string (*command)(const RunConfig&)) {
  if (!config || !summary_json) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  *summary_json = nullptr;
  return guarded([&] {
    std::string summary = command(config->config);
    *summary_json = copy_string(summary);
    if (!*summary_json) fail(ErrorCode::internal, "out of memory");
  });
}

}  // namespace

extern "C" {

const char* xlt_status_name(xlt_status status) {
  switch (status) {
    case XLT_OK:
      return "ok";
    case XLT_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case XLT_ERR_IO:
      return "io";
    case XLT_ERR_PARSE:
      return "parse";
    case XLT_ERR_CONFIG:
      return "config";
    case XLT_ERR_TRANSLATION:
      return "translation";
    case XLT_ERR_UNSUPPORTED:
      return "unsupported";
    case XLT_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* xlt_last_error(void) { return g_last_error.c_str(); }

const char* xlt_version(void) { return "0.1.0"; }

void xlt_string_free(char* text) { std::free(text); }

xlt_status xlt_dataset_load(const char* corpus_path, xlt_dataset** out) {
  if (!corpus_path || !out) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = new xlt_dataset{load_corpus(corpus_path)};
    *out = handle;
  });
}

xlt_status xlt_dataset_load_links(xlt_dataset* dataset, const char* links_path) {
  if (!dataset || !links_path) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { load_links(dataset->dataset, links_path); });
}

xlt_status xlt_dataset_extract_links(xlt_dataset* dataset, const char* pattern,
                                     size_t* links_out, size_t* skipped_out) {
  if (!dataset) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null dataset");
  return guarded([&] {
    LinkExtractionReport report =
        pattern ? extract_golden_links(dataset->dataset, pattern)
                : extract_golden_links(dataset->dataset);
    if (links_out) *links_out = report.links;
    if (skipped_out) *skipped_out = report.skipped_references;
  });
}

xlt_status xlt_dataset_prune_linked(xlt_dataset* dataset) {
  if (!dataset) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null dataset");
  return guarded([&] { dataset->dataset = prune_to_linked(dataset->dataset); });
}

xlt_status xlt_dataset_prune_intermingled(xlt_dataset* dataset) {
  if (!dataset) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null dataset");
  return guarded([&] { dataset->dataset = prune_to_intermingled(dataset->dataset); });
}

xlt_status xlt_dataset_counts(const xlt_dataset* dataset, size_t* commits,
                              size_t* issues, size_t* links) {
  if (!dataset) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null dataset");
  if (commits) *commits = dataset->dataset.sources.size();
  if (issues) *issues = dataset->dataset.targets.size();
  if (links) *links = dataset->dataset.golden.size();
  return XLT_OK;
}

xlt_status xlt_dataset_foreign_ratio(const xlt_dataset* dataset, double* ratio) {
  if (!dataset || !ratio) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { *ratio = foreign_term_ratio(dataset->dataset); });
}

xlt_status xlt_dataset_candidate_count(const xlt_dataset* dataset, size_t* count) {
  if (!dataset || !count) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { *count = time_filter_candidates(dataset->dataset).size(); });
}

xlt_status xlt_dataset_save(const xlt_dataset* dataset, const char* corpus_path,
                            const char* links_path) {
  if (!dataset) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null dataset");
  return guarded([&] {
    if (corpus_path) save_corpus(dataset->dataset, corpus_path);
    if (links_path) save_links(dataset->dataset, links_path);
  });
}

void xlt_dataset_free(xlt_dataset* dataset) { delete dataset; }

xlt_status xlt_embedding_load(const char* path, size_t limit, xlt_embedding** out) {
  if (!path || !out) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new xlt_embedding{EmbeddingTable::load(path, limit)}; });
}

xlt_status xlt_embedding_normalize(xlt_embedding* table) {
  if (!table) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null table");
  return guarded([&] { table->table = table->table.l2_normalized(); });
}

xlt_status xlt_embedding_sample(const xlt_embedding* table, size_t size,
                                uint64_t seed, xlt_embedding** out) {
  if (!table || !out) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new xlt_embedding{table->table.sample(size, seed)}; });
}

xlt_status xlt_embedding_info(const xlt_embedding* table, size_t* rows,
                              size_t* dimension, int* normalized) {
  if (!table) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null table");
  if (rows) *rows = table->table.size();
  if (dimension) *dimension = table->table.dimension();
  if (normalized) *normalized = table->table.normalized() ? 1 : 0;
  return XLT_OK;
}

xlt_status xlt_embedding_similarity(const xlt_embedding* table, const char* a,
                                    const char* b, double* out) {
  if (!table || !a || !b || !out) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { *out = table->table.term_similarity(a, b); });
}

void xlt_embedding_free(xlt_embedding* table) { delete table; }

xlt_status xlt_config_load(const char* path, xlt_config** out) {
  if (!path || !out) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new xlt_config{load_config(path)}; });
}

xlt_status xlt_config_create(xlt_config** out) {
  if (!out) return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new xlt_config{}; });
}

xlt_status xlt_config_set(xlt_config* config, const char* key, const char* value) {
  if (!config || !key || !value) {
    return fail_status(XLT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { set_config_value(config->config, key, value); });
}

void xlt_config_free(xlt_config* config) { delete config; }

xlt_status xlt_cmd_ingest(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_ingest);
}

xlt_status xlt_cmd_prune(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_prune);
}

xlt_status xlt_cmd_translate(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_translate);
}

xlt_status xlt_cmd_trace(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_trace);
}

xlt_status xlt_cmd_eval(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_eval);
}

xlt_status xlt_cmd_compare(const xlt_config* config, char** summary_json) {
  return run_command(config, summary_json, cmd_compare);
}

}  // extern "C"

#include "core/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "core/corpus.hpp"
#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/model.hpp"
#include "core/ranking.hpp"
#include "core/stats.hpp"
#include "core/translator.hpp"

namespace xlt {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void validate_or_fail(const RunConfig& config, Command command) {
  std::vector<std::string> problems = validate_config(config, command);
  if (problems.empty()) return;
  std::string joined = "invalid configuration:";
  for (const std::string& p : problems) joined += "\n  " + p;
  fail(ErrorCode::config, joined);
}

std::string dataset_id_of(const RunConfig& config) {
  if (!config.dataset_id.empty()) return config.dataset_id;
  return fs::path(config.corpus).stem().string();
}

std::string out_path(const RunConfig& config, const std::string& file) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / file).string();
}

struct LoadedDataset {
  TraceDataset dataset;
  LinkExtractionReport extraction;
};

LoadedDataset load_dataset(const RunConfig& config) {
  LoadedDataset loaded;
  loaded.dataset = load_corpus(config.corpus);
  loaded.dataset.id = dataset_id_of(config);
  if (!config.links.empty()) load_links(loaded.dataset, config.links);
  loaded.extraction = extract_golden_links(loaded.dataset, config.link_pattern);
  return loaded;
}

TraceDataset apply_pruning(TraceDataset dataset, const RunConfig& config) {
  if (config.prune_linked) dataset = prune_to_linked(dataset);
  if (config.prune_intermingled) dataset = prune_to_intermingled(dataset);
  return dataset;
}

std::unique_ptr<Translator> make_translator(const RunConfig& config) {
  if (config.translate_mode == "identity") {
    return std::make_unique<IdentityTranslator>();
  }
  if (config.translate_mode == "glossary") {
    return std::make_unique<GlossaryTranslator>(
        GlossaryTranslator::from_file(config.glossary));
  }
  if (config.translate_mode == "http") {
    HttpTranslator::Options options;
    options.endpoint = config.endpoint;
    if (const char* key = std::getenv(config.api_key_env.c_str())) {
      options.api_key = key;
    }
    options.retries = static_cast<int>(config.retries);
    options.backoff_ms = static_cast<int>(config.backoff_ms);
    return std::make_unique<HttpTranslator>(std::move(options));
  }
  fail(ErrorCode::config, "no translator for translate.mode=" + config.translate_mode);
}

ModelParams model_params_of(const RunConfig& config,
                            const std::unordered_set<std::string>* stopwords) {
  ModelParams params;
  params.tokenizer.cjk_bigrams = config.cjk_bigrams;
  params.tokenizer.remove_stopwords = config.remove_stopwords;
  params.tokenizer.stem = config.stem;
  params.tokenizer.stopwords = stopwords;
  params.tfidf =
      config.tfidf_variant == "raw" ? TfidfVariant::raw : TfidfVariant::smoothed;
  params.lsi_k = config.lsi_k;
  params.lda.topics = config.lda_topics;
  params.lda.alpha = config.lda_alpha;
  params.lda.beta = config.lda_beta;
  params.lda.iterations = config.lda_iterations;
  params.lda.seed = config.seed;
  params.lda_metric = config.lda_metric == "hellinger" ? DistributionMetric::hellinger
                                                       : DistributionMetric::cosine;
  params.gvsm.mode = config.gvsm_mode == "eq4" ? GvsmMode::eq4 : GvsmMode::eq7;
  params.gvsm.clamp_negative = config.gvsm_clamp;
  params.jobs = config.jobs;
  return params;
}

// Row count from a word-vector file header, without loading the rows.
std::size_t vector_row_count(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open vector file: " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::parse, path + ":1: empty vector file");
  std::size_t count = 0;
  auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), count);
  if (ec != std::errc() || ptr == line.data()) {
    fail(ErrorCode::parse, path + ":1: header must be '<count> <dimension>'");
  }
  return count;
}

double round1(double value) {
  return std::llround(value * 10.0) / 10.0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::io, "failed writing " + path);
}

// Everything trace and eval share: prune, translate once if needed, score
// and rank each variant, write the ranked CSVs.
struct TraceRun {
  std::string dataset_id;
  std::size_t candidates = 0;
  std::size_t total_links = 0;
  std::vector<std::string> warnings;
  struct VariantRun {
    Variant variant;
    RankedList ranked;
    std::string csv_path;
    long long runtime_ms = 0;
  };
  std::vector<VariantRun> variants;
};

TraceRun run_trace(const RunConfig& config) {
  TraceRun run;
  TraceDataset dataset = apply_pruning(load_dataset(config).dataset, config);
  run.dataset_id = dataset.id;
  run.total_links = dataset.golden.size();
  run.candidates = time_filter_candidates(dataset).size();

  std::vector<Variant> variants;
  variants.reserve(config.variants.size());
  bool needs_translation = false;
  for (const std::string& name : config.variants) {
    Variant v = parse_variant(name);
    variants.push_back(v);
    if (variant_translated(v)) needs_translation = true;
  }

  TraceDataset translated;
  if (needs_translation) {
    std::unique_ptr<Translator> translator = make_translator(config);
    std::unique_ptr<TranslationCache> cache;
    if (!config.cache.empty()) {
      cache = std::make_unique<TranslationCache>(config.cache);
    }
    translated = translate_corpus(dataset, *translator, cache.get(),
                                  config.target_language,
                                  static_cast<int>(config.jobs));
  }

  std::unordered_set<std::string> stopword_storage;
  const std::unordered_set<std::string>* stopwords = nullptr;
  if (!config.stopword_file.empty()) {
    stopword_storage = load_stopwords(config.stopword_file);
    stopwords = &stopword_storage;
  }
  const ModelParams params = model_params_of(config, stopwords);

  // Tables are loaded once and shared between variants that need them.
  std::unique_ptr<EmbeddingTable> cross, full_mono, sampled_mono;
  auto table_for = [&](Variant v) -> const EmbeddingTable* {
    switch (variant_table(v)) {
      case TableKind::none:
        return nullptr;
      case TableKind::cross:
        if (!cross) {
          cross = std::make_unique<EmbeddingTable>(
              EmbeddingTable::load(config.cross_vectors).l2_normalized());
        }
        return cross.get();
      case TableKind::full_mono:
        if (!full_mono) {
          full_mono = std::make_unique<EmbeddingTable>(
              EmbeddingTable::load(config.mono_vectors).l2_normalized());
        }
        return full_mono.get();
      case TableKind::sampled_mono: {
        if (!sampled_mono) {
          std::size_t size = config.sample_size;
          if (size == 0) size = vector_row_count(config.cross_vectors);
          std::uint64_t seed =
              config.sample_seed != 0 ? config.sample_seed : config.seed;
          sampled_mono = std::make_unique<EmbeddingTable>(
              EmbeddingTable::load(config.mono_vectors).sample(size, seed).l2_normalized());
        }
        return sampled_mono.get();
      }
    }
    return nullptr;
  };

  const std::unordered_set<std::string> raw_golden = dataset.golden_keys();
  for (Variant v : variants) {
    const TraceDataset& input = variant_translated(v) ? translated : dataset;
    auto start = std::chrono::steady_clock::now();
    std::vector<ScoredCandidate> scores =
        run_model(input, v, params, table_for(v), &run.warnings);
    RankedList ranked = rank_candidates(std::move(scores), raw_golden, config.seed);
    auto end = std::chrono::steady_clock::now();

    TraceRun::VariantRun vr;
    vr.variant = v;
    vr.csv_path = out_path(
        config, run.dataset_id + "." + variant_file_name(v) + ".ranked.csv");
    write_ranked_csv(vr.csv_path, ranked);
    vr.ranked = std::move(ranked);
    vr.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    run.variants.push_back(std::move(vr));
  }
  return run;
}

}  // namespace

std::string cmd_ingest(const RunConfig& config) {
  validate_or_fail(config, Command::ingest);
  LoadedDataset loaded = load_dataset(config);

  std::string links_path =
      out_path(config, loaded.dataset.id + ".links.jsonl");
  save_links(loaded.dataset, links_path);

  json summary{{"dataset", loaded.dataset.id},
               {"issues", loaded.dataset.targets.size()},
               {"commits", loaded.dataset.sources.size()},
               {"links", loaded.dataset.golden.size()},
               {"skipped_references", loaded.extraction.skipped_references},
               {"links_file", links_path}};
  return dump(summary);
}

std::string cmd_prune(const RunConfig& config) {
  validate_or_fail(config, Command::prune);
  TraceDataset pruned = apply_pruning(load_dataset(config).dataset, config);

  std::string corpus_path = out_path(config, pruned.id + ".pruned.jsonl");
  std::string links_path = out_path(config, pruned.id + ".pruned.links.jsonl");
  save_corpus(pruned, corpus_path);
  save_links(pruned, links_path);
  double ratio = foreign_term_ratio(pruned);

  json summary{{"dataset", pruned.id},
               {"issues", pruned.targets.size()},
               {"commits", pruned.sources.size()},
               {"links", pruned.golden.size()},
               {"foreign_term_ratio", ratio},
               {"foreign_term_pct", round1(ratio * 100.0)},
               {"corpus_file", corpus_path},
               {"links_file", links_path}};
  return dump(summary);
}

std::string cmd_translate(const RunConfig& config) {
  validate_or_fail(config, Command::translate);
  TraceDataset dataset = apply_pruning(load_dataset(config).dataset, config);

  std::unique_ptr<Translator> translator = make_translator(config);
  std::unique_ptr<TranslationCache> cache;
  if (!config.cache.empty()) cache = std::make_unique<TranslationCache>(config.cache);

  TranslationStats stats;
  TraceDataset translated =
      translate_corpus(dataset, *translator, cache.get(), config.target_language,
                       static_cast<int>(config.jobs), &stats);

  std::string corpus_path = out_path(config, dataset.id + ".translated.jsonl");
  std::string links_path = out_path(config, dataset.id + ".translated.links.jsonl");
  save_corpus(translated, corpus_path);
  save_links(translated, links_path);

  json summary{{"dataset", dataset.id},
               {"translator", translator->name()},
               {"sentences", stats.sentences},
               {"bilingual_sentences", stats.bilingual},
               {"translator_calls", stats.translator_calls},
               {"cache_hits", stats.cache_hits},
               {"corpus_file", corpus_path},
               {"links_file", links_path}};
  return dump(summary);
}

std::string cmd_trace(const RunConfig& config) {
  validate_or_fail(config, Command::trace);
  TraceRun run = run_trace(config);

  json variants = json::array();
  for (const TraceRun::VariantRun& vr : run.variants) {
    variants.push_back(json{{"variant", variant_name(vr.variant)},
                            {"file", vr.csv_path},
                            {"candidates", vr.ranked.size()},
                            {"runtime_ms", vr.runtime_ms}});
  }
  json summary{{"dataset", run.dataset_id},
               {"candidates", run.candidates},
               {"total_links", run.total_links},
               {"variants", variants},
               {"warnings", run.warnings}};
  std::string text = dump(summary);
  write_text(out_path(config, "trace_summary.json"), text);
  return text;
}

std::string cmd_eval(const RunConfig& config) {
  validate_or_fail(config, Command::eval);
  TraceRun run = run_trace(config);

  json results = json::array();
  std::string csv = "dataset,variant,ap,n,n_true,runtime_ms\n";
  for (const TraceRun::VariantRun& vr : run.variants) {
    double ap = average_precision(vr.ranked, run.total_links);
    std::size_t n_true = 0;
    for (const RankedEntry& e : vr.ranked) n_true += e.is_true ? 1 : 0;
    results.push_back(json{{"variant", variant_name(vr.variant)},
                           {"ap", ap},
                           {"n", vr.ranked.size()},
                           {"n_true", n_true},
                           {"runtime_ms", vr.runtime_ms},
                           {"file", vr.csv_path}});
    csv += csv_field(run.dataset_id) + ',' + csv_field(variant_name(vr.variant)) +
           ',' + format_score(ap) + ',' + std::to_string(vr.ranked.size()) + ',' +
           std::to_string(n_true) + ',' + std::to_string(vr.runtime_ms) + '\n';
  }
  json summary{{"dataset", run.dataset_id},
               {"candidates", run.candidates},
               {"total_links", run.total_links},
               {"results", results},
               {"warnings", run.warnings}};
  std::string text = dump(summary);
  write_text(out_path(config, "eval_summary.json"), text);
  write_text(out_path(config, "eval_summary.csv"), csv);
  return text;
}

std::string cmd_compare(const RunConfig& config) {
  validate_or_fail(config, Command::compare);

  // (dataset, variant) -> ap, in first-encounter order.
  std::vector<std::string> datasets, variants;
  std::unordered_map<std::string, double> cells;
  auto add = [&](const std::string& dataset, const std::string& variant, double ap) {
    if (std::find(datasets.begin(), datasets.end(), dataset) == datasets.end()) {
      datasets.push_back(dataset);
    }
    if (std::find(variants.begin(), variants.end(), variant) == variants.end()) {
      variants.push_back(variant);
    }
    cells[dataset + '\x1f' + variant] = ap;
  };

  for (const std::string& path : config.compare_inputs) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      fail(ErrorCode::parse, path + ": " + e.what());
    }
    if (!j.contains("dataset") || !j.contains("results") || !j["results"].is_array()) {
      fail(ErrorCode::parse, path + ": expected an eval summary with dataset and results");
    }
    std::string dataset = j["dataset"].get<std::string>();
    for (const json& r : j["results"]) {
      if (!r.contains("variant") || !r.contains("ap")) {
        fail(ErrorCode::parse, path + ": result rows need variant and ap");
      }
      add(dataset, r["variant"].get<std::string>(), r["ap"].get<double>());
    }
  }

  if (!config.compare_table.empty()) {
    std::ifstream in(config.compare_table);
    if (!in) fail(ErrorCode::io, "cannot open " + config.compare_table);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line_no == 1 && line == "dataset,variant,ap") continue;
      std::size_t c1 = line.find(',');
      std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
      if (c2 == std::string::npos) {
        fail(ErrorCode::parse, config.compare_table + ":" + std::to_string(line_no) +
                                   ": expected dataset,variant,ap");
      }
      std::string ap_text = line.substr(c2 + 1);
      try {
        std::size_t used = 0;
        double ap = std::stod(ap_text, &used);
        if (used != ap_text.size()) throw std::invalid_argument(ap_text);
        add(line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1), ap);
      } catch (const std::exception&) {
        fail(ErrorCode::parse, config.compare_table + ":" + std::to_string(line_no) +
                                   ": bad ap value '" + ap_text + "'");
      }
    }
  }

  ApTable table;
  table.datasets = datasets;
  table.variants = variants;
  std::vector<std::string> missing;
  for (const std::string& variant : variants) {
    std::vector<double> row;
    row.reserve(datasets.size());
    for (const std::string& dataset : datasets) {
      auto it = cells.find(dataset + '\x1f' + variant);
      if (it == cells.end()) {
        missing.push_back(variant + " on " + dataset);
      } else {
        row.push_back(it->second);
      }
    }
    table.ap.push_back(std::move(row));
  }
  if (!missing.empty()) {
    std::string msg = "mismatched dataset coverage; missing:";
    for (const std::string& m : missing) msg += "\n  " + m;
    fail(ErrorCode::invalid_argument, msg);
  }

  std::vector<PairComparison> rows = compare_models(table);
  std::string csv_path = out_path(config, "comparison.csv");
  write_comparison_csv(csv_path, rows);

  json pairs = json::array();
  for (const PairComparison& row : rows) {
    json entry{{"variant_a", row.variant_a},
               {"variant_b", row.variant_b},
               {"status", row.status}};
    if (row.status == "ok") {
      entry["w"] = row.w;
      entry["p"] = row.p;
      entry["d"] = row.d;
      entry["significant"] = row.significant;
    }
    pairs.push_back(std::move(entry));
  }
  json summary{{"datasets", datasets},
               {"variants", variants},
               {"pairs", pairs},
               {"file", csv_path}};
  return dump(summary);
}

}  // namespace xlt

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xlt {

// Declarative run configuration. File format: one `key = value` per line,
// '#' starts a comment, blank lines ignored. Lists are comma-separated.
// Booleans accept true/false/1/0. Keys:
//
//   dataset_id                 label used in output file names (default:
//                              corpus file stem)
//   corpus                     artifact JSONL path
//   links                      optional golden-link JSONL path
//   link_pattern               issue-reference regex (default "#(\d+)";
//                              group 1, else the whole match, must equal a
//                              target issue id)
//   out_dir                    output directory (default ".")
//   seed                       master seed: tie-breaking, LDA, sampling
//                              (default 42)
//   jobs                       worker threads (default 1)
//   prune.linked               keep only artifacts in golden links (default true)
//   prune.intermingled         keep only links with a bilingual endpoint
//                              (default true)
//   tokenize.cjk_bigrams       emit CJK character bigrams (default true)
//   tokenize.stopwords         drop English stopwords (default true)
//   tokenize.stopword_file     override the built-in stopword list
//   tokenize.stem              light suffix stripping (default false)
//   tfidf.variant              smoothed | raw (default smoothed)
//   translate.mode             none | identity | glossary | http (default none)
//   translate.glossary         glossary JSON path (mode glossary)
//   translate.cache            translation cache JSONL path (optional)
//   translate.target           target language code (default "en")
//   translate.endpoint         HTTP endpoint (mode http)
//   translate.api_key_env      env var holding the API key
//                              (default XLTRACE_API_KEY)
//   translate.retries          HTTP retry count (default 3)
//   translate.backoff_ms       first retry delay, doubled per retry
//                              (default 250)
//   embeddings.mono            mono-lingual word-vector path (WEG family)
//   embeddings.cross           cross-lingual word-vector path (CLG)
//   embeddings.sample_size     WEG sample size; 0 = match the cross table's
//                              row count (default 0)
//   embeddings.sample_seed     sampling seed; 0 = master seed (default 0)
//   models.variants            list of variants to run (default VSM)
//   models.lsi_k               latent dimensions; 0 = min(200, rank)
//   models.lda_topics          topic count (default 60)
//   models.lda_alpha           document prior; 0 = 50/topics (default 0)
//   models.lda_beta            topic prior (default 0.01)
//   models.lda_iterations      Gibbs sweeps (default 1000)
//   models.lda_metric          cosine | hellinger (default cosine)
//   models.gvsm_mode           eq7 | eq4 (default eq7)
//   models.gvsm_clamp          clamp negative numerators to 0 (default true)
//   compare.inputs             list of eval summary JSON files
//   compare.table              CSV of dataset,variant,ap rows (alternative
//                              comparison input)
struct RunConfig {
  std::string dataset_id;
  std::string corpus;
  std::string links;
  std::string link_pattern = "#(\\d+)";
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::size_t jobs = 1;

  bool prune_linked = true;
  bool prune_intermingled = true;

  bool cjk_bigrams = true;
  bool remove_stopwords = true;
  std::string stopword_file;
  bool stem = false;
  std::string tfidf_variant = "smoothed";

  std::string translate_mode = "none";
  std::string glossary;
  std::string cache;
  std::string target_language = "en";
  std::string endpoint;
  std::string api_key_env = "XLTRACE_API_KEY";
  std::size_t retries = 3;
  std::size_t backoff_ms = 250;

  std::string mono_vectors;
  std::string cross_vectors;
  std::size_t sample_size = 0;
  std::uint64_t sample_seed = 0;

  std::vector<std::string> variants = {"VSM"};
  std::size_t lsi_k = 0;
  std::size_t lda_topics = 60;
  double lda_alpha = 0.0;
  double lda_beta = 0.01;
  std::size_t lda_iterations = 1000;
  std::string lda_metric = "cosine";
  std::string gvsm_mode = "eq7";
  bool gvsm_clamp = true;

  std::vector<std::string> compare_inputs;
  std::string compare_table;
};

// Loads a config file, reporting every malformed line and unknown key in one
// error rather than stopping at the first.
RunConfig load_config(const std::string& path);

// Applies a single `key=value` override (the CLI's --set flag).
void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value);

enum class Command { ingest, prune, translate, trace, eval, compare };

// Every problem that would stop the given command, empty when runnable.
// Referenced input paths are checked for existence here.
std::vector<std::string> validate_config(const RunConfig& config, Command command);

}  // namespace xlt

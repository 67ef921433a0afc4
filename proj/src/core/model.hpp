#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/artifact.hpp"
#include "core/embedding.hpp"
#include "core/lda.hpp"
#include "core/ranking.hpp"
#include "core/similarity.hpp"
#include "core/tokenizer.hpp"
#include "core/vocabulary.hpp"

namespace xlt {

// The eleven runnable variants. _tr variants expect the caller to pass a
// translated dataset; the scoring math is identical to their base variant.
enum class Variant {
  vsm,
  vsm_tr,
  lda,
  lda_tr,
  lsi,
  lsi_tr,
  clg,
  weg,
  weg_tr,
  weg_full,
  weg_full_tr,
};

// Accepts canonical names (VSM, VSM_tr, LDA, LDA_tr, LSI, LSI_tr, CLG, WEG,
// WEG_tr, WEG*, WEG*_tr) and the file-safe aliases WEG_full / WEG_full_tr.
Variant parse_variant(const std::string& name);
// Canonical display name, e.g. "WEG*_tr".
const std::string& variant_name(Variant v);
// Name safe for file systems: "WEG*" becomes "WEG_full".
const std::string& variant_file_name(Variant v);

bool variant_translated(Variant v);
// vsm_tr -> vsm etc.; identity for untranslated variants.
Variant untranslated_counterpart(Variant v);

enum class ModelFamily { vsm, lsi, lda, gvsm };
ModelFamily variant_family(Variant v);

// Which embedding table the variant scores with.
enum class TableKind { none, cross, sampled_mono, full_mono };
TableKind variant_table(Variant v);

struct ModelParams {
  TokenizerOptions tokenizer;
  TfidfVariant tfidf = TfidfVariant::smoothed;
  std::size_t lsi_k = 0;  // 0 = auto (min(200, rank))
  LdaOptions lda;
  DistributionMetric lda_metric = DistributionMetric::cosine;
  GvsmOptions gvsm;
  std::size_t jobs = 1;
};

// Scores every time-filtered candidate pair of the dataset under the given
// variant. GVSM variants need `table` (already normalized); others ignore it.
// Results come back in candidate order (source-major). Fit warnings, if any,
// are appended to `warnings`.
std::vector<ScoredCandidate> run_model(const TraceDataset& dataset, Variant variant,
                                       const ModelParams& params,
                                       const EmbeddingTable* table = nullptr,
                                       std::vector<std::string>* warnings = nullptr);

}  // namespace xlt

#include "core/model.hpp"

#include <array>

#include "core/corpus.hpp"
#include "core/error.hpp"
#include "core/lsi.hpp"
#include "core/parallel.hpp"

namespace xlt {
namespace {

struct VariantInfo {
  Variant variant;
  const char* name;
  const char* file_name;
  ModelFamily family;
  TableKind table;
  bool translated;
};

constexpr std::array<VariantInfo, 11> kVariants{{
    {Variant::vsm, "VSM", "VSM", ModelFamily::vsm, TableKind::none, false},
    {Variant::vsm_tr, "VSM_tr", "VSM_tr", ModelFamily::vsm, TableKind::none, true},
    {Variant::lda, "LDA", "LDA", ModelFamily::lda, TableKind::none, false},
    {Variant::lda_tr, "LDA_tr", "LDA_tr", ModelFamily::lda, TableKind::none, true},
    {Variant::lsi, "LSI", "LSI", ModelFamily::lsi, TableKind::none, false},
    {Variant::lsi_tr, "LSI_tr", "LSI_tr", ModelFamily::lsi, TableKind::none, true},
    {Variant::clg, "CLG", "CLG", ModelFamily::gvsm, TableKind::cross, false},
    {Variant::weg, "WEG", "WEG", ModelFamily::gvsm, TableKind::sampled_mono, false},
    {Variant::weg_tr, "WEG_tr", "WEG_tr", ModelFamily::gvsm, TableKind::sampled_mono, true},
    {Variant::weg_full, "WEG*", "WEG_full", ModelFamily::gvsm, TableKind::full_mono, false},
    {Variant::weg_full_tr, "WEG*_tr", "WEG_full_tr", ModelFamily::gvsm,
     TableKind::full_mono, true},
}};

const VariantInfo& info(Variant v) { return kVariants[static_cast<std::size_t>(v)]; }

}  // namespace

Variant parse_variant(const std::string& name) {
  for (const VariantInfo& vi : kVariants) {
    if (name == vi.name || name == vi.file_name) return vi.variant;
  }
  fail(ErrorCode::invalid_argument, "unknown variant '" + name + "'");
}

const std::string& variant_name(Variant v) {
  static const std::array<std::string, 11> names = [] {
    std::array<std::string, 11> out;
    for (std::size_t i = 0; i < kVariants.size(); ++i) out[i] = kVariants[i].name;
    return out;
  }();
  return names[static_cast<std::size_t>(v)];
}

const std::string& variant_file_name(Variant v) {
  static const std::array<std::string, 11> names = [] {
    std::array<std::string, 11> out;
    for (std::size_t i = 0; i < kVariants.size(); ++i) out[i] = kVariants[i].file_name;
    return out;
  }();
  return names[static_cast<std::size_t>(v)];
}

bool variant_translated(Variant v) { return info(v).translated; }

Variant untranslated_counterpart(Variant v) {
  switch (v) {
    case Variant::vsm_tr:
      return Variant::vsm;
    case Variant::lda_tr:
      return Variant::lda;
    case Variant::lsi_tr:
      return Variant::lsi;
    case Variant::weg_tr:
      return Variant::weg;
    case Variant::weg_full_tr:
      return Variant::weg_full;
    default:
      return v;
  }
}

ModelFamily variant_family(Variant v) { return info(v).family; }

TableKind variant_table(Variant v) { return info(v).table; }

std::vector<ScoredCandidate> run_model(const TraceDataset& dataset, Variant variant,
                                       const ModelParams& params,
                                       const EmbeddingTable* table,
                                       std::vector<std::string>* warnings) {
  const auto candidates = time_filter_candidates(dataset);
  std::vector<ScoredCandidate> out(candidates.size());
  if (candidates.empty()) return out;

  const std::size_t n_sources = dataset.sources.size();
  std::vector<std::vector<Token>> docs(n_sources + dataset.targets.size());
  parallel_for(docs.size(), params.jobs, [&](std::size_t i) {
    const Artifact& a =
        i < n_sources ? dataset.sources[i] : dataset.targets[i - n_sources];
    docs[i] = tokenize(a.text(), params.tokenizer);
  });

  auto emit_scores = [&](auto&& pair_score) {
    parallel_for(candidates.size(), params.jobs, [&](std::size_t c) {
      const auto [src, tgt] = candidates[c];
      out[c] = {dataset.sources[src].id, dataset.targets[tgt].id,
                pair_score(src, n_sources + tgt)};
    });
  };

  const ModelFamily family = variant_family(variant);

  if (family == ModelFamily::lda) {
    std::vector<std::vector<std::string>> token_lists(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      token_lists[i].reserve(docs[i].size());
      for (const Token& t : docs[i]) token_lists[i].push_back(t.surface);
    }
    const auto theta = lda_fit(token_lists, params.lda);
    emit_scores([&](std::size_t a, std::size_t b) {
      return lda_similarity(theta[a], theta[b], params.lda_metric);
    });
    return out;
  }

  const Vocabulary vocab = Vocabulary::build(docs);
  std::vector<DocVector> vectors(docs.size());
  parallel_for(docs.size(), params.jobs, [&](std::size_t i) {
    vectors[i] = tfidf_vectorize(docs[i], vocab, params.tfidf);
  });

  switch (family) {
    case ModelFamily::vsm: {
      emit_scores([&](std::size_t a, std::size_t b) {
        return vsm_similarity(vectors[a], vectors[b]);
      });
      break;
    }
    case ModelFamily::lsi: {
      const LsiSpace space = LsiSpace::fit(vectors, params.lsi_k);
      if (warnings) {
        for (const std::string& w : space.warnings()) {
          warnings->push_back(variant_name(variant) + ": " + w);
        }
      }
      std::vector<std::vector<double>> projected(docs.size());
      parallel_for(docs.size(), params.jobs,
                   [&](std::size_t i) { projected[i] = space.project(vectors[i]); });
      emit_scores([&](std::size_t a, std::size_t b) {
        return cosine_similarity(projected[a], projected[b]);
      });
      break;
    }
    case ModelFamily::gvsm: {
      if (table == nullptr) {
        fail(ErrorCode::config,
             "variant " + variant_name(variant) + " requires an embedding table");
      }
      const GvsmScorer scorer(vectors, vocab, *table, params.gvsm);
      emit_scores(
          [&](std::size_t a, std::size_t b) { return scorer.score(a, b); });
      break;
    }
    case ModelFamily::lda:
      break;  // handled above
  }
  return out;
}

}  // namespace xlt

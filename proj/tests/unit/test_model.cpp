#include "doctest.h"

#include "core/model.hpp"

#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "helpers.hpp"

using namespace xlt;
using namespace testutil;

namespace {

TraceDataset english_corpus() {
  TempDir dir;
  auto path = dir.path / "en.jsonl";
  spit(path,
       R"({"id": "c1", "kind": "commit", "summary": "fix login password error", "created_at": "2021-02-01T00:00:00Z"})"
       "\n"
       R"({"id": "c2", "kind": "commit", "summary": "update connection pool size", "created_at": "2021-02-02T00:00:00Z"})"
       "\n"
       R"({"id": "1", "kind": "issue", "summary": "login fails with wrong password", "created_at": "2021-01-01T00:00:00Z"})"
       "\n"
       R"({"id": "2", "kind": "issue", "summary": "connection pool exhausted", "created_at": "2021-01-02T00:00:00Z"})"
       "\n");
  return load_corpus(path.string());
}

}  // namespace

TEST_CASE("variant names parse and print round-trip") {
  const char* names[] = {"VSM", "VSM_tr", "LDA", "LDA_tr", "LSI", "LSI_tr",
                         "CLG", "WEG", "WEG_tr", "WEG*", "WEG*_tr"};
  for (const char* name : names) {
    Variant v = parse_variant(name);
    CHECK(variant_name(v) == name);
    CHECK(parse_variant(variant_file_name(v)) == v);
  }
  CHECK(variant_file_name(parse_variant("WEG*")) == "WEG_full");
  CHECK(variant_file_name(parse_variant("WEG*_tr")) == "WEG_full_tr");
  CHECK(variant_file_name(parse_variant("VSM")) == "VSM");
  CHECK(parse_variant("WEG_full") == Variant::weg_full);
  CHECK(error_message([] { parse_variant("nope"); }) == "unknown variant 'nope'");
}

TEST_CASE("translated flags and counterparts") {
  CHECK_FALSE(variant_translated(Variant::vsm));
  CHECK(variant_translated(Variant::vsm_tr));
  CHECK(variant_translated(Variant::weg_full_tr));
  CHECK_FALSE(variant_translated(Variant::clg));
  CHECK(untranslated_counterpart(Variant::vsm_tr) == Variant::vsm);
  CHECK(untranslated_counterpart(Variant::lsi_tr) == Variant::lsi);
  CHECK(untranslated_counterpart(Variant::lda_tr) == Variant::lda);
  CHECK(untranslated_counterpart(Variant::weg_tr) == Variant::weg);
  CHECK(untranslated_counterpart(Variant::weg_full_tr) == Variant::weg_full);
  CHECK(untranslated_counterpart(Variant::vsm) == Variant::vsm);
  CHECK(untranslated_counterpart(Variant::clg) == Variant::clg);
}

TEST_CASE("families and table kinds per variant") {
  CHECK(variant_family(Variant::vsm) == ModelFamily::vsm);
  CHECK(variant_family(Variant::vsm_tr) == ModelFamily::vsm);
  CHECK(variant_family(Variant::lsi) == ModelFamily::lsi);
  CHECK(variant_family(Variant::lda_tr) == ModelFamily::lda);
  CHECK(variant_family(Variant::clg) == ModelFamily::gvsm);
  CHECK(variant_family(Variant::weg) == ModelFamily::gvsm);
  CHECK(variant_family(Variant::weg_full_tr) == ModelFamily::gvsm);

  CHECK(variant_table(Variant::vsm) == TableKind::none);
  CHECK(variant_table(Variant::lsi_tr) == TableKind::none);
  CHECK(variant_table(Variant::lda) == TableKind::none);
  CHECK(variant_table(Variant::clg) == TableKind::cross);
  CHECK(variant_table(Variant::weg) == TableKind::sampled_mono);
  CHECK(variant_table(Variant::weg_tr) == TableKind::sampled_mono);
  CHECK(variant_table(Variant::weg_full) == TableKind::full_mono);
  CHECK(variant_table(Variant::weg_full_tr) == TableKind::full_mono);
}

TEST_CASE("vsm model ranks the matching issue first") {
  TraceDataset d = english_corpus();
  auto scores = run_model(d, Variant::vsm, {});
  REQUIRE(scores.size() == 4);  // 2 commits x 2 issues, all time-compatible

  double login_match = 0.0, login_cross = 0.0;
  for (const auto& s : scores) {
    if (s.source_id == "c1" && s.target_id == "1") login_match = s.score;
    if (s.source_id == "c1" && s.target_id == "2") login_cross = s.score;
  }
  CHECK(login_match > login_cross);
}

TEST_CASE("scores come back in source-major candidate order") {
  TraceDataset d = english_corpus();
  auto scores = run_model(d, Variant::vsm, {});
  REQUIRE(scores.size() == 4);
  CHECK(scores[0].source_id == "c1");
  CHECK(scores[0].target_id == "1");
  CHECK(scores[1].source_id == "c1");
  CHECK(scores[1].target_id == "2");
  CHECK(scores[2].source_id == "c2");
  CHECK(scores[3].source_id == "c2");
}

TEST_CASE("tr variants share the scoring math of their base") {
  // on an untranslated dataset the _tr variant is numerically identical
  TraceDataset d = english_corpus();
  auto base = run_model(d, Variant::vsm, {});
  auto tr = run_model(d, Variant::vsm_tr, {});
  REQUIRE(base.size() == tr.size());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(base[i].score == tr[i].score);
}

TEST_CASE("gvsm variants require an embedding table") {
  TraceDataset d = english_corpus();
  for (Variant v : {Variant::clg, Variant::weg, Variant::weg_tr,
                    Variant::weg_full, Variant::weg_full_tr}) {
    std::string msg = error_message([&] { run_model(d, v, {}); });
    CHECK(msg == "variant " + variant_name(v) + " requires an embedding table");
  }
}

TEST_CASE("gvsm with a table falls back to vsm for out-of-table terms") {
  TraceDataset d = english_corpus();
  auto empty_table = EmbeddingTable::from_entries(4, {}).l2_normalized();
  auto vsm = run_model(d, Variant::vsm, {});
  auto weg = run_model(d, Variant::weg, {}, &empty_table);
  REQUIRE(vsm.size() == weg.size());
  for (std::size_t i = 0; i < vsm.size(); ++i) {
    CHECK(weg[i].score == doctest::Approx(vsm[i].score).epsilon(1e-12));
  }
}

TEST_CASE("a related-term table lifts cross-lingual matches") {
  TempDir dir;
  auto path = dir.path / "zh.jsonl";
  spit(path,
       R"({"id": "c1", "kind": "commit", "summary": "修复 密码 错误", "created_at": "2021-02-01T00:00:00Z"})"
       "\n"
       R"({"id": "1", "kind": "issue", "summary": "password error on login", "created_at": "2021-01-01T00:00:00Z"})"
       "\n");
  TraceDataset d = load_corpus(path.string());

  auto vsm = run_model(d, Variant::vsm, {});
  REQUIRE(vsm.size() == 1);
  CHECK(vsm[0].score == 0.0);  // no shared surface terms

  auto table = EmbeddingTable::from_entries(2, {
      {"密", {1.0f, 0.0f}},
      {"码", {1.0f, 0.0f}},
      {"密码", {1.0f, 0.0f}},
      {"password", {1.0f, 0.0f}},
      {"错", {0.0f, 1.0f}},
      {"误", {0.0f, 1.0f}},
      {"错误", {0.0f, 1.0f}},
      {"error", {0.0f, 1.0f}},
  }).l2_normalized();
  auto clg = run_model(d, Variant::clg, {}, &table);
  REQUIRE(clg.size() == 1);
  CHECK(clg[0].score > 0.0);
}

TEST_CASE("lsi warnings carry the variant name") {
  TraceDataset d = english_corpus();
  ModelParams params;
  params.lsi_k = 50;  // far above the rank of a 4-document corpus
  std::vector<std::string> warnings;
  run_model(d, Variant::lsi, params, nullptr, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].rfind("LSI: ", 0) == 0);
}

TEST_CASE("lda model is deterministic per seed") {
  TraceDataset d = english_corpus();
  ModelParams params;
  params.lda.topics = 4;
  params.lda.iterations = 50;
  auto a = run_model(d, Variant::lda, params);
  auto b = run_model(d, Variant::lda, params);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].score == b[i].score);
}

TEST_CASE("job count never changes scores") {
  TraceDataset d = english_corpus();
  for (Variant v : {Variant::vsm, Variant::lsi}) {
    ModelParams one;
    one.jobs = 1;
    ModelParams four;
    four.jobs = 4;
    auto a = run_model(d, v, one);
    auto b = run_model(d, v, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].score == b[i].score);
  }
}

TEST_CASE("an empty candidate list yields no scores") {
  TempDir dir;
  auto path = dir.path / "none.jsonl";
  // the only commit predates the issue, so the time filter leaves nothing
  spit(path,
       R"({"id": "c1", "kind": "commit", "summary": "fix", "created_at": "2020-01-01T00:00:00Z"})"
       "\n"
       R"({"id": "1", "kind": "issue", "summary": "bug", "created_at": "2021-01-01T00:00:00Z"})"
       "\n");
  TraceDataset d = load_corpus(path.string());
  CHECK(run_model(d, Variant::vsm, {}).empty());
}

#include "doctest.h"

#include "core/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/corpus.hpp"
#include "helpers.hpp"

using namespace xlt;
using namespace testutil;
using nlohmann::json;

namespace {

RunConfig fixture_config(const std::filesystem::path& out_dir) {
  RunConfig c;
  c.corpus = data_file("fixture.jsonl");
  c.out_dir = out_dir.string();
  return c;
}

}  // namespace

TEST_CASE("ingest extracts links and reports corpus counts") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  json summary = json::parse(cmd_ingest(c));
  CHECK(summary["dataset"] == "fixture");
  CHECK(summary["commits"] == 12);
  CHECK(summary["issues"] == 11);
  CHECK(summary["links"] == 10);
  CHECK(summary["skipped_references"] == 1);

  std::string links_file = summary["links_file"].get<std::string>();
  CHECK(std::filesystem::exists(links_file));
  TraceDataset d = load_corpus(c.corpus);
  load_links(d, links_file);
  CHECK(d.golden.size() == 10);
}

TEST_CASE("prune writes the reduced corpus with its link share") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  json summary = json::parse(cmd_prune(c));
  CHECK(summary["dataset"] == "fixture");
  CHECK(summary["commits"] == 9);
  CHECK(summary["issues"] == 9);
  CHECK(summary["links"] == 9);
  CHECK(summary["foreign_term_ratio"].get<double>() ==
        doctest::Approx(0.4206896551724138).epsilon(1e-12));
  CHECK(summary["foreign_term_pct"].get<double>() == doctest::Approx(42.1).epsilon(1e-9));

  TraceDataset pruned = load_corpus(summary["corpus_file"].get<std::string>());
  load_links(pruned, summary["links_file"].get<std::string>());
  CHECK(pruned.sources.size() == 9);
  for (const TraceLink& l : pruned.golden) CHECK(l.intermingled);
}

TEST_CASE("pruning steps can be disabled") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  c.prune_intermingled = false;
  json summary = json::parse(cmd_prune(c));
  CHECK(summary["commits"] == 10);  // only the linked filter ran
  CHECK(summary["issues"] == 10);
  CHECK(summary["links"] == 10);
}

TEST_CASE("translate rewrites bilingual sentences through the glossary") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  c.translate_mode = "glossary";
  c.glossary = data_file("glossary.json");
  json summary = json::parse(cmd_translate(c));
  CHECK(summary["dataset"] == "fixture");
  CHECK(summary["translator"] == "glossary");
  CHECK(summary["sentences"] == 35);
  CHECK(summary["bilingual_sentences"] == 9);
  CHECK(summary["translator_calls"] == 9);
  CHECK(summary["cache_hits"] == 0);

  TraceDataset translated = load_corpus(summary["corpus_file"].get<std::string>());
  const Artifact& c1 = translated.sources[translated.source_index.at("c1")];
  CHECK(c1.summary == "fix login password error #1");
  CHECK(c1.body == "src/auth/login.cpp");
}

TEST_CASE("translate records cache hits on the second run") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  c.translate_mode = "glossary";
  c.glossary = data_file("glossary.json");
  c.cache = (dir.path / "cache.jsonl").string();
  json first = json::parse(cmd_translate(c));
  CHECK(first["translator_calls"] == 9);
  CHECK(first["cache_hits"] == 0);

  json second = json::parse(cmd_translate(c));
  CHECK(second["translator_calls"] == 0);
  CHECK(second["cache_hits"] == 9);
}

TEST_CASE("trace ranks candidates per variant and writes csv files") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  json summary = json::parse(cmd_trace(c));
  CHECK(summary["dataset"] == "fixture");
  CHECK(summary["candidates"] == 72);
  CHECK(summary["total_links"] == 9);
  REQUIRE(summary["variants"].size() == 1);
  CHECK(summary["variants"][0]["variant"] == "VSM");
  CHECK(summary["variants"][0]["candidates"] == 72);

  std::string csv = summary["variants"][0]["file"].get<std::string>();
  CHECK(csv == (dir.path / "fixture.VSM.ranked.csv").string());
  std::string content = slurp(csv);
  CHECK(content.rfind("source_id,target_id,score,is_true\n", 0) == 0);
  CHECK(std::count(content.begin(), content.end(), '\n') == 73);  // header + 72 rows

  CHECK(std::filesystem::exists(dir.path / "trace_summary.json"));
  CHECK(json::parse(slurp(dir.path / "trace_summary.json")) == summary);
}

TEST_CASE("eval reproduces frozen average precision values") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path);
  c.translate_mode = "glossary";
  c.glossary = data_file("glossary.json");
  c.variants = {"VSM", "VSM_tr"};
  json summary = json::parse(cmd_eval(c));
  CHECK(summary["candidates"] == 72);
  CHECK(summary["total_links"] == 9);
  REQUIRE(summary["results"].size() == 2);

  const json& vsm = summary["results"][0];
  CHECK(vsm["variant"] == "VSM");
  CHECK(vsm["ap"].get<double>() == doctest::Approx(0.5670583384869099).epsilon(1e-12));
  CHECK(vsm["n"] == 72);
  CHECK(vsm["n_true"] == 8);  // one golden link is outside the time window

  const json& vsm_tr = summary["results"][1];
  CHECK(vsm_tr["variant"] == "VSM_tr");
  CHECK(vsm_tr["ap"].get<double>() ==
        doctest::Approx(0.8888888888888888).epsilon(1e-12));
  CHECK(vsm_tr["ap"].get<double>() >= vsm["ap"].get<double>());

  CHECK(std::filesystem::exists(dir.path / "eval_summary.json"));
  std::string csv = slurp(dir.path / "eval_summary.csv");
  CHECK(csv.rfind("dataset,variant,ap,n,n_true,runtime_ms\n", 0) == 0);
  CHECK(csv.find("fixture,VSM,") != std::string::npos);
  CHECK(csv.find("fixture,VSM_tr,") != std::string::npos);
}

TEST_CASE("trace output is deterministic across runs and job counts") {
  TempDir dir_a, dir_b;
  RunConfig a = fixture_config(dir_a.path);
  RunConfig b = fixture_config(dir_b.path);
  b.jobs = 4;
  cmd_trace(a);
  cmd_trace(b);
  CHECK(slurp(dir_a.path / "fixture.VSM.ranked.csv") ==
        slurp(dir_b.path / "fixture.VSM.ranked.csv"));
}

TEST_CASE("nested out_dir paths are created on demand") {
  TempDir dir;
  RunConfig c = fixture_config(dir.path / "deep" / "er");
  json summary = json::parse(cmd_ingest(c));
  CHECK(std::filesystem::exists(dir.path / "deep" / "er" / "fixture.links.jsonl"));
}

TEST_CASE("commands reject invalid configurations with every problem listed") {
  RunConfig c;
  c.corpus = "/nonexistent/corpus.jsonl";
  c.lda_metric = "manhattan";
  std::string msg = error_message([&] { cmd_trace(c); });
  CHECK(msg.find("corpus does not exist") != std::string::npos);
  CHECK(msg.find("models.lda_metric") != std::string::npos);
}

TEST_CASE("compare consumes a csv table of ap values") {
  TempDir dir;
  spit(dir.path / "table.csv",
       "dataset,variant,ap\n"
       "d1,VSM,0.40\nd1,VSM_tr,0.52\n"
       "d2,VSM,0.35\nd2,VSM_tr,0.47\n"
       "d3,VSM,0.60\nd3,VSM_tr,0.71\n"
       "d4,VSM,0.22\nd4,VSM_tr,0.30\n"
       "d5,VSM,0.55\nd5,VSM_tr,0.54\n"
       "d6,VSM,0.48\nd6,VSM_tr,0.62\n");
  RunConfig c;
  c.out_dir = dir.path.string();
  c.compare_table = (dir.path / "table.csv").string();

  json summary = json::parse(cmd_compare(c));
  CHECK(summary["datasets"].size() == 6);
  CHECK(summary["variants"] == json::array({"VSM", "VSM_tr"}));
  REQUIRE(summary["pairs"].size() == 1);
  const json& pair = summary["pairs"][0];
  CHECK(pair["status"] == "ok");
  CHECK(pair["w"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair["p"].get<double>() == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(pair["d"].get<double>() == doctest::Approx(-1.7193776277617612).epsilon(1e-12));
  CHECK_FALSE(pair["significant"].get<bool>());

  std::string csv = slurp(summary["file"].get<std::string>());
  CHECK(csv.rfind("variant_a,variant_b,w,p,d,significant,status\n", 0) == 0);
  CHECK(csv.find("VSM,VSM_tr,1,0.0625,") != std::string::npos);
}

TEST_CASE("compare consumes eval summary json files") {
  TempDir dir;
  std::vector<std::string> inputs;
  const double vsm_ap[] = {0.40, 0.35, 0.60, 0.22, 0.55, 0.48};
  const double tr_ap[] = {0.52, 0.47, 0.71, 0.30, 0.54, 0.62};
  for (int i = 0; i < 6; ++i) {
    json j{{"dataset", "d" + std::to_string(i + 1)},
           {"results", json::array({json{{"variant", "VSM"}, {"ap", vsm_ap[i]}},
                                    json{{"variant", "VSM_tr"}, {"ap", tr_ap[i]}}})}};
    auto path = dir.path / ("eval" + std::to_string(i + 1) + ".json");
    spit(path, j.dump());
    inputs.push_back(path.string());
  }
  RunConfig c;
  c.out_dir = dir.path.string();
  c.compare_inputs = inputs;

  json summary = json::parse(cmd_compare(c));
  REQUIRE(summary["pairs"].size() == 1);
  CHECK(summary["pairs"][0]["w"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(summary["pairs"][0]["p"].get<double>() == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("compare rejects tables with coverage holes") {
  TempDir dir;
  spit(dir.path / "table.csv",
       "dataset,variant,ap\n"
       "d1,VSM,0.40\nd1,VSM_tr,0.52\n"
       "d2,VSM,0.35\n");
  RunConfig c;
  c.out_dir = dir.path.string();
  c.compare_table = (dir.path / "table.csv").string();
  std::string msg = error_message([&] { cmd_compare(c); });
  CHECK(msg.find("mismatched dataset coverage") != std::string::npos);
  CHECK(msg.find("VSM_tr on d2") != std::string::npos);
}

TEST_CASE("compare reports malformed table rows with line numbers") {
  TempDir dir;
  spit(dir.path / "table.csv", "dataset,variant,ap\nd1,VSM,not_a_number\n");
  RunConfig c;
  c.out_dir = dir.path.string();
  c.compare_table = (dir.path / "table.csv").string();
  std::string msg = error_message([&] { cmd_compare(c); });
  CHECK(msg.find(":2: bad ap value 'not_a_number'") != std::string::npos);
}

#include "adeval/commands.h"

#include <gtest/gtest.h>

#include <sstream>

#include "adeval/error.h"
#include "adeval/format.h"
#include "adeval/runs.h"
#include "test_util.h"

namespace adeval::harness {
namespace {

namespace fs = std::filesystem;
const std::string kGolden = std::string(ADEVAL_TEST_DATA) + "/golden";

JobConfig GoldenConfig(const testing::TempDir& out) {
  JobConfig cfg = LoadConfig(kGolden + "/job.ini",
                             [](const std::string&) { return std::nullopt; });
  cfg.out_dir = out.path().string();
  return cfg;
}

TEST(PredictionFilesTest, SpanLines) {
  std::istringstream in(R"({"doc_id":"a","seed":1,"spans":[[0,3],[5,9]]})" "\n\n"
                        R"({"doc_id":"a","seed":2,"spans":[]})" "\n");
  const auto preds = ReadSpanPredictions(in, "p.jsonl");
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(preds[0].spans, (std::vector<Span>{{0, 3}, {5, 9}}));
  EXPECT_EQ(preds[1].line, 3u);
}

TEST(PredictionFilesTest, ErrorsCarryLines) {
  std::istringstream dup(R"({"doc_id":"a","seed":1,"spans":[]})" "\n"
                         R"({"doc_id":"a","seed":1,"spans":[]})" "\n");
  try {
    ReadSpanPredictions(dup, "p.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream bad(R"({"doc_id":"a","seed":1,"spans":[[1]]})" "\n");
  EXPECT_THROW(ReadSpanPredictions(bad), ParseError);
  std::istringstream gen(R"({"doc_id":"a","seed":1})" "\n");
  EXPECT_THROW(ReadGenerativePredictions(gen), ParseError);
}

TEST(ScoreCommandTest, GoldenReportIsByteIdentical) {
  testing::TempDir out("score");
  const auto result = Score(GoldenConfig(out));
  EXPECT_EQ(ReadFile(out / "scores/golden/seed-1.json"),
            ReadFile(kGolden + "/expected_report.json"));
  std::istringstream runs_in(ReadFile(out / "runs.jsonl"));
  const auto runs = analysis::ReadRuns(runs_in);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].model, "BERT");
  EXPECT_EQ(runs[0].dataset, "golden");
  EXPECT_EQ(runs[0].features, (analysis::FeatureVector{0, 1, 0, 0, 1, 1}));
  EXPECT_NEAR(runs[0].relaxed.f1, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(result.artifacts.size(), 2u);
}

TEST(ScoreCommandTest, CsvFormat) {
  testing::TempDir out("score-csv");
  auto cfg = GoldenConfig(out);
  cfg.format = ReportFormat::kCsv;
  Score(cfg);
  EXPECT_EQ(ReadFile(out / "scores/golden/seed-1.csv"),
            "scheme,precision,recall,f1,cor,par,inc,mis,spu\n"
            "relaxed,0.6666666666666666,0.6666666666666666,0.6666666666666666,3,2,0,1,1\n"
            "strict,0.5,0.5,0.5,3,0,2,1,1\n");
}

TEST(ScoreCommandTest, GenerativeRunsGoThroughAlignment) {
  testing::TempDir out("score-gen");
  auto cfg = GoldenConfig(out);
  const auto preds = out.Write(
      "gen.jsonl",
      R"({"doc_id":"post-1","seed":4,"output":"severe muscle pain; Nausea; dizzy"})" "\n"
      R"({"doc_id":"post-3","seed":4,"output":"stomach cramps headache"})" "\n");
  cfg.runs = {{"t5", "T5", "golden", PredictionKind::kGenerative, preds}};
  const auto result = Score(cfg);
  // post-1: 2 cor; post-2: no output, 2 mis; post-3: 2 cor (the item splits).
  const std::string report = ReadFile(out / "scores/t5/seed-4.json");
  EXPECT_NE(report.find("\"cor\": 4"), std::string::npos) << report;
  EXPECT_NE(report.find("\"mis\": 2"), std::string::npos) << report;
  const std::string log = ReadFile(out / "alignment/t5/seed-4.jsonl");
  EXPECT_NE(log.find(R"("discarded":[{"item":2,"text":"dizzy"}])"), std::string::npos) << log;
  ASSERT_EQ(result.notes.size(), 1u);  // post-2 had no prediction
}

TEST(ScoreCommandTest, MalformedInputsNameFileAndLine) {
  testing::TempDir out("score-bad");
  auto cfg = GoldenConfig(out);
  cfg.runs[0].path = out.Write("p.jsonl", R"({"doc_id":"post-1","seed":1,"spans":[[0,3]]})" "\n"
                                          R"({"doc_id":"nope","seed":1,"spans":[]})" "\n");
  try {
    Score(cfg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("p.jsonl:2"), std::string::npos);
  }
  cfg.runs[0].path = out.Write("q.jsonl", R"({"doc_id":"post-1","seed":1,"spans":[[0,99]]})");
  EXPECT_THROW(Score(cfg), ParseError);
  cfg.runs[0].path = out.Write("r.jsonl", R"({"doc_id":"post-1","seed":1,"spans":[[0,5],[3,8]]})");
  EXPECT_THROW(Score(cfg), ParseError);
  // Nothing was written for the failed runs.
  EXPECT_FALSE(fs::exists(out / "runs.jsonl"));
  cfg.runs[0].path = out / "missing.jsonl";
  EXPECT_THROW(Score(cfg), ContractError);
  cfg.runs[0].path = kGolden + "/predictions.jsonl";
  cfg.runs[0].model = "NoSuchModel";
  EXPECT_THROW(Score(cfg), ContractError);
  cfg.runs[0].model = "BERT";
  cfg.seeds = {1, 2};
  EXPECT_THROW(Score(cfg), ContractError);
}

TEST(IngestCommandTest, StandoffDirectory) {
  testing::TempDir work("ingest");
  work.Write("in/b.txt", "had nausea");
  work.Write("in/b.ann", "T1\tADR 4 10\tnausea\nT2\tDrug 0 3\thad\n");
  work.Write("in/a.txt", "legs weak and sore");
  work.Write("in/a.ann", "T1\tADR 0 4;5 9\tlegs weak\n");
  work.Write("in/c.txt", "fine");
  work.Write("in/c.ann", "");
  JobConfig cfg;
  cfg.out_dir = work / "out";
  cfg.standoff_dir = work / "in";
  cfg.labels = {"ADR"};
  cfg.dataset = "tiny";
  Ingest(cfg);
  const std::string corpus = ReadFile(work / "out/corpus.jsonl");
  EXPECT_EQ(corpus,
            R"({"id":"a","text":"legs weak and sore","mentions":[{"fragments":[[0,4],[5,9]],"label":"ADE"}]})" "\n"
            R"({"id":"b","text":"had nausea","mentions":[{"fragments":[[4,10]],"label":"ADE"}]})" "\n"
            R"({"id":"c","text":"fine","mentions":[]})" "\n");
  const auto stats = nlohmann::json::parse(ReadFile(work / "out/stats.json"));
  EXPECT_EQ(stats["documents"], 3);
  EXPECT_EQ(stats["with_ade"], 2);
  EXPECT_EQ(stats["discontinuous_mentions"], 1);
  EXPECT_EQ(stats["totals"]["lexicon_count"], 4 + 2 + 1);
  EXPECT_EQ(stats["totals"]["num_ades"], 3);
  EXPECT_NEAR(stats["ade"]["character_count"]["mean"].get<double>(), 14.0 / 3.0,
              1e-12);  // legs, weak, nausea
  EXPECT_TRUE(fs::exists(work / "out/stats.txt"));
  EXPECT_FALSE(fs::exists(work / "out/splits.json"));
}

TEST(IngestCommandTest, SplitsAndErrors) {
  testing::TempDir work("ingest-split");
  auto corpus = [](int positive, int negative) {
    std::string jsonl;
    for (int i = 0; i < positive + negative; ++i) {
      jsonl += R"({"id":"d)" + std::to_string(i) + R"(","text":"pain","mentions":)" +
               (i < positive ? R"([{"fragments":[[0,4]],"label":"ADE"}]})" : R"([]})") +
               "\n";
    }
    return jsonl;
  };
  JobConfig cfg;
  cfg.out_dir = work / "out";
  cfg.corpus_jsonl = work.Write("c.jsonl", corpus(20, 10));
  cfg.split = corpus::SplitRatios{};
  Ingest(cfg);
  const auto split = nlohmann::json::parse(ReadFile(work / "out/splits.json"));
  EXPECT_EQ(split["train"].size(), 24u);
  EXPECT_EQ(split["val"].size() + split["test"].size(), 6u);

  // Two negatives cannot fill three splits; nothing new is written.
  fs::remove_all(work / "out");
  cfg.corpus_jsonl = work.Write("d.jsonl", corpus(20, 2));
  EXPECT_THROW(Ingest(cfg), ContractError);
  EXPECT_FALSE(fs::exists(work / "out/corpus.jsonl"));

  cfg.corpus_jsonl = work.Write("e.jsonl", corpus(1, 0) + corpus(1, 0));
  cfg.split.reset();
  EXPECT_THROW(Ingest(cfg), ContractError);  // duplicate id
  cfg.corpus_jsonl.clear();
  EXPECT_THROW(Ingest(cfg), ContractError);
}

TEST(AggregateCommandTest, WritesTableAndReport) {
  testing::TempDir out("aggregate");
  JobConfig cfg;
  cfg.out_dir = out.path().string();
  std::string lines;
  for (const auto& r : testing::SyntheticRuns(1, 3)) lines += analysis::RunToJsonLine(r) + "\n";
  cfg.run_files = {out.Write("runs.jsonl", lines)};
  Aggregate(cfg);
  const std::string table = ReadFile(out / "aggregate.txt");
  EXPECT_EQ(table.rfind("Dataset: synthetic\n", 0), 0u);
  EXPECT_NE(table.find("\nEnDR-BERT "), std::string::npos);
  const auto j = nlohmann::json::parse(ReadFile(out / "aggregate.json"));
  EXPECT_EQ(j.size(), 19u);
}

TEST(AnalyzeCommandTest, ExportsAttributions) {
  testing::TempDir out("analyze");
  JobConfig cfg;
  cfg.out_dir = out.path().string();
  cfg.forest.n_trees = 20;
  std::string lines;
  for (const auto& r : testing::SyntheticRuns(2, 4)) lines += analysis::RunToJsonLine(r) + "\n";
  cfg.run_files = {out.Write("runs.jsonl", lines)};
  Analyze(cfg);
  const std::string shap = ReadFile(out / "analysis/synthetic/shap.csv");
  EXPECT_EQ(shap.substr(0, shap.find('\n')), "run_id,feature,feature_value,shap_value");
  EXPECT_EQ(std::count(shap.begin(), shap.end(), '\n'), 1 + 19 * 4 * 6);
  EXPECT_NE(shap.find("\nBERT/0,category,0,"), std::string::npos);
  const auto imp = nlohmann::json::parse(ReadFile(out / "analysis/synthetic/importance.json"));
  EXPECT_EQ(imp["ranking"].size(), 6u);
  const auto perm = nlohmann::json::parse(ReadFile(out / "analysis/synthetic/permutation.json"));
  EXPECT_EQ(perm["permutations"].size(), 6u);
}

TEST(DeltasAndPlotCommandTest, WriteReportsAndSvgs) {
  testing::TempDir out("deltas");
  JobConfig cfg;
  cfg.out_dir = out.path().string();
  std::string base, crf;
  for (auto r : testing::SyntheticRuns(3, 2)) {
    base += analysis::RunToJsonLine(r) + "\n";
    r.relaxed.precision = std::min(1.0, r.relaxed.precision + 0.01);
    crf += analysis::RunToJsonLine(r) + "\n";
  }
  cfg.base_runs = {out.Write("base.jsonl", base)};
  cfg.augmented_runs = {{"crf", out.Write("crf.jsonl", crf)}};
  cfg.run_files = cfg.base_runs;
  Deltas(cfg);
  const auto j = nlohmann::json::parse(ReadFile(out / "deltas/crf.json"));
  ASSERT_EQ(j["deltas"].size(), 19u);
  EXPECT_NEAR(j["deltas"][0]["delta_precision"].get<double>(), 1.0, 1e-9);
  Plot(cfg);
  EXPECT_TRUE(fs::exists(out / "plots/pr_synthetic.svg"));
  EXPECT_TRUE(fs::exists(out / "plots/delta_crf.svg"));
}

TEST(CommandsTest, SafeName) {
  EXPECT_EQ(SafeName("bert-base_1.0"), "bert-base_1.0");
  EXPECT_EQ(SafeName("a/b c"), "a_b_c");
  EXPECT_EQ(SafeName(".."), "_..");
}

}  // namespace
}  // namespace adeval::harness

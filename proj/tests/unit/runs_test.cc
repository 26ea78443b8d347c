#include "adeval/runs.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "adeval/error.h"

namespace adeval::analysis {
namespace {

RunRecord MakeRun(std::string model, long seed, double f1, double p, double r,
              std::string dataset = "cadec") {
  RunRecord rec;
  rec.model = std::move(model);
  rec.dataset = std::move(dataset);
  rec.seed = seed;
  rec.features = {0, 1, 0, 0, 1, 1};
  rec.relaxed = {p, r, f1};
  rec.strict = {p / 2, r / 2, f1 / 2};
  return rec;
}

TEST(RunsTest, JsonLineRoundTrip) {
  const auto rec = MakeRun("BERT", 3, 0.5, 0.25, 1.0);
  const std::string line = RunToJsonLine(rec);
  EXPECT_EQ(line,
            R"({"model":"BERT","dataset":"cadec","seed":3,"features":{"category":0,)"
            R"("general":1,"medical":0,"social":0,"from_scratch":1,"size":1},)"
            R"("relaxed":{"precision":0.25,"recall":1.0,"f1":0.5},)"
            R"("strict":{"precision":0.125,"recall":0.5,"f1":0.25}})");
  std::istringstream in(line + "\n\n" + RunToJsonLine(MakeRun("BERT", 4, 0.5, 0.25, 1.0)));
  const auto runs = ReadRuns(in);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].features, rec.features);
  EXPECT_EQ(runs[0].relaxed, rec.relaxed);
  EXPECT_EQ(runs[1].seed, 4);
}

TEST(RunsTest, ReadErrors) {
  const std::string good = RunToJsonLine(MakeRun("BERT", 3, 0.5, 0.25, 1.0));
  std::istringstream dup(good + "\n" + good + "\n");
  try {
    ReadRuns(dup, "runs.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream range(RunToJsonLine(MakeRun("BERT", 3, 1.5, 0.25, 1.0)));
  EXPECT_THROW(ReadRuns(range), ParseError);
  std::istringstream missing(R"({"model":"BERT","seed":1})");
  EXPECT_THROW(ReadRuns(missing), ParseError);
}

TEST(MeanStdTest, SampleStandardDeviation) {
  const double v[] = {2, 4, 4, 4, 5, 5, 7, 9};
  const auto m = ComputeMeanStd(v);
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_NEAR(m.std, std::sqrt(32.0 / 7.0), 1e-15);
  const double one[] = {0.3};
  EXPECT_EQ(ComputeMeanStd(one).std, 0.0);
  EXPECT_EQ(ComputeMeanStd(std::span<const double>{}).mean, 0.0);
}

TEST(AggregateTest, GroupsInFirstSeenOrder) {
  const std::vector<RunRecord> runs = {
      MakeRun("SpanBERT", 1, 0.6, 0.6, 0.6), MakeRun("BERT", 1, 0.7, 0.7, 0.7),
      MakeRun("SpanBERT", 2, 0.8, 0.8, 0.8), MakeRun("BERT", 1, 0.5, 0.5, 0.5, "smm4h")};
  const auto rows = AggregateRuns(runs);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].model, "SpanBERT");
  EXPECT_EQ(rows[0].seeds, 2u);
  EXPECT_NEAR(rows[0].relaxed_f1.mean, 0.7, 1e-15);
  EXPECT_NEAR(rows[0].relaxed_f1.std, std::sqrt(0.02), 1e-15);
  EXPECT_TRUE(rows[1].single_seed);
  EXPECT_EQ(rows[2].dataset, "smm4h");
}

TEST(AggregateTest, TableLayout) {
  const std::vector<RunRecord> runs = {MakeRun("BERT", 1, 0.7, 0.6, 0.8),
                                       MakeRun("BERT", 2, 0.7, 0.6, 0.8),
                                       MakeRun("GPT-2", 1, 0.5, 0.5, 0.5)};
  const std::string table = FormatAggregateTable(AggregateRuns(runs));
  const std::string expected =
      "Dataset: cadec\n"
      "        Relaxed                                      Strict\n"
      "Model   F1             P              R              F1             P              R\n"
      "BERT    70.00 ± 0.00   60.00 ± 0.00   80.00 ± 0.00   35.00 ± 0.00   30.00 ± 0.00   40.00 ± 0.00\n"
      "GPT-2*  50.00 ± 0.00   50.00 ± 0.00   50.00 ± 0.00   25.00 ± 0.00   25.00 ± 0.00   25.00 ± 0.00\n"
      "\n* single seed: standard deviation not defined, shown as 0\n";
  EXPECT_EQ(table, expected);
}

TEST(AggregateTest, CsvAndJson) {
  const std::vector<RunRecord> runs = {MakeRun("BERT", 1, 0.5, 0.5, 0.5)};
  const auto rows = AggregateRuns(runs);
  const std::string csv = AggregateCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "model,dataset,seeds,relaxed_f1_mean,relaxed_f1_std,relaxed_precision_mean,"
            "relaxed_precision_std,relaxed_recall_mean,relaxed_recall_std,strict_f1_mean,"
            "strict_f1_std,strict_precision_mean,strict_precision_std,strict_recall_mean,"
            "strict_recall_std");
  EXPECT_NE(csv.find("BERT,cadec,1,0.5,0,0.5,0,0.5,0,0.25,0"), std::string::npos);
  const auto j = nlohmann::json::parse(AggregateJson(rows));
  EXPECT_EQ(j[0]["relaxed"]["f1"]["mean"], 0.5);
  EXPECT_EQ(j[0]["single_seed"], true);
}

TEST(ModuleEffectTest, DeltasInPercentagePoints) {
  const std::vector<RunRecord> base = {MakeRun("BERT", 1, 0.70, 0.60, 0.80),
                                       MakeRun("XLNet", 1, 0.5, 0.5, 0.5)};
  const std::vector<RunRecord> crf = {MakeRun("BERT", 1, 0.72, 0.65, 0.79),
                                      MakeRun("T5", 1, 0.5, 0.5, 0.5)};
  const auto report = ModuleEffect(AggregateRuns(base), AggregateRuns(crf));
  ASSERT_EQ(report.deltas.size(), 1u);
  EXPECT_NEAR(report.deltas[0].delta_precision, 5.0, 1e-9);
  EXPECT_NEAR(report.deltas[0].delta_recall, -1.0, 1e-9);
  EXPECT_NEAR(report.deltas[0].delta_f1, 2.0, 1e-9);
  EXPECT_EQ(report.only_base, (std::vector<std::string>{"XLNet/cadec"}));
  EXPECT_EQ(report.only_augmented, (std::vector<std::string>{"T5/cadec"}));
  const std::string csv = ModuleEffectCsv(report);
  EXPECT_NE(csv.find("# excluded (base only): XLNet/cadec"), std::string::npos);

  const std::vector<RunRecord> other = {MakeRun("T5", 1, 0.5, 0.5, 0.5)};
  EXPECT_THROW(ModuleEffect(AggregateRuns(base), AggregateRuns(other)), ContractError);
}

TEST(IsoF1Test, CurvePoints) {
  EXPECT_NEAR(IsoF1Precision(0.5, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(IsoF1Precision(0.6, 1.0), 0.6 / 1.4, 1e-15);
  for (double f1 : {0.2, 0.5, 0.8}) {
    for (double r = f1 / 2 + 0.01; r <= 1.0; r += 0.01) {
      const double p = IsoF1Precision(f1, r);
      EXPECT_NEAR(2 * p * r / (p + r), f1, 1e-12);
    }
  }
  const double grid[] = {0.05, 0.1, 0.2, 0.5, 1.0};
  const auto pts = IsoF1Curve(0.2, grid);
  ASSERT_EQ(pts.size(), 3u);  // recall must exceed f1 / 2
  EXPECT_EQ(pts[0].first, 0.2);
  EXPECT_THROW(IsoF1Precision(0.5, 0.2), ContractError);
  EXPECT_THROW(IsoF1Curve(1.0, grid), ContractError);
}

}  // namespace
}  // namespace adeval::analysis

#ifndef ADEVAL_RUNS_H_
#define ADEVAL_RUNS_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adeval/features.h"
#include "adeval/metrics.h"

namespace adeval::analysis {

// Outcome of one (model, seed, dataset) evaluation.
struct RunRecord {
  std::string model;
  std::string dataset;
  long seed = 0;
  FeatureVector features;
  metrics::Scores relaxed;
  metrics::Scores strict;
};

// Run-record file: one JSON object per line,
// {"model", "dataset", "seed", "features": {...}, "relaxed": {...},
//  "strict": {...}}. Throws ParseError with the line number, also for a
// repeated (model, seed, dataset) key.
std::vector<RunRecord> ReadRuns(std::istream& in,
                                std::string_view source_name = {});
std::string RunToJsonLine(const RunRecord& run);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for one value
};

// Arithmetic mean and sample standard deviation (two-pass).
MeanStd ComputeMeanStd(std::span<const double> values);

struct AggregateRow {
  std::string model;
  std::string dataset;
  std::size_t seeds = 0;
  bool single_seed = false;  // std reported as 0
  MeanStd relaxed_f1, relaxed_p, relaxed_r;
  MeanStd strict_f1, strict_p, strict_r;
};

// Groups by (model, dataset), keeping the order of first appearance.
std::vector<AggregateRow> AggregateRuns(std::span<const RunRecord> runs);

// Fixed-width text table, one block per dataset:
//
//                  Relaxed                          Strict
//   Model          F1       P        R              F1   ...
//   BERT           70.43 ± 0.22  ...
//
// Values are percentages with two decimals.
std::string FormatAggregateTable(std::span<const AggregateRow> rows);
std::string AggregateCsv(std::span<const AggregateRow> rows);
std::string AggregateJson(std::span<const AggregateRow> rows);

struct ModuleDelta {
  std::string model;
  std::string dataset;
  double delta_precision = 0.0;  // percentage points, augmented - base
  double delta_recall = 0.0;
  double delta_f1 = 0.0;
};

struct ModuleEffectReport {
  std::vector<ModuleDelta> deltas;       // in base order
  std::vector<std::string> only_base;       // "model/dataset" keys
  std::vector<std::string> only_augmented;
};

// Relaxed-metric differences for every (model, dataset) present in both
// inputs. Throws ContractError when the inputs share no model.
ModuleEffectReport ModuleEffect(std::span<const AggregateRow> base,
                                std::span<const AggregateRow> augmented);
std::string ModuleEffectCsv(const ModuleEffectReport& report);
std::string ModuleEffectJson(const ModuleEffectReport& report);

// Precision that pairs with `recall` on the iso-F1 curve:
// p = f1 * r / (2r - f1). Requires 0 < f1 < 1 and r > f1 / 2
// (ContractError otherwise).
double IsoF1Precision(double f1, double recall);

// (recall, precision) points of the curve over `recall_grid`; grid points at
// or left of the pole r = f1 / 2 are dropped.
std::vector<std::pair<double, double>> IsoF1Curve(
    double f1, std::span<const double> recall_grid);

}  // namespace adeval::analysis

#endif  // ADEVAL_RUNS_H_

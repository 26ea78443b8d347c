#ifndef ADEVAL_SHAPLEY_H_
#define ADEVAL_SHAPLEY_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "adeval/features.h"
#include "adeval/forest.h"

namespace adeval::analysis {

struct Attribution {
  std::vector<double> contributions;  // one per feature
  double baseline = 0.0;              // mean prediction over the background
  double prediction = 0.0;            // model output for the explained row
};

// Exact interventional Shapley values by coalition enumeration.
//
//   v(S)  = mean over background rows z of f(x on S, z elsewhere)
//   phi_i = sum over S not containing i of
//           |S|! (d - |S| - 1)! / d! * (v(S + i) - v(S))
//
// All 2^d coalition values are computed once per explained row. Duplicate
// background rows are collapsed into weights and model outputs are memoized
// per composite input, which keeps a forest over a few discrete features
// cheap to explain for hundreds of rows. Not thread-safe (the memo is
// shared); use one explainer per thread.
class ShapleyExplainer {
 public:
  using Model = std::function<double(std::span<const double>)>;

  // Throws ContractError on an empty background, rows of unequal width, or
  // more than 20 features.
  ShapleyExplainer(Model model, std::span<const std::vector<double>> background);

  Attribution Explain(std::span<const double> x);

  double baseline() const { return baseline_; }
  std::size_t num_features() const { return num_features_; }

 private:
  double Evaluate(const std::vector<double>& input);
  double CoalitionValue(std::span<const double> x, std::uint32_t mask);

  Model model_;
  std::size_t num_features_ = 0;
  std::vector<std::vector<double>> background_;  // distinct rows, sorted
  std::vector<double> weights_;                  // multiplicities
  double total_weight_ = 0.0;
  double baseline_ = 0.0;
  std::map<std::vector<double>, double> memo_;
};

// Convenience wrapper for a fitted forest.
Attribution Shapley(const Forest& forest, std::span<const double> x,
                    std::span<const std::vector<double>> background);

// One (run, feature) point of a beeswarm plot.
struct SummaryPoint {
  std::size_t run = 0;
  std::size_t feature = 0;
  double feature_value = 0.0;
  double shap_value = 0.0;
};

struct FeatureImportance {
  std::string feature;
  double mean_abs_shap = 0.0;
};

struct ShapleySummary {
  std::vector<SummaryPoint> points;            // runs x features, run-major
  std::vector<FeatureImportance> ranking;      // by mean |phi|, descending
  bool degenerate = false;                     // every mean |phi| is zero
  double max_efficiency_residual = 0.0;
  std::vector<Attribution> attributions;       // one per run
};

// Fits nothing: explains every row of `features` with the given forest,
// using all rows as the background. Ranking ties break alphabetically.
ShapleySummary SummarizeShapley(const Forest& forest,
                                std::span<const FeatureVector> features);

// One run of the analysis: features plus the target (F1) to explain.
struct AnalysisRow {
  FeatureVector features;
  double target = 0.0;
};

// Fits the forest on the rows and summarizes attributions over the same rows.
struct AnalysisResult {
  Forest forest;
  ShapleySummary summary;
};
AnalysisResult Analyze(std::span<const AnalysisRow> rows,
                       const ForestParams& params, std::uint64_t seed);

struct PermutationReport {
  // category code assigned to AutoEncoding, AutoRegressive, Text-to-Text
  std::vector<std::array<int, 3>> encodings;
  std::vector<std::vector<std::string>> rankings;  // one per encoding
  double exact_match_fraction = 0.0;  // pairs of encodings with equal rankings
  double top2_match_fraction = 0.0;   // pairs whose ordered top-2 agree
  double mean_footrule = 0.0;         // mean Spearman footrule over pairs
  int max_footrule = 0;
};

// Re-runs Analyze under all 6 relabelings of the category codes and compares
// the resulting importance rankings pairwise.
PermutationReport PermutationCheck(std::span<const AnalysisRow> rows,
                                   const ForestParams& params,
                                   std::uint64_t seed);

}  // namespace adeval::analysis

#endif  // ADEVAL_SHAPLEY_H_

#include "adeval/shapley.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "adeval/error.h"

namespace adeval::analysis {

ShapleyExplainer::ShapleyExplainer(
    Model model, std::span<const std::vector<double>> background)
    : model_(std::move(model)) {
  if (background.empty()) {
    throw ContractError("Shapley: background set must not be empty");
  }
  num_features_ = background[0].size();
  if (num_features_ > 20) {
    throw ContractError("Shapley: exact enumeration limited to 20 features");
  }
  std::map<std::vector<double>, double> counts;
  for (const auto& row : background) {
    if (row.size() != num_features_) {
      throw ContractError("Shapley: background rows differ in width");
    }
    counts[row] += 1.0;
  }
  for (auto& [row, w] : counts) {
    background_.push_back(row);
    weights_.push_back(w);
    total_weight_ += w;
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < background_.size(); ++b) {
    sum += weights_[b] * Evaluate(background_[b]);
  }
  baseline_ = sum / total_weight_;
}

double ShapleyExplainer::Evaluate(const std::vector<double>& input) {
  auto it = memo_.find(input);
  if (it != memo_.end()) return it->second;
  const double v = model_(input);
  memo_.emplace(input, v);
  return v;
}

double ShapleyExplainer::CoalitionValue(std::span<const double> x,
                                        std::uint32_t mask) {
  std::vector<double> composite(num_features_);
  double sum = 0.0;
  for (std::size_t b = 0; b < background_.size(); ++b) {
    for (std::size_t i = 0; i < num_features_; ++i) {
      composite[i] = (mask >> i) & 1u ? x[i] : background_[b][i];
    }
    sum += weights_[b] * Evaluate(composite);
  }
  return sum / total_weight_;
}

Attribution ShapleyExplainer::Explain(std::span<const double> x) {
  if (x.size() != num_features_) {
    throw ContractError("Shapley: row width does not match the background");
  }
  const std::size_t d = num_features_;
  const std::uint32_t full = (1u << d) - 1;
  std::vector<double> value(std::size_t{1} << d);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    value[mask] = CoalitionValue(x, mask);
  }

  // weight[s] = s! (d - s - 1)! / d!
  std::vector<double> weight(d);
  for (std::size_t s = 0; s < d; ++s) {
    double w = 1.0 / static_cast<double>(d);
    // 1 / (d * C(d-1, s))
    double binom = 1.0;
    for (std::size_t k = 1; k <= s; ++k) {
      binom = binom * static_cast<double>(d - 1 - s + k) / static_cast<double>(k);
    }
    weight[s] = w / binom;
  }

  Attribution out;
  out.contributions.assign(d, 0.0);
  out.baseline = value[0];
  out.prediction = Evaluate(std::vector<double>(x.begin(), x.end()));
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint32_t bit = 1u << i;
    double phi = 0.0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (mask & bit) continue;
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      phi += weight[size] * (value[mask | bit] - value[mask]);
    }
    out.contributions[i] = phi;
  }
  return out;
}

Attribution Shapley(const Forest& forest, std::span<const double> x,
                    std::span<const std::vector<double>> background) {
  ShapleyExplainer explainer(
      [&forest](std::span<const double> row) { return forest.Predict(row); },
      background);
  return explainer.Explain(x);
}

ShapleySummary SummarizeShapley(const Forest& forest,
                                std::span<const FeatureVector> features) {
  if (features.empty()) throw ContractError("Shapley summary needs >= 1 run");
  std::vector<std::vector<double>> rows;
  rows.reserve(features.size());
  for (const auto& f : features) {
    const auto a = f.AsArray();
    rows.emplace_back(a.begin(), a.end());
  }
  ShapleyExplainer explainer(
      [&forest](std::span<const double> row) { return forest.Predict(row); },
      rows);

  ShapleySummary summary;
  std::map<std::vector<double>, Attribution> cache;
  std::vector<double> abs_sum(kNumFeatures, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto it = cache.find(rows[r]);
    if (it == cache.end()) it = cache.emplace(rows[r], explainer.Explain(rows[r])).first;
    const Attribution& a = it->second;
    double total = a.baseline;
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      summary.points.push_back({r, i, rows[r][i], a.contributions[i]});
      abs_sum[i] += std::abs(a.contributions[i]);
      total += a.contributions[i];
    }
    summary.max_efficiency_residual =
        std::max(summary.max_efficiency_residual, std::abs(total - a.prediction));
    summary.attributions.push_back(a);
  }

  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    summary.ranking.push_back({std::string(kFeatureNames[i]),
                               abs_sum[i] / static_cast<double>(rows.size())});
  }
  std::sort(summary.ranking.begin(), summary.ranking.end(),
            [](const FeatureImportance& a, const FeatureImportance& b) {
              if (a.mean_abs_shap != b.mean_abs_shap) {
                return a.mean_abs_shap > b.mean_abs_shap;
              }
              return a.feature < b.feature;
            });
  summary.degenerate = summary.ranking.front().mean_abs_shap == 0.0;
  return summary;
}

AnalysisResult Analyze(std::span<const AnalysisRow> rows,
                       const ForestParams& params, std::uint64_t seed) {
  Dataset data;
  std::vector<FeatureVector> features;
  for (const auto& row : rows) {
    row.features.Validate();
    const auto a = row.features.AsArray();
    data.Add(a, row.target);
    features.push_back(row.features);
  }
  Forest forest = Forest::Fit(data, params, seed);
  ShapleySummary summary = SummarizeShapley(forest, features);
  return {std::move(forest), std::move(summary)};
}

PermutationReport PermutationCheck(std::span<const AnalysisRow> rows,
                                   const ForestParams& params,
                                   std::uint64_t seed) {
  PermutationReport report;
  std::array<int, 3> codes{0, 1, 2};
  do {
    std::vector<AnalysisRow> relabeled(rows.begin(), rows.end());
    for (auto& r : relabeled) r.features.category = codes[r.features.category];
    const AnalysisResult result = Analyze(relabeled, params, seed);
    std::vector<std::string> ranking;
    for (const auto& fi : result.summary.ranking) ranking.push_back(fi.feature);
    report.encodings.push_back(codes);
    report.rankings.push_back(std::move(ranking));
  } while (std::next_permutation(codes.begin(), codes.end()));

  std::size_t pairs = 0;
  std::size_t exact = 0;
  std::size_t top2 = 0;
  double footrule_sum = 0.0;
  for (std::size_t a = 0; a < report.rankings.size(); ++a) {
    for (std::size_t b = a + 1; b < report.rankings.size(); ++b) {
      const auto& ra = report.rankings[a];
      const auto& rb = report.rankings[b];
      ++pairs;
      if (ra == rb) ++exact;
      if (ra[0] == rb[0] && ra[1] == rb[1]) ++top2;
      int footrule = 0;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const auto j = std::find(rb.begin(), rb.end(), ra[i]) - rb.begin();
        footrule += std::abs(static_cast<int>(i) - static_cast<int>(j));
      }
      footrule_sum += footrule;
      report.max_footrule = std::max(report.max_footrule, footrule);
    }
  }
  report.exact_match_fraction = static_cast<double>(exact) / static_cast<double>(pairs);
  report.top2_match_fraction = static_cast<double>(top2) / static_cast<double>(pairs);
  report.mean_footrule = footrule_sum / static_cast<double>(pairs);
  return report;
}

}  // namespace adeval::analysis

#include "adeval/shapley.h"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "adeval/error.h"
#include "test_util.h"

namespace adeval::analysis {
namespace {

using Rows = std::vector<std::vector<double>>;

Rows RandomRows(Rng& rng, int n, int d) {
  Rows rows;
  for (int i = 0; i < n; ++i) {
    std::vector<double> r;
    for (int k = 0; k < d; ++k) r.push_back(static_cast<double>(rng.UniformIndex(3)));
    rows.push_back(r);
  }
  return rows;
}

// Shapley values by averaging marginal contributions over all d! orderings.
std::vector<double> ByPermutations(const std::function<double(std::span<const double>)>& f,
                                   const std::vector<double>& x, const Rows& background) {
  const std::size_t d = x.size();
  auto value = [&](const std::vector<bool>& on) {
    double sum = 0;
    for (const auto& z : background) {
      std::vector<double> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = on[i] ? x[i] : z[i];
      sum += f(v);
    }
    return sum / static_cast<double>(background.size());
  };
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(d, 0.0);
  int count = 0;
  do {
    std::vector<bool> on(d, false);
    double prev = value(on);
    for (std::size_t i : order) {
      on[i] = true;
      const double cur = value(on);
      phi[i] += cur - prev;
      prev = cur;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : phi) p /= count;
  return phi;
}

TEST(ShapleyTest, AdditiveModelClosedForm) {
  Rng rng(1);
  const Rows bg = RandomRows(rng, 40, 4);
  auto f = [](std::span<const double> v) { return 0.3 * v[0] - 1.7 * v[2]; };
  ShapleyExplainer ex(f, bg);
  double mean0 = 0, mean2 = 0;
  for (const auto& z : bg) {
    mean0 += z[0] / bg.size();
    mean2 += z[2] / bg.size();
  }
  for (int t = 0; t < 10; ++t) {
    const auto x = RandomRows(rng, 1, 4)[0];
    const auto a = ex.Explain(x);
    EXPECT_NEAR(a.contributions[0], 0.3 * (x[0] - mean0), 1e-12);
    EXPECT_EQ(a.contributions[1], 0.0);
    EXPECT_NEAR(a.contributions[2], -1.7 * (x[2] - mean2), 1e-12);
    EXPECT_EQ(a.contributions[3], 0.0);
  }
}

TEST(ShapleyTest, MatchesPermutationDefinition) {
  Rng rng(2);
  const Rows bg = RandomRows(rng, 15, 4);
  auto f = [](std::span<const double> v) {
    return v[0] * v[1] + (v[2] > 1 ? 2.0 : -0.5) * v[3] + std::max(v[0], v[3]);
  };
  ShapleyExplainer ex(f, bg);
  for (int t = 0; t < 5; ++t) {
    const auto x = RandomRows(rng, 1, 4)[0];
    const auto a = ex.Explain(x);
    const auto oracle = ByPermutations(f, x, bg);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.contributions[i], oracle[i], 1e-12);
  }
}

TEST(ShapleyTest, SymmetricFeaturesGetEqualValues) {
  Rng rng(3);
  Rows bg = RandomRows(rng, 20, 3);
  // Make the background symmetric in features 0 and 1.
  const Rows copy = bg;
  for (auto r : copy) {
    std::swap(r[0], r[1]);
    bg.push_back(r);
  }
  auto f = [](std::span<const double> v) { return v[0] * v[1] + v[0] + v[1] + v[2]; };
  ShapleyExplainer ex(f, bg);
  const std::vector<double> x = {2, 2, 0};
  const auto a = ex.Explain(x);
  EXPECT_NEAR(a.contributions[0], a.contributions[1], 1e-12);
}

TEST(ShapleyTest, ForestEfficiencyAndDummy) {
  Rng rng(4);
  Dataset data;
  data.num_features = kNumFeatures;
  Rows rows;
  for (int i = 0; i < 120; ++i) {
    std::array<double, kNumFeatures> x{};
    for (auto& v : x) v = static_cast<double>(rng.UniformIndex(2));
    x[4] = 1.0;  // constant: the forest can never split on it
    data.Add(x, x[0] * 0.3 + x[1] * x[2] * 0.2 + rng.Uniform01() * 0.05);
    rows.emplace_back(x.begin(), x.end());
  }
  ForestParams p;
  p.n_trees = 30;
  const auto forest = Forest::Fit(data, p, 8);
  ASSERT_FALSE(forest.UsedFeatures()[4]);
  for (int i = 0; i < 20; ++i) {
    const auto a = Shapley(forest, rows[i], rows);
    const double total =
        std::accumulate(a.contributions.begin(), a.contributions.end(), a.baseline);
    EXPECT_LT(std::abs(total - a.prediction), 1e-9);
    EXPECT_EQ(a.contributions[4], 0.0);
  }
}

TEST(ShapleyTest, SummaryRankingAndPoints) {
  std::vector<AnalysisRow> rows;
  for (int i = 0; i < 60; ++i) {
    FeatureVector f{i % 3, 1, 0, i % 2, 1, 1};
    rows.push_back({f, 0.5 + 0.2 * f.social});
  }
  ForestParams p;
  p.n_trees = 25;
  const auto result = Analyze(rows, p, 5);
  const auto& s = result.summary;
  EXPECT_EQ(s.points.size(), rows.size() * kNumFeatures);
  EXPECT_EQ(s.ranking.front().feature, "social");
  EXPECT_FALSE(s.degenerate);
  EXPECT_LT(s.max_efficiency_residual, 1e-9);
  // Unused features tie at zero and are ordered by name.
  std::vector<std::string> zeros;
  for (const auto& r : s.ranking) {
    if (r.mean_abs_shap == 0.0) zeros.push_back(r.feature);
  }
  EXPECT_TRUE(std::is_sorted(zeros.begin(), zeros.end()));
  EXPECT_GE(zeros.size(), 4u);
}

TEST(ShapleyTest, ConstantTargetIsDegenerate) {
  std::vector<AnalysisRow> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({{i % 3, 1, 0, i % 2, 0, 1}, 0.42});
  const auto result = Analyze(rows, {}, 1);
  EXPECT_TRUE(result.summary.degenerate);
  for (const auto& p : result.summary.points) EXPECT_EQ(p.shap_value, 0.0);
}

TEST(ShapleyTest, PermutationCheckOnCategoryBlindTarget) {
  std::vector<AnalysisRow> rows;
  Rng rng(6);
  for (int i = 0; i < 90; ++i) {
    FeatureVector f{i % 3, i % 2, (i / 2) % 2, (i / 3) % 2, 0, 1};
    rows.push_back({f, 0.5 + 0.1 * f.social + 0.03 * f.medical});
  }
  ForestParams p;
  p.n_trees = 20;
  const auto report = PermutationCheck(rows, p, 9);
  EXPECT_EQ(report.encodings.size(), 6u);
  EXPECT_EQ(report.exact_match_fraction, 1.0);
  EXPECT_EQ(report.top2_match_fraction, 1.0);
  EXPECT_EQ(report.max_footrule, 0);
}

TEST(ShapleyTest, Errors) {
  EXPECT_THROW(SummarizeShapley(Forest{}, std::vector<FeatureVector>{}), ContractError);
}

}  // namespace
}  // namespace adeval::analysis

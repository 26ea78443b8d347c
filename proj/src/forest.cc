#include "adeval/forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adeval/error.h"
#include "adeval/parallel.h"
#include "adeval/random.h"

namespace adeval::analysis {

double AnchoredMean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double anchor = values[0];
  double offset = 0.0;
  for (double v : values) offset += v - anchor;
  return anchor + offset / static_cast<double>(values.size());
}

void Dataset::Add(std::span<const double> features, double target) {
  if (num_features == 0 && y.empty()) num_features = features.size();
  if (features.size() != num_features) {
    throw ContractError("Dataset::Add: expected " +
                        std::to_string(num_features) + " features, got " +
                        std::to_string(features.size()));
  }
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(target);
}

double RegressionTree::Predict(std::span<const double> x) const {
  int n = 0;
  while (nodes_[n].feature >= 0) {
    const Node& node = nodes_[n];
    n = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes_[n].value;
}

int RegressionTree::depth() const {
  // Nodes are stored parent-before-child, so one forward pass suffices.
  std::vector<int> d(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (nodes_[i].feature >= 0) {
      d[nodes_[i].left] = d[nodes_[i].right] = d[i] + 1;
    }
  }
  return deepest;
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const ForestParams& params,
              std::size_t features_per_split, Rng& rng)
      : data_(data),
        params_(params),
        features_per_split_(features_per_split),
        rng_(rng) {}

  RegressionTree Build(std::vector<std::size_t> rows) {
    RegressionTree tree;
    tree_ = &tree;
    Grow(rows, 0);
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  int Grow(std::vector<std::size_t>& rows, int depth) {
    const int id = static_cast<int>(tree_->nodes_.size());
    tree_->nodes_.emplace_back();

    std::vector<double> targets(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) targets[i] = data_.y[rows[i]];
    const double mean = AnchoredMean(targets);
    {
      auto& node = tree_->nodes_[id];
      node.value = mean;
      node.rows = static_cast<int>(rows.size());
    }

    const auto min_leaf = static_cast<std::size_t>(std::max(1, params_.min_leaf));
    if (params_.max_depth > 0 && depth >= params_.max_depth) return id;
    if (rows.size() < 2 * min_leaf) return id;

    double sse = 0.0;
    for (double t : targets) sse += (t - mean) * (t - mean);
    if (!(sse > 0.0)) return id;

    const Split split = FindSplit(rows, mean, sse, min_leaf);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (data_.x[r * data_.num_features + split.feature] <= split.threshold
           ? left
           : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int l = Grow(left, depth + 1);
    const int r = Grow(right, depth + 1);
    auto& node = tree_->nodes_[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  Split FindSplit(const std::vector<std::size_t>& rows, double mean,
                  double sse, std::size_t min_leaf) {
    const std::size_t d = data_.num_features;
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    Shuffle(order.begin(), order.end(), rng_);

    // Gains below this are rounding noise, not structure.
    const double min_gain = 1e-12 * sse;
    Split best;
    std::vector<std::pair<double, double>> column(rows.size());
    for (std::size_t k = 0; k < d; ++k) {
      if (k >= features_per_split_ && best.feature >= 0) break;
      const int f = order[k];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        column[i] = {data_.x[rows[i] * d + f], data_.y[rows[i]] - mean};
      }
      std::sort(column.begin(), column.end());
      double total = 0.0;
      for (const auto& [v, t] : column) total += t;

      const double n = static_cast<double>(rows.size());
      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_sum += column[i].second;
        if (column[i].first == column[i + 1].first) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = column.size() - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) -
                            total * total / n;
        if (gain > min_gain && gain > best.gain) {
          best.feature = f;
          best.threshold = 0.5 * (column[i].first + column[i + 1].first);
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  const ForestParams& params_;
  std::size_t features_per_split_;
  Rng& rng_;
  RegressionTree* tree_ = nullptr;
};

Forest Forest::Fit(const Dataset& data, const ForestParams& params,
                   std::uint64_t seed) {
  if (data.rows() < 2) {
    throw ContractError("Forest::Fit needs at least 2 rows, got " +
                        std::to_string(data.rows()));
  }
  if (params.n_trees < 1) throw ContractError("Forest::Fit: n_trees < 1");
  const std::size_t d = data.num_features;
  std::size_t per_split = params.features_per_split > 0
                              ? static_cast<std::size_t>(params.features_per_split)
                              : d;
  per_split = std::min(per_split, d);

  Forest forest;
  forest.num_features_ = d;
  forest.trees_.resize(static_cast<std::size_t>(params.n_trees));
  ParallelFor(
      forest.trees_.size(),
      [&](std::size_t t) {
        Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> rows(data.rows());
        if (params.bootstrap) {
          for (auto& r : rows) r = rng.UniformIndex(data.rows());
        } else {
          std::iota(rows.begin(), rows.end(), 0);
        }
        TreeBuilder builder(data, params, per_split, rng);
        forest.trees_[t] = builder.Build(std::move(rows));
      },
      params.threads);
  return forest;
}

double Forest::Predict(std::span<const double> x) const {
  if (x.size() != num_features_) {
    throw ContractError("Forest::Predict: expected " +
                        std::to_string(num_features_) + " features");
  }
  const double anchor = trees_[0].Predict(x);
  double offset = 0.0;
  for (std::size_t t = 1; t < trees_.size(); ++t) {
    offset += trees_[t].Predict(x) - anchor;
  }
  return anchor + offset / static_cast<double>(trees_.size());
}

std::vector<bool> Forest::UsedFeatures() const {
  std::vector<bool> used(num_features_, false);
  for (const auto& tree : trees_) {
    for (const auto& node : tree.nodes()) {
      if (node.feature >= 0) used[node.feature] = true;
    }
  }
  return used;
}

}  // namespace adeval::analysis

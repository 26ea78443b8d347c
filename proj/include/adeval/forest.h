#ifndef ADEVAL_FOREST_H_
#define ADEVAL_FOREST_H_

#include <cstdint>
#include <span>
#include <vector>

namespace adeval::analysis {

struct ForestParams {
  int n_trees = 200;
  int max_depth = 0;           // 0: unlimited
  int min_leaf = 2;            // minimum training rows per leaf
  int features_per_split = 0;  // 0: all features
  bool bootstrap = true;
  unsigned threads = 0;        // 0: hardware concurrency

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

// Row-major design matrix.
struct Dataset {
  std::size_t num_features = 0;
  std::vector<double> x;  // rows * num_features
  std::vector<double> y;

  std::size_t rows() const { return y.size(); }
  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * num_features, num_features};
  }
  void Add(std::span<const double> features, double target);
};

// Axis-aligned regression tree; leaves store the mean target of their rows.
class RegressionTree {
 public:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    double value = 0.0;
    int rows = 0;
  };

  double Predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  int depth() const;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

// Bagged ensemble of regression trees. Tree t is grown from its own stream
// seeded with DeriveSeed(seed, t), so the forest is identical whatever the
// number of threads.
class Forest {
 public:
  // Each tree: bootstrap sample of the rows (when enabled), then greedy
  // variance-reduction splits over a fresh random subset of features at every
  // node. When no sampled feature yields a valid split, the remaining
  // features are inspected before giving up. A node becomes a leaf at
  // max_depth, when it has fewer than 2 * min_leaf rows, or when no split
  // reduces the squared error.
  //
  // Throws ContractError on fewer than 2 rows.
  static Forest Fit(const Dataset& data, const ForestParams& params,
                    std::uint64_t seed);

  // Mean of the tree outputs.
  double Predict(std::span<const double> x) const;

  // used[i] is true when some tree splits on feature i.
  std::vector<bool> UsedFeatures() const;

  const std::vector<RegressionTree>& trees() const { return trees_; }
  std::size_t num_features() const { return num_features_; }

 private:
  std::vector<RegressionTree> trees_;
  std::size_t num_features_ = 0;
};

// Mean that returns the common value exactly when all inputs are equal:
// values are summed as offsets from the first one.
double AnchoredMean(std::span<const double> values);

}  // namespace adeval::analysis

#endif  // ADEVAL_FOREST_H_

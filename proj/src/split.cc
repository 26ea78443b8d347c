#include "adeval/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adeval/error.h"
#include "adeval/random.h"

namespace adeval::corpus {

std::array<std::size_t, 3> Apportion(std::size_t n, const SplitRatios& ratios,
                                     const std::array<int, 3>& prior_extra,
                                     const std::array<int, 3>& tie_order) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double quota = r[k] * static_cast<double>(n);
    // Guard against 0.1 * 100 = 10.000000000000002 style rounding.
    const double rounded = std::round(quota);
    const double exact = std::abs(quota - rounded) < 1e-9 ? rounded : quota;
    counts[k] = static_cast<std::size_t>(std::floor(exact));
    remainder[k] = exact - std::floor(exact);
    assigned += counts[k];
  }
  std::array<int, 3> order{0, 1, 2};
  std::array<int, 3> rank{};
  for (int p = 0; p < 3; ++p) rank[tie_order[p]] = p;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(remainder[a] - remainder[b]) > 1e-12) {
      return remainder[a] > remainder[b];
    }
    if (prior_extra[a] != prior_extra[b]) return prior_extra[a] < prior_extra[b];
    return rank[a] < rank[b];
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) {
    ++counts[order[i % 3]];
  }
  return counts;
}

CorpusSplit StratifiedSplit(std::span<const Document> docs,
                            const SplitRatios& ratios, std::uint64_t seed) {
  if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0) {
    throw ContractError("split ratios must be positive");
  }
  if (std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw ContractError("split ratios must sum to 1");
  }

  std::vector<std::string> positive;
  std::vector<std::string> negative;
  for (const Document& d : docs) {
    (d.has_ade() ? positive : negative).push_back(d.id);
  }

  Rng order_rng(DeriveSeed(seed, "split/tie-order"));
  std::array<int, 3> tie_order{0, 1, 2};
  Shuffle(tie_order.begin(), tie_order.end(), order_rng);

  CorpusSplit out;
  std::array<int, 3> extra{};
  auto split_stratum = [&](std::vector<std::string> ids, std::string_view tag) {
    if (ids.empty()) return;
    if (ids.size() < 3) {
      throw ContractError("stratum '" + std::string(tag) + "' has " +
                          std::to_string(ids.size()) +
                          " documents, fewer than the 3 splits");
    }
    std::sort(ids.begin(), ids.end());
    Rng rng(DeriveSeed(seed, std::string("split/") + std::string(tag)));
    Shuffle(ids.begin(), ids.end(), rng);

    const auto counts = Apportion(ids.size(), ratios, extra, tie_order);
    const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
    for (int k = 0; k < 3; ++k) {
      if (static_cast<double>(counts[k]) >
          std::floor(r[k] * static_cast<double>(ids.size()) + 1e-9)) {
        ++extra[k];
      }
    }
    auto it = ids.begin();
    for (auto* part : {&out.train, &out.val, &out.test}) {
      const std::size_t k = part == &out.train ? 0 : part == &out.val ? 1 : 2;
      part->insert(part->end(), it, it + counts[k]);
      it += counts[k];
    }
  };
  split_stratum(std::move(positive), "positive");
  split_stratum(std::move(negative), "negative");

  for (auto* part : {&out.train, &out.val, &out.test}) {
    std::sort(part->begin(), part->end());
  }
  return out;
}

}  // namespace adeval::corpus

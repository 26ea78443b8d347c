#ifndef ADEVAL_SPLIT_H_
#define ADEVAL_SPLIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adeval/corpus.h"

namespace adeval::corpus {

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

// Largest-remainder apportionment of `n` items over `ratios`. Fractional
// remainders are compared exactly; ties go to the split that received fewer
// extra units in `prior_extra` (used to hand the negative stratum its
// remainders after the positive one), then to the earlier position in
// `tie_order`.
std::array<std::size_t, 3> Apportion(std::size_t n, const SplitRatios& ratios,
                                     const std::array<int, 3>& prior_extra,
                                     const std::array<int, 3>& tie_order);

// Splits documents with and without ADE mentions independently by the same
// ratios, so every part keeps the corpus' positive/negative proportion.
// Deterministic for a fixed seed; ids inside each part are sorted.
//
// Throws ContractError if the ratios are not positive or do not sum to 1
// (within 1e-9), or if a non-empty stratum has fewer documents than parts.
CorpusSplit StratifiedSplit(std::span<const Document> docs,
                            const SplitRatios& ratios, std::uint64_t seed);

}  // namespace adeval::corpus

#endif  // ADEVAL_SPLIT_H_

#ifndef ADEVAL_SPAN_H_
#define ADEVAL_SPAN_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace adeval {

// Character offsets count Unicode scalar values.
using CharIndex = std::int64_t;

// Half-open character interval [start, end).
struct Span {
  CharIndex start = 0;
  CharIndex end = 0;

  CharIndex length() const { return end - start; }
  bool Overlaps(const Span& other) const {
    return start < other.end && other.start < end;
  }
  CharIndex Overlap(const Span& other) const {
    const CharIndex lo = start > other.start ? start : other.start;
    const CharIndex hi = end < other.end ? end : other.end;
    return hi > lo ? hi - lo : 0;
  }

  friend auto operator<=>(const Span&, const Span&) = default;
};

// Merges overlapping or identical spans into their unions. Touching spans
// ([0,4) and [4,8)) stay separate. Output is sorted and pairwise disjoint.
std::vector<Span> MergeSpans(std::vector<Span> spans);

// True when `spans` is sorted by start and pairwise non-overlapping.
bool IsSortedDisjoint(std::span<const Span> spans);

}  // namespace adeval

#endif  // ADEVAL_SPAN_H_

#include "adeval/span.h"

#include <algorithm>

namespace adeval {

std::vector<Span> MergeSpans(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> out;
  out.reserve(spans.size());
  for (const Span& s : spans) {
    if (!out.empty() && s.start < out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

bool IsSortedDisjoint(std::span<const Span> spans) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].start >= spans[i].end) return false;
    if (i > 0 && spans[i].start < spans[i - 1].end) return false;
  }
  return true;
}

}  // namespace adeval

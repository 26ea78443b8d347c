#ifndef ADEVAL_ALIGNMENT_H_
#define ADEVAL_ALIGNMENT_H_

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adeval/span.h"

namespace adeval::alignment {

// Decoded text of a generative model: ADE mentions separated by semicolons.
struct GenerationOutput {
  std::string raw;
  std::vector<std::string> items;  // trimmed, never empty

  static GenerationOutput Parse(std::string raw);
};

struct Discarded {
  std::size_t item_index = 0;
  std::string text;

  friend bool operator==(const Discarded&, const Discarded&) = default;
};

struct AlignmentResult {
  std::vector<Span> spans;  // in emission order, may overlap
  std::vector<Discarded> discarded;
};

// Maps each generated item back onto `text`:
//   1. an item found contiguously in the text becomes one span;
//   2. otherwise the item's words are consumed left to right, each time
//      taking the longest word run found contiguously in the text; every run
//      becomes a span and words found nowhere are discarded.
// Matching ignores ASCII case, collapses whitespace runs, and never cuts
// through a word of the source ("ache" does not match inside "headache").
// Among several occurrences the leftmost one not overlapping an earlier span
// of this document wins, else the leftmost.
AlignmentResult Align(std::string_view text, const GenerationOutput& output);

// Merges overlapping and duplicate spans into sorted, disjoint unions.
std::vector<Span> DedupeSpans(std::vector<Span> spans);

}  // namespace adeval::alignment

#endif  // ADEVAL_ALIGNMENT_H_

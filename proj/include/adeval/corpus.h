#ifndef ADEVAL_CORPUS_H_
#define ADEVAL_CORPUS_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adeval/span.h"

namespace adeval::corpus {

inline constexpr std::string_view kDefaultLabel = "ADE";

// One annotated entity. Discontinuous mentions carry several fragments,
// sorted by start and pairwise non-overlapping.
struct Mention {
  std::vector<Span> fragments;
  std::string label = std::string(kDefaultLabel);

  bool discontinuous() const { return fragments.size() >= 2; }
  friend bool operator==(const Mention&, const Mention&) = default;
};

struct Document {
  std::string id;
  std::string text;  // UTF-8
  std::vector<Mention> mentions;

  bool has_ade() const { return !mentions.empty(); }
};

struct Token {
  std::string text;
  CharIndex start = 0;
  CharIndex end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class BioLabel : char { kB = 'B', kI = 'I', kO = 'O' };

char ToChar(BioLabel label);
BioLabel BioLabelFromChar(char c);  // throws ContractError

// Parses brat-style standoff annotations (the contents of a .ann file) against
// `text`. Only text-bound lines (`T...`) are read; other record kinds (notes,
// relations, attributes, comments) are skipped. Mentions are kept verbatim,
// overlapping and discontinuous ones included. Throws ParseError on a
// malformed T line and RangeError on an offset outside the text.
Document ImportStandoff(std::string id, std::string text,
                        std::string_view annotations,
                        std::string_view source_name = {});

// Keeps mentions whose label is in `keep` and relabels them to `relabel`
// (unless empty).
void FilterLabels(Document& doc, std::span<const std::string> keep,
                  std::string_view relabel = kDefaultLabel);

// Splits discontinuous mentions into one span per fragment, then merges all
// overlapping or identical spans into their union. The result is sorted,
// disjoint and duplicate-free.
std::vector<Span> Disambiguate(std::span<const Mention> mentions);

// Maximal runs of alphanumeric characters are tokens; every other
// non-whitespace character is a token of its own.
std::vector<Token> Tokenize(std::string_view text);

// A token that shares at least one character with a span belongs to it. The
// first such token per span is B, later ones I. Throws ContractError when the
// spans are not sorted and disjoint.
std::vector<BioLabel> SpansToBio(std::span<const Token> tokens,
                                 std::span<const Span> spans);

struct BioDecoding {
  std::vector<Span> spans;
  // Number of I labels that followed O (or started the sequence) and were
  // promoted to B.
  std::size_t repaired = 0;
};

// Each maximal B I* run becomes one span from the first token's start to the
// last token's end. Throws ContractError when the lengths differ.
BioDecoding BioToSpans(std::span<const Token> tokens,
                       std::span<const BioLabel> labels);

// Normalized corpus format: one JSON object per line,
// {"id", "text", "mentions": [{"fragments": [[s, e], ...], "label"}]}.
std::vector<Document> ReadJsonl(std::istream& in,
                                std::string_view source_name = {});
void WriteJsonl(std::ostream& out, std::span<const Document> docs);

// Validates every fragment against the text and the per-mention ordering
// invariants. Throws RangeError / ContractError.
void Validate(const Document& doc);

}  // namespace adeval::corpus

#endif  // ADEVAL_CORPUS_H_

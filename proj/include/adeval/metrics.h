#ifndef ADEVAL_METRICS_H_
#define ADEVAL_METRICS_H_

#include <span>
#include <string>

#include "adeval/span.h"

namespace adeval::metrics {

// Entity-level tally. `classify` fills the relaxed view (inc = 0); the strict
// view reinterprets every partial as incorrect.
struct MatchCounts {
  long cor = 0;
  long par = 0;
  long inc = 0;
  long mis = 0;
  long spu = 0;

  long gold() const { return cor + par + inc + mis; }
  long predicted() const { return cor + par + inc + spu; }

  MatchCounts& operator+=(const MatchCounts& o) {
    cor += o.cor;
    par += o.par;
    inc += o.inc;
    mis += o.mis;
    spu += o.spu;
    return *this;
  }
  friend MatchCounts operator+(MatchCounts a, const MatchCounts& b) {
    return a += b;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Scores&, const Scores&) = default;
};

// One-to-one matching of predictions against gold spans:
//   pass 1: a prediction equal to an unmatched gold span is correct;
//   pass 2: remaining predictions, in start order, take the unmatched gold
//           span with the largest character overlap (ties: earliest gold) and
//           count as partial;
// leftover predictions are spurious and leftover gold spans missing.
// Both inputs must be sorted and disjoint (ContractError otherwise).
MatchCounts Classify(std::span<const Span> gold, std::span<const Span> pred);

// Recall    = (Cor + 0.5 Par) / (Cor + Par + Inc + Mis)
// Precision = (Cor + 0.5 Par) / (Cor + Par + Inc + Spu)
// F1        = harmonic mean; a zero denominator gives 0.
Scores RelaxedScores(const MatchCounts& c);
// Same formulas with partial matches counted as incorrect.
Scores StrictScores(const MatchCounts& c);

MatchCounts CorpusCounts(std::span<const MatchCounts> per_document);

// Score report: {"counts": {...}, "relaxed": {...}, "strict": {...}}.
std::string ReportJson(const MatchCounts& c);
// scheme,precision,recall,f1,cor,par,inc,mis,spu with one row per view.
std::string ReportCsv(const MatchCounts& c);

}  // namespace adeval::metrics

#endif  // ADEVAL_METRICS_H_

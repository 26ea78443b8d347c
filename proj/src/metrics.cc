#include "adeval/metrics.h"

#include <numeric>
#include <sstream>
#include <vector>

#include "adeval/error.h"
#include "adeval/format.h"
#include "json.hpp"

namespace adeval::metrics {

namespace {

Scores FromParts(double numerator, double gold_total, double pred_total) {
  Scores s;
  s.recall = gold_total > 0 ? numerator / gold_total : 0.0;
  s.precision = pred_total > 0 ? numerator / pred_total : 0.0;
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

MatchCounts StrictView(const MatchCounts& c) {
  MatchCounts s = c;
  s.inc += s.par;
  s.par = 0;
  return s;
}

nlohmann::ordered_json ScoresJson(const Scores& s) {
  nlohmann::ordered_json j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

}  // namespace

MatchCounts Classify(std::span<const Span> gold, std::span<const Span> pred) {
  if (!IsSortedDisjoint(gold) || !IsSortedDisjoint(pred)) {
    throw ContractError("Classify: gold and predicted spans must be sorted and disjoint");
  }
  MatchCounts c;
  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> pred_used(pred.size(), false);

  // Pass 1: exact matches. Both lists are sorted and disjoint, so a merge
  // walk finds every equal pair.
  for (std::size_t g = 0, p = 0; g < gold.size() && p < pred.size();) {
    if (gold[g] == pred[p]) {
      gold_used[g] = pred_used[p] = true;
      ++c.cor;
      ++g;
      ++p;
    } else if (gold[g] < pred[p]) {
      ++g;
    } else {
      ++p;
    }
  }

  // Pass 2: largest overlap with a still-unmatched gold span.
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (pred_used[p]) continue;
    std::size_t best = gold.size();
    CharIndex best_overlap = 0;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (gold[g].start >= pred[p].end) break;
      if (gold_used[g]) continue;
      const CharIndex ov = gold[g].Overlap(pred[p]);
      if (ov > best_overlap) {
        best_overlap = ov;
        best = g;
      }
    }
    if (best < gold.size()) {
      gold_used[best] = pred_used[p] = true;
      ++c.par;
    } else {
      ++c.spu;
    }
  }
  for (bool used : gold_used) {
    if (!used) ++c.mis;
  }
  return c;
}

Scores RelaxedScores(const MatchCounts& c) {
  return FromParts(static_cast<double>(c.cor) + 0.5 * static_cast<double>(c.par),
                   static_cast<double>(c.gold()),
                   static_cast<double>(c.predicted()));
}

Scores StrictScores(const MatchCounts& c) {
  const MatchCounts s = StrictView(c);
  return FromParts(static_cast<double>(s.cor), static_cast<double>(s.gold()),
                   static_cast<double>(s.predicted()));
}

MatchCounts CorpusCounts(std::span<const MatchCounts> per_document) {
  return std::accumulate(per_document.begin(), per_document.end(),
                         MatchCounts{});
}

std::string ReportJson(const MatchCounts& c) {
  nlohmann::ordered_json j;
  j["relaxed"] = ScoresJson(RelaxedScores(c));
  j["strict"] = ScoresJson(StrictScores(c));
  j["counts"] = {{"cor", c.cor}, {"par", c.par}, {"inc", c.inc},
                 {"mis", c.mis}, {"spu", c.spu}};
  return j.dump(2) + "\n";
}

std::string ReportCsv(const MatchCounts& c) {
  std::ostringstream out;
  out << "scheme,precision,recall,f1,cor,par,inc,mis,spu\n";
  auto row = [&](const char* name, const Scores& s, const MatchCounts& v) {
    out << name << ',' << FormatDouble(s.precision) << ','
        << FormatDouble(s.recall) << ',' << FormatDouble(s.f1) << ',' << v.cor
        << ',' << v.par << ',' << v.inc << ',' << v.mis << ',' << v.spu
        << '\n';
  };
  row("relaxed", RelaxedScores(c), c);
  row("strict", StrictScores(c), StrictView(c));
  return out.str();
}

}  // namespace adeval::metrics

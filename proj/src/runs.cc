#include "adeval/runs.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "adeval/error.h"
#include "adeval/format.h"
#include "json.hpp"

namespace adeval::analysis {

namespace {

using Json = nlohmann::ordered_json;

metrics::Scores ScoresFromJson(const nlohmann::json& j) {
  metrics::Scores s;
  s.precision = j.at("precision").get<double>();
  s.recall = j.at("recall").get<double>();
  s.f1 = j.at("f1").get<double>();
  for (double v : {s.precision, s.recall, s.f1}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ContractError("score outside [0, 1]");
    }
  }
  return s;
}

Json ScoresToJson(const metrics::Scores& s) {
  Json j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

Json MeanStdJson(const MeanStd& m) {
  Json j;
  j["mean"] = m.mean;
  j["std"] = m.std;
  return j;
}

std::string Cell(const MeanStd& m) {
  return FormatFixed(100.0 * m.mean, 2) + " ± " + FormatFixed(100.0 * m.std, 2);
}

std::string PadRight(const std::string& s, std::size_t width) {
  // Width is counted in scalar values so "±" occupies one column.
  std::size_t len = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++len;
  }
  return len >= width ? s : s + std::string(width - len, ' ');
}

std::string Key(const std::string& model, const std::string& dataset) {
  return model + "/" + dataset;
}

}  // namespace

std::vector<RunRecord> ReadRuns(std::istream& in, std::string_view source_name) {
  const std::string source(source_name);
  std::vector<RunRecord> runs;
  std::set<std::tuple<std::string, long, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RunRecord run;
    try {
      const auto j = nlohmann::json::parse(line);
      run.model = j.at("model").get<std::string>();
      run.dataset = j.at("dataset").get<std::string>();
      run.seed = j.at("seed").get<long>();
      run.features = FeatureVector::FromJson(j.at("features"));
      run.relaxed = ScoresFromJson(j.at("relaxed"));
      run.strict = ScoresFromJson(j.at("strict"));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const std::logic_error& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!seen.emplace(run.model, run.seed, run.dataset).second) {
      throw ParseError(source, line_no,
                       "duplicate run (" + run.model + ", seed " +
                           std::to_string(run.seed) + ", " + run.dataset + ")");
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string RunToJsonLine(const RunRecord& run) {
  Json j;
  j["model"] = run.model;
  j["dataset"] = run.dataset;
  j["seed"] = run.seed;
  j["features"] = run.features.ToJson();
  j["relaxed"] = ScoresToJson(run.relaxed);
  j["strict"] = ScoresToJson(run.strict);
  return j.dump();
}

MeanStd ComputeMeanStd(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return out;
}

std::vector<AggregateRow> AggregateRuns(std::span<const RunRecord> runs) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>>
      groups;
  for (const auto& r : runs) {
    auto key = std::make_pair(r.model, r.dataset);
    auto& g = groups[key];
    if (g.empty()) order.push_back(key);
    g.push_back(&r);
  }
  std::vector<AggregateRow> rows;
  for (const auto& key : order) {
    const auto& g = groups[key];
    auto stat = [&](auto field) {
      std::vector<double> v;
      for (const RunRecord* r : g) v.push_back(field(*r));
      return ComputeMeanStd(v);
    };
    AggregateRow row;
    row.model = key.first;
    row.dataset = key.second;
    row.seeds = g.size();
    row.single_seed = g.size() < 2;
    row.relaxed_f1 = stat([](const RunRecord& r) { return r.relaxed.f1; });
    row.relaxed_p = stat([](const RunRecord& r) { return r.relaxed.precision; });
    row.relaxed_r = stat([](const RunRecord& r) { return r.relaxed.recall; });
    row.strict_f1 = stat([](const RunRecord& r) { return r.strict.f1; });
    row.strict_p = stat([](const RunRecord& r) { return r.strict.precision; });
    row.strict_r = stat([](const RunRecord& r) { return r.strict.recall; });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatAggregateTable(std::span<const AggregateRow> rows) {
  std::vector<std::string> datasets;
  for (const auto& r : rows) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
  }
  std::size_t name_width = 5;
  for (const auto& r : rows) {
    name_width = std::max(name_width, r.model.size() + (r.single_seed ? 1 : 0));
  }
  name_width += 2;
  constexpr std::size_t kCell = 15;

  std::ostringstream out;
  bool flagged = false;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    if (d > 0) out << '\n';
    out << "Dataset: " << datasets[d] << '\n';
    out << std::string(name_width, ' ') << PadRight("Relaxed", 3 * kCell)
        << "Strict\n";
    out << PadRight("Model", name_width);
    for (int k = 0; k < 2; ++k) {
      out << PadRight("F1", kCell) << PadRight("P", kCell)
          << (k == 0 ? PadRight("R", kCell) : std::string("R"));
    }
    out << '\n';
    for (const auto& r : rows) {
      if (r.dataset != datasets[d]) continue;
      flagged = flagged || r.single_seed;
      out << PadRight(r.model + (r.single_seed ? "*" : ""), name_width)
          << PadRight(Cell(r.relaxed_f1), kCell)
          << PadRight(Cell(r.relaxed_p), kCell)
          << PadRight(Cell(r.relaxed_r), kCell)
          << PadRight(Cell(r.strict_f1), kCell)
          << PadRight(Cell(r.strict_p), kCell) << Cell(r.strict_r) << '\n';
    }
  }
  if (flagged) out << "\n* single seed: standard deviation not defined, shown as 0\n";
  return out.str();
}

std::string AggregateCsv(std::span<const AggregateRow> rows) {
  std::ostringstream out;
  out << "model,dataset,seeds";
  for (const char* scheme : {"relaxed", "strict"}) {
    for (const char* m : {"f1", "precision", "recall"}) {
      out << ',' << scheme << '_' << m << "_mean," << scheme << '_' << m
          << "_std";
    }
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.model << ',' << r.dataset << ',' << r.seeds;
    for (const MeanStd* m : {&r.relaxed_f1, &r.relaxed_p, &r.relaxed_r,
                             &r.strict_f1, &r.strict_p, &r.strict_r}) {
      out << ',' << FormatDouble(m->mean) << ',' << FormatDouble(m->std);
    }
    out << '\n';
  }
  return out.str();
}

std::string AggregateJson(std::span<const AggregateRow> rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["model"] = r.model;
    j["dataset"] = r.dataset;
    j["seeds"] = r.seeds;
    j["single_seed"] = r.single_seed;
    j["relaxed"] = {{"f1", MeanStdJson(r.relaxed_f1)},
                    {"precision", MeanStdJson(r.relaxed_p)},
                    {"recall", MeanStdJson(r.relaxed_r)}};
    j["strict"] = {{"f1", MeanStdJson(r.strict_f1)},
                   {"precision", MeanStdJson(r.strict_p)},
                   {"recall", MeanStdJson(r.strict_r)}};
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

ModuleEffectReport ModuleEffect(std::span<const AggregateRow> base,
                                std::span<const AggregateRow> augmented) {
  ModuleEffectReport report;
  auto find = [](std::span<const AggregateRow> rows, const AggregateRow& key)
      -> const AggregateRow* {
    for (const auto& r : rows) {
      if (r.model == key.model && r.dataset == key.dataset) return &r;
    }
    return nullptr;
  };
  for (const auto& b : base) {
    const AggregateRow* a = find(augmented, b);
    if (a == nullptr) {
      report.only_base.push_back(Key(b.model, b.dataset));
      continue;
    }
    report.deltas.push_back(
        {b.model, b.dataset, 100.0 * (a->relaxed_p.mean - b.relaxed_p.mean),
         100.0 * (a->relaxed_r.mean - b.relaxed_r.mean),
         100.0 * (a->relaxed_f1.mean - b.relaxed_f1.mean)});
  }
  for (const auto& a : augmented) {
    if (find(base, a) == nullptr) {
      report.only_augmented.push_back(Key(a.model, a.dataset));
    }
  }
  if (report.deltas.empty()) {
    throw ContractError("module effect: base and augmented runs share no model");
  }
  return report;
}

std::string ModuleEffectCsv(const ModuleEffectReport& report) {
  std::ostringstream out;
  out << "model,dataset,delta_precision,delta_recall,delta_f1\n";
  for (const auto& d : report.deltas) {
    out << d.model << ',' << d.dataset << ',' << FormatDouble(d.delta_precision)
        << ',' << FormatDouble(d.delta_recall) << ',' << FormatDouble(d.delta_f1)
        << '\n';
  }
  for (const auto& k : report.only_base) out << "# excluded (base only): " << k << '\n';
  for (const auto& k : report.only_augmented) {
    out << "# excluded (augmented only): " << k << '\n';
  }
  return out.str();
}

std::string ModuleEffectJson(const ModuleEffectReport& report) {
  Json j;
  j["deltas"] = Json::array();
  for (const auto& d : report.deltas) {
    Json row;
    row["model"] = d.model;
    row["dataset"] = d.dataset;
    row["delta_precision"] = d.delta_precision;
    row["delta_recall"] = d.delta_recall;
    row["delta_f1"] = d.delta_f1;
    j["deltas"].push_back(std::move(row));
  }
  j["excluded"] = {{"base_only", report.only_base},
                   {"augmented_only", report.only_augmented}};
  return j.dump(2) + "\n";
}

double IsoF1Precision(double f1, double recall) {
  if (!(f1 > 0.0 && f1 < 1.0)) {
    throw ContractError("iso-F1: f1 must lie in (0, 1)");
  }
  if (!(recall > f1 / 2.0)) {
    throw ContractError("iso-F1: recall must exceed f1 / 2");
  }
  return f1 * recall / (2.0 * recall - f1);
}

std::vector<std::pair<double, double>> IsoF1Curve(
    double f1, std::span<const double> recall_grid) {
  if (!(f1 > 0.0 && f1 < 1.0)) {
    throw ContractError("iso-F1: f1 must lie in (0, 1)");
  }
  std::vector<std::pair<double, double>> points;
  for (double r : recall_grid) {
    if (!(r > f1 / 2.0)) continue;
    points.emplace_back(r, IsoF1Precision(f1, r));
  }
  return points;
}

}  // namespace adeval::analysis

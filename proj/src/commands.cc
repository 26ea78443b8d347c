#include "adeval/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "adeval/alignment.h"
#include "adeval/error.h"
#include "adeval/features.h"
#include "adeval/format.h"
#include "adeval/parallel.h"
#include "adeval/plot.h"
#include "adeval/random.h"
#include "adeval/runs.h"
#include "adeval/shapley.h"
#include "adeval/split.h"
#include "adeval/text_stats.h"
#include "adeval/utf8.h"
#include "json.hpp"

namespace adeval::harness {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using analysis::RunRecord;

// Artifacts staged in memory; nothing touches the disk until Commit().
class Staging {
 public:
  explicit Staging(std::string out_dir) : out_dir_(std::move(out_dir)) {}

  void Add(const fs::path& relative, std::string content) {
    files_.emplace_back((fs::path(out_dir_) / relative).string(), std::move(content));
  }

  CommandResult Commit(std::vector<std::string> notes = {}) {
    CommandResult result;
    for (const auto& [path, content] : files_) {
      WriteFileAtomic(path, content);
      result.artifacts.push_back(path);
    }
    result.notes = std::move(notes);
    return result;
  }

 private:
  std::string out_dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

void RequireFile(const std::string& path, const std::string& what) {
  if (path.empty()) throw ContractError("config: no " + what + " given");
  if (!fs::is_regular_file(path)) {
    throw ContractError("config: " + what + " '" + path + "' does not exist");
  }
}

std::ifstream Open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot open '" + path + "'");
  return in;
}

std::vector<corpus::Document> LoadCorpus(const std::string& path) {
  RequireFile(path, "corpus file");
  auto in = Open(path);
  return corpus::ReadJsonl(in, path);
}

analysis::ModelRegistry LoadRegistry(const JobConfig& cfg) {
  if (cfg.registry.empty()) return analysis::ModelRegistry::Bundled();
  RequireFile(cfg.registry, "model registry");
  auto in = Open(cfg.registry);
  return analysis::ModelRegistry::Load(in, cfg.registry);
}

std::vector<RunRecord> LoadRunFiles(const std::vector<std::string>& files) {
  std::vector<RunRecord> runs;
  std::set<std::tuple<std::string, long, std::string>> seen;
  for (const auto& path : files) {
    RequireFile(path, "run-record file");
    auto in = Open(path);
    for (auto& r : analysis::ReadRuns(in, path)) {
      if (!seen.emplace(r.model, r.seed, r.dataset).second) {
        throw ParseError(path, 0,
                         "run (" + r.model + ", seed " + std::to_string(r.seed) +
                             ", " + r.dataset + ") already defined in another file");
      }
      runs.push_back(std::move(r));
    }
  }
  if (runs.empty()) throw ContractError("no run records found");
  return runs;
}

std::vector<Span> ParseSpans(const nlohmann::json& j) {
  std::vector<Span> spans;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ContractError("each span must be a [start, end] pair");
    }
    spans.push_back({pair[0].get<CharIndex>(), pair[1].get<CharIndex>()});
  }
  return spans;
}

template <typename Record, typename Fill>
std::vector<Record> ReadPredictionLines(std::istream& in, std::string_view source_name,
                                        Fill fill) {
  const std::string source(source_name);
  std::vector<Record> out;
  std::set<std::pair<std::string, long>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Record rec;
    rec.line = line_no;
    try {
      const auto j = nlohmann::json::parse(line);
      rec.doc_id = j.at("doc_id").get<std::string>();
      rec.seed = j.at("seed").get<long>();
      fill(j, rec);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const std::logic_error& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!seen.emplace(rec.doc_id, rec.seed).second) {
      throw ParseError(source, line_no,
                       "duplicate prediction for document '" + rec.doc_id +
                           "', seed " + std::to_string(rec.seed));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string SpansJson(std::span<const Span> spans) {
  Json arr = Json::array();
  for (const auto& s : spans) arr.push_back({s.start, s.end});
  return arr.dump();
}

// ---- ingest ---------------------------------------------------------------

std::vector<corpus::Document> ImportStandoffDir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw ContractError("config: standoff directory '" + dir + "' does not exist");
  }
  std::vector<fs::path> texts;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      texts.push_back(entry.path());
    }
  }
  std::sort(texts.begin(), texts.end());
  if (texts.empty()) throw ContractError("no .txt documents in '" + dir + "'");
  std::vector<corpus::Document> docs;
  for (const auto& txt : texts) {
    fs::path ann = txt;
    ann.replace_extension(".ann");
    if (!fs::is_regular_file(ann)) {
      throw ContractError(txt.string() + ": missing annotation file " + ann.string());
    }
    docs.push_back(corpus::ImportStandoff(txt.stem().string(), ReadFile(txt.string()),
                                          ReadFile(ann.string()), ann.string()));
  }
  return docs;
}

constexpr const char* kStatNames[] = {"syllable_count", "lexicon_count",
                                      "sentence_count", "character_count",
                                      "difficult_words", "num_ades"};
constexpr const char* kStatLabels[] = {"Syllable Count",  "Lexicon Count",
                                       "Sentence Count",  "Character Count",
                                       "Difficult Words", "Number of ADEs"};

std::array<double, 6> StatArray(const corpus::TextStats& s) {
  return {static_cast<double>(s.syllable_count),
          static_cast<double>(s.lexicon_count),
          static_cast<double>(s.sentence_count),
          static_cast<double>(s.character_count),
          static_cast<double>(s.difficult_words),
          static_cast<double>(s.num_ades)};
}

struct StatsReport {
  std::size_t documents = 0, positive = 0, mentions = 0, discontinuous = 0,
              ade_spans = 0;
  std::array<analysis::MeanStd, 6> full{};
  std::array<analysis::MeanStd, 6> ade{};  // sentence and num_ades unused
  std::array<long, 6> totals{};
};

StatsReport ComputeStats(std::span<const corpus::Document> docs) {
  StatsReport r;
  std::array<std::vector<double>, 6> full, ade;
  for (const auto& doc : docs) {
    ++r.documents;
    if (doc.has_ade()) ++r.positive;
    r.mentions += doc.mentions.size();
    for (const auto& m : doc.mentions) r.discontinuous += m.discontinuous() ? 1 : 0;
    const auto s = corpus::ComputeTextStats(doc);
    const auto v = StatArray(s);
    for (int k = 0; k < 6; ++k) {
      full[k].push_back(v[k]);
      r.totals[k] += static_cast<long>(v[k]);
    }
    const std::u32string text = utf8::Decode(doc.text);
    for (const Span& span : corpus::Disambiguate(doc.mentions)) {
      ++r.ade_spans;
      const std::string surface = utf8::Encode(std::u32string_view(text).substr(
          static_cast<std::size_t>(span.start), static_cast<std::size_t>(span.length())));
      const auto a = StatArray(corpus::ComputeTextStats(surface));
      for (int k = 0; k < 6; ++k) ade[k].push_back(a[k]);
    }
  }
  for (int k = 0; k < 6; ++k) {
    r.full[k] = analysis::ComputeMeanStd(full[k]);
    r.ade[k] = analysis::ComputeMeanStd(ade[k]);
  }
  return r;
}

bool AdeRow(int k) { return k != 2 && k != 5; }

Json MeanStdJson(const analysis::MeanStd& m) {
  return Json{{"mean", m.mean}, {"std", m.std}};
}

std::string StatsJson(const std::string& dataset, const StatsReport& r) {
  Json j;
  j["dataset"] = dataset;
  j["documents"] = r.documents;
  j["with_ade"] = r.positive;
  j["without_ade"] = r.documents - r.positive;
  j["mentions"] = r.mentions;
  j["discontinuous_mentions"] = r.discontinuous;
  j["discontinuous_rate"] =
      r.mentions == 0 ? 0.0
                      : static_cast<double>(r.discontinuous) / static_cast<double>(r.mentions);
  j["ade_spans"] = r.ade_spans;
  Json full, ade, totals;
  for (int k = 0; k < 6; ++k) {
    full[kStatNames[k]] = MeanStdJson(r.full[k]);
    if (AdeRow(k)) ade[kStatNames[k]] = MeanStdJson(r.ade[k]);
    totals[kStatNames[k]] = r.totals[k];
  }
  j["full_text"] = std::move(full);
  j["ade"] = std::move(ade);
  j["totals"] = std::move(totals);
  return j.dump(2) + "\n";
}

std::string StatsCsv(const StatsReport& r) {
  std::ostringstream out;
  out << "scope,metric,mean,std\n";
  for (int k = 0; k < 6; ++k) {
    out << "full_text," << kStatNames[k] << ',' << FormatDouble(r.full[k].mean) << ','
        << FormatDouble(r.full[k].std) << '\n';
  }
  for (int k = 0; k < 6; ++k) {
    if (!AdeRow(k)) continue;
    out << "ade," << kStatNames[k] << ',' << FormatDouble(r.ade[k].mean) << ','
        << FormatDouble(r.ade[k].std) << '\n';
  }
  return out.str();
}

std::string StatsTable(const std::string& dataset, const StatsReport& r) {
  std::ostringstream out;
  out << "Dataset: " << dataset << " (" << r.documents << " documents, "
      << r.positive << " with ADEs, " << r.mentions << " mentions, "
      << r.discontinuous << " discontinuous)\n";
  auto row = [&](const char* scope, int k, const analysis::MeanStd& m) {
    std::string label = kStatLabels[k];
    out << scope << std::string(12 - std::string(scope).size(), ' ') << label
        << std::string(18 - label.size(), ' ') << FormatFixed(m.mean, 2) << " ± "
        << FormatFixed(m.std, 2) << '\n';
  };
  for (int k = 0; k < 6; ++k) row(k == 0 ? "Full text" : "", k, r.full[k]);
  bool first = true;
  for (int k = 0; k < 6; ++k) {
    if (!AdeRow(k)) continue;
    row(first ? "ADE" : "", k, r.ade[k]);
    first = false;
  }
  return out.str();
}

std::string SplitsJson(const corpus::CorpusSplit& split,
                       const corpus::SplitRatios& ratios, std::uint64_t seed) {
  Json j;
  j["seed"] = seed;
  j["ratios"] = {{"train", ratios.train}, {"val", ratios.val}, {"test", ratios.test}};
  j["train"] = split.train;
  j["val"] = split.val;
  j["test"] = split.test;
  return j.dump(2) + "\n";
}

// ---- score ----------------------------------------------------------------

struct DocPrediction {
  std::vector<Span> spans;
  std::string output;  // generative runs only
  bool present = false;
};

struct SeedOutcome {
  metrics::MatchCounts counts;
  std::string alignment_log;  // generative runs only
};

SeedOutcome ScoreSeed(std::span<const corpus::Document> gold_docs,
                      std::span<const std::vector<Span>> gold_spans,
                      std::span<const DocPrediction> preds, PredictionKind kind,
                      unsigned threads) {
  const std::size_t n = gold_docs.size();
  std::vector<metrics::MatchCounts> counts(n);
  std::vector<std::string> logs(n);
  ParallelFor(
      n,
      [&](std::size_t i) {
        std::vector<Span> spans = preds[i].spans;
        if (kind == PredictionKind::kGenerative) {
          const auto gen = alignment::GenerationOutput::Parse(preds[i].output);
          const auto aligned = alignment::Align(gold_docs[i].text, gen);
          spans = alignment::DedupeSpans(aligned.spans);
          if (preds[i].present) {
            Json j;
            j["doc_id"] = gold_docs[i].id;
            j["items"] = gen.items;
            j["spans"] = Json::parse(SpansJson(spans));
            Json discarded = Json::array();
            for (const auto& d : aligned.discarded) {
              discarded.push_back({{"item", d.item_index}, {"text", d.text}});
            }
            j["discarded"] = std::move(discarded);
            logs[i] = j.dump() + "\n";
          }
        }
        counts[i] = metrics::Classify(gold_spans[i], spans);
      },
      threads);
  SeedOutcome out;
  out.counts = metrics::CorpusCounts(counts);
  for (auto& l : logs) out.alignment_log += l;
  return out;
}

// Checks a span-type prediction against its document.
void CheckSpans(std::vector<Span>& spans, CharIndex length, const std::string& source,
                std::size_t line) {
  for (const auto& s : spans) {
    if (s.start < 0 || s.end > length || s.start >= s.end) {
      throw ParseError(source, line,
                       "span [" + std::to_string(s.start) + ", " +
                           std::to_string(s.end) + ") invalid for a document of " +
                           std::to_string(length) + " characters");
    }
  }
  std::sort(spans.begin(), spans.end());
  if (!IsSortedDisjoint(spans)) {
    throw ParseError(source, line, "predicted spans overlap; merge them before scoring");
  }
}

// ---- analyze / plot helpers ---------------------------------------------

std::vector<std::string> Datasets(std::span<const RunRecord> runs) {
  std::vector<std::string> out;
  for (const auto& r : runs) {
    if (std::find(out.begin(), out.end(), r.dataset) == out.end()) {
      out.push_back(r.dataset);
    }
  }
  return out;
}

std::string Extension(ReportFormat f) { return f == ReportFormat::kCsv ? ".csv" : ".json"; }

std::string ImportanceJson(const analysis::ShapleySummary& s) {
  Json j;
  j["degenerate"] = s.degenerate;
  j["max_efficiency_residual"] = s.max_efficiency_residual;
  Json ranking = Json::array();
  for (const auto& f : s.ranking) {
    ranking.push_back({{"feature", f.feature}, {"mean_abs_shap", f.mean_abs_shap}});
  }
  j["ranking"] = std::move(ranking);
  return j.dump(2) + "\n";
}

std::string ImportanceCsv(const analysis::ShapleySummary& s) {
  std::ostringstream out;
  out << "rank,feature,mean_abs_shap\n";
  for (std::size_t i = 0; i < s.ranking.size(); ++i) {
    out << i + 1 << ',' << s.ranking[i].feature << ','
        << FormatDouble(s.ranking[i].mean_abs_shap) << '\n';
  }
  return out.str();
}

std::string PermutationJson(const analysis::PermutationReport& p) {
  Json j;
  Json perms = Json::array();
  for (std::size_t i = 0; i < p.encodings.size(); ++i) {
    perms.push_back({{"encoding", p.encodings[i]}, {"ranking", p.rankings[i]}});
  }
  j["permutations"] = std::move(perms);
  j["exact_match_fraction"] = p.exact_match_fraction;
  j["top2_match_fraction"] = p.top2_match_fraction;
  j["mean_footrule"] = p.mean_footrule;
  j["max_footrule"] = p.max_footrule;
  return j.dump(2) + "\n";
}

std::string PermutationCsv(const analysis::PermutationReport& p) {
  std::ostringstream out;
  out << "encoding";
  for (std::size_t k = 0; k < analysis::kNumFeatures; ++k) out << ",rank" << k + 1;
  out << '\n';
  for (std::size_t i = 0; i < p.encodings.size(); ++i) {
    const auto& e = p.encodings[i];
    out << e[0] << e[1] << e[2];
    for (const auto& f : p.rankings[i]) out << ',' << f;
    out << '\n';
  }
  return out.str();
}

std::vector<analysis::AggregateRow> AggregateFile(const std::string& path) {
  const auto runs = LoadRunFiles({path});
  return analysis::AggregateRuns(runs);
}

}  // namespace

std::string SafeName(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                    c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::vector<SpanPrediction> ReadSpanPredictions(std::istream& in,
                                                std::string_view source) {
  return ReadPredictionLines<SpanPrediction>(
      in, source, [](const nlohmann::json& j, SpanPrediction& rec) {
        rec.spans = ParseSpans(j.at("spans"));
      });
}

std::vector<GenerativePrediction> ReadGenerativePredictions(std::istream& in,
                                                            std::string_view source) {
  return ReadPredictionLines<GenerativePrediction>(
      in, source, [](const nlohmann::json& j, GenerativePrediction& rec) {
        rec.output = j.at("output").get<std::string>();
      });
}

std::map<std::string, std::vector<Span>> GoldSpans(
    std::span<const corpus::Document> docs) {
  std::map<std::string, std::vector<Span>> out;
  for (const auto& d : docs) out[d.id] = corpus::Disambiguate(d.mentions);
  return out;
}

CommandResult Ingest(const JobConfig& cfg) {
  std::vector<corpus::Document> docs;
  if (!cfg.standoff_dir.empty()) {
    docs = ImportStandoffDir(cfg.standoff_dir);
  } else if (!cfg.corpus_jsonl.empty()) {
    docs = LoadCorpus(cfg.corpus_jsonl);
  } else {
    throw ContractError("config: [corpus] needs standoff_dir or jsonl");
  }
  std::set<std::string> ids;
  for (auto& doc : docs) {
    if (!cfg.labels.empty()) corpus::FilterLabels(doc, cfg.labels);
    corpus::Validate(doc);
    if (!ids.insert(doc.id).second) {
      throw ContractError("duplicate document id '" + doc.id + "'");
    }
  }

  Staging stage(cfg.out_dir);
  std::ostringstream jsonl;
  corpus::WriteJsonl(jsonl, docs);
  stage.Add("corpus.jsonl", jsonl.str());

  const StatsReport stats = ComputeStats(docs);
  stage.Add("stats.txt", StatsTable(cfg.dataset, stats));
  stage.Add("stats" + Extension(cfg.format), cfg.format == ReportFormat::kCsv
                                                 ? StatsCsv(stats)
                                                 : StatsJson(cfg.dataset, stats));
  if (cfg.split) {
    const auto split = corpus::StratifiedSplit(docs, *cfg.split, cfg.seed);
    stage.Add("splits.json", SplitsJson(split, *cfg.split, cfg.seed));
  }
  return stage.Commit();
}

CommandResult Score(const JobConfig& cfg) {
  if (cfg.runs.empty()) throw ContractError("config: no [run:<name>] sections to score");
  const std::string gold_path = GoldPath(cfg);
  const auto gold_docs = LoadCorpus(gold_path);
  const auto registry = LoadRegistry(cfg);
  std::map<std::string, std::size_t> doc_index;
  std::vector<std::vector<Span>> gold_spans;
  std::vector<CharIndex> lengths;
  for (std::size_t i = 0; i < gold_docs.size(); ++i) {
    doc_index[gold_docs[i].id] = i;
    gold_spans.push_back(corpus::Disambiguate(gold_docs[i].mentions));
    lengths.push_back(static_cast<CharIndex>(utf8::Length(gold_docs[i].text)));
  }

  Staging stage(cfg.out_dir);
  std::vector<std::string> notes;
  std::string runs_jsonl;
  std::set<std::string> names;
  for (const auto& src : cfg.runs) {
    if (!names.insert(SafeName(src.name)).second) {
      throw ContractError("config: run name '" + src.name + "' used twice");
    }
    const auto* model = registry.Find(src.model);
    if (model == nullptr) {
      throw ContractError("config: [run:" + src.name + "] model '" + src.model +
                          "' is not in the model registry");
    }
    RequireFile(src.path, "prediction file");

    // seed -> per-document predictions in gold order
    std::map<long, std::vector<DocPrediction>> by_seed;
    auto slot = [&](const std::string& doc_id, long seed, std::size_t line)
        -> std::pair<DocPrediction*, std::size_t> {
      auto it = doc_index.find(doc_id);
      if (it == doc_index.end()) {
        throw ParseError(src.path, line, "unknown document '" + doc_id + "'");
      }
      auto& v = by_seed[seed];
      v.resize(gold_docs.size());
      return {&v[it->second], it->second};
    };
    auto in = Open(src.path);
    if (src.kind == PredictionKind::kSpan) {
      for (auto& p : ReadSpanPredictions(in, src.path)) {
        auto [dst, idx] = slot(p.doc_id, p.seed, p.line);
        CheckSpans(p.spans, lengths[idx], src.path, p.line);
        dst->spans = std::move(p.spans);
        dst->present = true;
      }
    } else {
      for (auto& p : ReadGenerativePredictions(in, src.path)) {
        auto [dst, idx] = slot(p.doc_id, p.seed, p.line);
        dst->output = std::move(p.output);
        dst->present = true;
      }
    }

    std::vector<long> seeds = cfg.seeds;
    if (seeds.empty()) {
      for (const auto& [seed, _] : by_seed) seeds.push_back(seed);
    }
    std::sort(seeds.begin(), seeds.end());
    if (seeds.empty()) {
      throw ContractError(src.path + ": no predictions for run '" + src.name + "'");
    }
    for (long seed : seeds) {
      auto it = by_seed.find(seed);
      if (it == by_seed.end()) {
        throw ContractError(src.path + ": no predictions for seed " +
                            std::to_string(seed));
      }
      const auto missing = std::count_if(it->second.begin(), it->second.end(),
                                         [](const DocPrediction& p) { return !p.present; });
      if (missing > 0) {
        notes.push_back(src.name + " seed " + std::to_string(seed) + ": " +
                        std::to_string(missing) +
                        " documents without predictions scored as empty");
      }
      const SeedOutcome outcome =
          ScoreSeed(gold_docs, gold_spans, it->second, src.kind, cfg.threads);
      const fs::path dir = fs::path("scores") / SafeName(src.name);
      const std::string stem = "seed-" + std::to_string(seed);
      stage.Add(dir / (stem + Extension(cfg.format)),
                cfg.format == ReportFormat::kCsv ? metrics::ReportCsv(outcome.counts)
                                                 : metrics::ReportJson(outcome.counts));
      if (src.kind == PredictionKind::kGenerative) {
        stage.Add(fs::path("alignment") / SafeName(src.name) / (stem + ".jsonl"),
                  outcome.alignment_log);
      }
      RunRecord record;
      record.model = src.model;
      record.dataset = src.dataset;
      record.seed = seed;
      record.features = analysis::EncodeFeatures(*model);
      record.relaxed = metrics::RelaxedScores(outcome.counts);
      record.strict = metrics::StrictScores(outcome.counts);
      runs_jsonl += analysis::RunToJsonLine(record) + "\n";
    }
  }
  stage.Add("runs.jsonl", runs_jsonl);
  return stage.Commit(std::move(notes));
}

CommandResult Aggregate(const JobConfig& cfg) {
  const auto runs = LoadRunFiles(RunFiles(cfg));
  const auto rows = analysis::AggregateRuns(runs);
  Staging stage(cfg.out_dir);
  stage.Add("aggregate.txt", analysis::FormatAggregateTable(rows));
  stage.Add("aggregate" + Extension(cfg.format), cfg.format == ReportFormat::kCsv
                                                     ? analysis::AggregateCsv(rows)
                                                     : analysis::AggregateJson(rows));
  return stage.Commit();
}

CommandResult Analyze(const JobConfig& cfg) {
  const auto runs = LoadRunFiles(RunFiles(cfg));
  Staging stage(cfg.out_dir);
  std::vector<std::string> notes;
  for (const auto& dataset : Datasets(runs)) {
    std::vector<analysis::AnalysisRow> rows;
    std::vector<std::string> run_ids;
    for (const auto& r : runs) {
      if (r.dataset != dataset) continue;
      rows.push_back({r.features, r.relaxed.f1});
      run_ids.push_back(r.model + "/" + std::to_string(r.seed));
    }
    if (rows.size() < 2) {
      notes.push_back(dataset + ": fewer than two runs, skipped");
      continue;
    }
    const std::uint64_t seed = DeriveSeed(cfg.seed, "analyze/" + dataset);
    const auto result = analysis::Analyze(rows, cfg.forest, seed);
    const auto& summary = result.summary;
    if (summary.degenerate) {
      notes.push_back(dataset + ": every attribution is zero (constant target)");
    }

    std::ostringstream shap;
    shap << "run_id,feature,feature_value,shap_value\n";
    for (const auto& p : summary.points) {
      shap << run_ids[p.run] << ',' << analysis::kFeatureNames[p.feature] << ','
           << FormatDouble(p.feature_value) << ',' << FormatDouble(p.shap_value)
           << '\n';
    }
    const fs::path dir = fs::path("analysis") / SafeName(dataset);
    stage.Add(dir / "shap.csv", shap.str());
    stage.Add(dir / ("importance" + Extension(cfg.format)),
              cfg.format == ReportFormat::kCsv ? ImportanceCsv(summary)
                                               : ImportanceJson(summary));
    if (cfg.permutation_check) {
      const auto perm = analysis::PermutationCheck(rows, cfg.forest, seed);
      stage.Add(dir / ("permutation" + Extension(cfg.format)),
                cfg.format == ReportFormat::kCsv ? PermutationCsv(perm)
                                                 : PermutationJson(perm));
    }
  }
  return stage.Commit(std::move(notes));
}

CommandResult Deltas(const JobConfig& cfg) {
  if (cfg.base_runs.empty() || cfg.augmented_runs.empty()) {
    throw ContractError("config: [deltas] needs base and augmented run files");
  }
  const auto base = analysis::AggregateRuns(LoadRunFiles(cfg.base_runs));
  Staging stage(cfg.out_dir);
  std::vector<std::string> notes;
  for (const auto& [name, path] : cfg.augmented_runs) {
    const auto report = analysis::ModuleEffect(base, AggregateFile(path));
    for (const auto& k : report.only_base) notes.push_back(name + ": no augmented run for " + k);
    for (const auto& k : report.only_augmented) notes.push_back(name + ": no base run for " + k);
    stage.Add(fs::path("deltas") / (SafeName(name) + Extension(cfg.format)),
              cfg.format == ReportFormat::kCsv ? analysis::ModuleEffectCsv(report)
                                               : analysis::ModuleEffectJson(report));
  }
  return stage.Commit(std::move(notes));
}

CommandResult Plot(const JobConfig& cfg) {
  const auto runs = LoadRunFiles(RunFiles(cfg));
  const auto rows = analysis::AggregateRuns(runs);
  Staging stage(cfg.out_dir);
  for (const auto& dataset : Datasets(runs)) {
    std::vector<plot::ScatterPoint> points;
    for (const auto& row : rows) {
      if (row.dataset != dataset) continue;
      const auto it = std::find_if(runs.begin(), runs.end(), [&](const RunRecord& r) {
        return r.model == row.model && r.dataset == row.dataset;
      });
      points.push_back({row.model, row.relaxed_r.mean, row.relaxed_p.mean, it->features});
    }
    stage.Add(fs::path("plots") / ("pr_" + SafeName(dataset) + ".svg"),
              plot::PrecisionRecallSvg(points, "Relaxed precision and recall: " + dataset));
  }
  if (!cfg.base_runs.empty()) {
    const auto base = analysis::AggregateRuns(LoadRunFiles(cfg.base_runs));
    for (const auto& [name, path] : cfg.augmented_runs) {
      const auto report = analysis::ModuleEffect(base, AggregateFile(path));
      stage.Add(fs::path("plots") / ("delta_" + SafeName(name) + ".svg"),
                plot::DeltaBarsSvg(report, "Effect of " + name + " (relaxed)"));
    }
  }
  return stage.Commit();
}

}  // namespace adeval::harness

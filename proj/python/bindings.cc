// pybind11 bindings: adeval._core. Spans cross the boundary as
// (start, end) tuples of code-point offsets.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adeval/alignment.h"
#include "adeval/commands.h"
#include "adeval/config.h"
#include "adeval/corpus.h"
#include "adeval/error.h"
#include "adeval/features.h"
#include "adeval/metrics.h"
#include "adeval/random.h"
#include "adeval/runs.h"
#include "adeval/shapley.h"
#include "adeval/span.h"
#include "adeval/text_stats.h"

namespace py = pybind11;

namespace adeval {
namespace {

using PySpan = std::pair<CharIndex, CharIndex>;

std::vector<Span> ToSpans(const std::vector<PySpan>& in) {
  std::vector<Span> out;
  out.reserve(in.size());
  for (const auto& [a, b] : in) out.push_back({a, b});
  return out;
}

std::vector<PySpan> FromSpans(const std::vector<Span>& in) {
  std::vector<PySpan> out;
  out.reserve(in.size());
  for (const auto& s : in) out.emplace_back(s.start, s.end);
  return out;
}

py::dict CountsDict(const metrics::MatchCounts& c) {
  py::dict d;
  d["cor"] = c.cor;
  d["par"] = c.par;
  d["inc"] = c.inc;
  d["mis"] = c.mis;
  d["spu"] = c.spu;
  return d;
}

metrics::MatchCounts CountsFrom(const py::dict& d) {
  auto get = [&](const char* k) { return d.contains(k) ? d[k].cast<long>() : 0L; };
  return {get("cor"), get("par"), get("inc"), get("mis"), get("spu")};
}

py::dict ScoresDict(const metrics::Scores& s) {
  py::dict d;
  d["precision"] = s.precision;
  d["recall"] = s.recall;
  d["f1"] = s.f1;
  return d;
}

py::dict DocumentDict(const corpus::Document& doc) {
  py::list mentions;
  for (const auto& m : doc.mentions) {
    py::dict md;
    md["label"] = m.label;
    md["fragments"] = FromSpans(m.fragments);
    mentions.append(md);
  }
  py::dict d;
  d["id"] = doc.id;
  d["text"] = doc.text;
  d["mentions"] = mentions;
  return d;
}

std::vector<corpus::BioLabel> ToLabels(const std::vector<std::string>& labels) {
  std::vector<corpus::BioLabel> out;
  for (const auto& l : labels) {
    if (l.size() != 1) throw ContractError("BIO label must be B, I or O, got '" + l + "'");
    out.push_back(corpus::BioLabelFromChar(l[0]));
  }
  return out;
}

analysis::FeatureVector ToFeatures(const std::vector<int>& v) {
  if (v.size() != analysis::kNumFeatures) {
    throw ContractError("feature vector needs " + std::to_string(analysis::kNumFeatures) +
                        " values");
  }
  analysis::FeatureVector f{v[0], v[1], v[2], v[3], v[4], v[5]};
  f.Validate();
  return f;
}

std::vector<analysis::AnalysisRow> ToRows(
    const std::vector<std::pair<std::vector<int>, double>>& rows) {
  std::vector<analysis::AnalysisRow> out;
  for (const auto& [features, target] : rows) out.push_back({ToFeatures(features), target});
  return out;
}

analysis::ForestParams Params(int n_trees, int max_depth, int min_leaf, int features_per_split,
                              bool bootstrap, unsigned threads) {
  analysis::ForestParams p;
  p.n_trees = n_trees;
  p.max_depth = max_depth;
  p.min_leaf = min_leaf;
  p.features_per_split = features_per_split;
  p.bootstrap = bootstrap;
  p.threads = threads;
  return p;
}

py::dict RunCommand(const std::string& command, std::optional<std::string> config,
                    std::optional<std::string> out, std::optional<std::uint64_t> seed,
                    std::optional<std::string> format, std::optional<unsigned> threads) {
  using namespace harness;
  JobConfig cfg = config ? LoadConfig(*config) : DefaultConfig();
  if (out) cfg.out_dir = *out;
  if (seed) cfg.seed = *seed;
  if (format) {
    if (*format != "json" && *format != "csv") {
      throw ContractError("format must be 'json' or 'csv', got '" + *format + "'");
    }
    cfg.format = *format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson;
  }
  if (threads) {
    cfg.threads = *threads;
    cfg.forest.threads = *threads;
  }
  CommandResult (*fn)(const JobConfig&) = nullptr;
  if (command == "ingest") fn = Ingest;
  if (command == "score") fn = Score;
  if (command == "aggregate") fn = Aggregate;
  if (command == "analyze") fn = Analyze;
  if (command == "deltas") fn = Deltas;
  if (command == "plot") fn = Plot;
  if (fn == nullptr) throw ContractError("unknown command '" + command + "'");
  CommandResult r;
  {
    py::gil_scoped_release release;
    r = fn(cfg);
  }
  py::dict d;
  d["artifacts"] = r.artifacts;
  d["notes"] = r.notes;
  return d;
}

}  // namespace
}  // namespace adeval

PYBIND11_MODULE(_core, m) {
  using namespace adeval;
  m.doc() = "Evaluation core for adverse drug event extraction";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);

  // metrics
  m.def("classify",
        [](const std::vector<PySpan>& gold, const std::vector<PySpan>& pred) {
          return CountsDict(metrics::Classify(ToSpans(gold), ToSpans(pred)));
        },
        py::arg("gold"), py::arg("pred"),
        "Match counts (cor, par, inc, mis, spu) of one document.");
  m.def("relaxed_scores",
        [](const py::dict& c) { return ScoresDict(metrics::RelaxedScores(CountsFrom(c))); },
        py::arg("counts"));
  m.def("strict_scores",
        [](const py::dict& c) { return ScoresDict(metrics::StrictScores(CountsFrom(c))); },
        py::arg("counts"));
  m.def("report_json",
        [](const py::dict& c) { return metrics::ReportJson(CountsFrom(c)); },
        py::arg("counts"));

  // corpus
  m.def("disambiguate",
        [](const std::vector<std::vector<PySpan>>& mentions) {
          std::vector<corpus::Mention> ms;
          for (const auto& frags : mentions) ms.push_back({ToSpans(frags)});
          return FromSpans(corpus::Disambiguate(ms));
        },
        py::arg("mentions"),
        "Sorted disjoint spans covering every fragment of every mention.");
  m.def("merge_spans",
        [](const std::vector<PySpan>& spans) { return FromSpans(MergeSpans(ToSpans(spans))); },
        py::arg("spans"));
  m.def("tokenize",
        [](const std::string& text) {
          std::vector<std::tuple<std::string, CharIndex, CharIndex>> out;
          for (const auto& t : corpus::Tokenize(text)) out.emplace_back(t.text, t.start, t.end);
          return out;
        },
        py::arg("text"));
  m.def("spans_to_bio",
        [](const std::string& text, const std::vector<PySpan>& spans) {
          const auto tokens = corpus::Tokenize(text);
          std::vector<std::string> out;
          for (auto l : corpus::SpansToBio(tokens, ToSpans(spans))) {
            out.emplace_back(1, corpus::ToChar(l));
          }
          return out;
        },
        py::arg("text"), py::arg("spans"));
  m.def("bio_to_spans",
        [](const std::string& text, const std::vector<std::string>& labels) {
          const auto tokens = corpus::Tokenize(text);
          const auto decoded = corpus::BioToSpans(tokens, ToLabels(labels));
          return std::make_pair(FromSpans(decoded.spans), decoded.repaired);
        },
        py::arg("text"), py::arg("labels"),
        "Decodes one label per token of tokenize(text); returns (spans, repaired).");
  m.def("import_standoff",
        [](std::string id, std::string text, const std::string& annotations) {
          return DocumentDict(
              corpus::ImportStandoff(std::move(id), std::move(text), annotations));
        },
        py::arg("id"), py::arg("text"), py::arg("annotations"));
  m.def("text_stats",
        [](const std::string& text) {
          const auto s = corpus::ComputeTextStats(text);
          py::dict d;
          d["syllable_count"] = s.syllable_count;
          d["lexicon_count"] = s.lexicon_count;
          d["sentence_count"] = s.sentence_count;
          d["character_count"] = s.character_count;
          d["difficult_words"] = s.difficult_words;
          return d;
        },
        py::arg("text"));

  // alignment
  m.def("align",
        [](const std::string& text, const std::string& output) {
          const auto parsed = alignment::GenerationOutput::Parse(output);
          const auto r = alignment::Align(text, parsed);
          py::list discarded;
          for (const auto& d : r.discarded) discarded.append(py::make_tuple(d.item_index, d.text));
          py::dict d;
          d["items"] = parsed.items;
          d["spans"] = FromSpans(r.spans);
          d["discarded"] = discarded;
          return d;
        },
        py::arg("text"), py::arg("output"),
        "Maps a semicolon-separated generation back onto spans of `text`.");
  m.def("dedupe_spans",
        [](const std::vector<PySpan>& spans) {
          return FromSpans(alignment::DedupeSpans(ToSpans(spans)));
        },
        py::arg("spans"));

  // analysis
  m.attr("FEATURE_NAMES") = std::vector<std::string>(analysis::kFeatureNames.begin(),
                                                     analysis::kFeatureNames.end());
  m.def("registry_models", [] {
    std::vector<std::string> names;
    for (const auto& d : analysis::ModelRegistry::Bundled().models()) names.push_back(d.name);
    return names;
  });
  m.def("encode_features",
        [](const std::string& model) {
          const auto* d = analysis::ModelRegistry::Bundled().Find(model);
          if (d == nullptr) throw ContractError("unknown model '" + model + "'");
          const auto a = analysis::EncodeFeatures(*d).AsArray();
          return std::vector<int>(a.begin(), a.end());
        },
        py::arg("model"));
  m.def("mean_std",
        [](const std::vector<double>& values) {
          const auto r = analysis::ComputeMeanStd(values);
          return std::make_pair(r.mean, r.std);
        },
        py::arg("values"), "Mean and sample (n - 1) standard deviation.");
  m.def("iso_f1_precision", &analysis::IsoF1Precision, py::arg("f1"), py::arg("recall"));
  m.def("analyze",
        [](const std::vector<std::pair<std::vector<int>, double>>& rows, std::uint64_t seed,
           int n_trees, int max_depth, int min_leaf, int features_per_split, bool bootstrap,
           unsigned threads) {
          const auto in = ToRows(rows);
          analysis::AnalysisResult r;
          {
            py::gil_scoped_release release;
            r = analysis::Analyze(
                in, Params(n_trees, max_depth, min_leaf, features_per_split, bootstrap, threads),
                seed);
          }
          std::vector<std::pair<std::string, double>> ranking;
          for (const auto& f : r.summary.ranking) ranking.emplace_back(f.feature, f.mean_abs_shap);
          std::vector<std::vector<double>> shap;
          for (const auto& a : r.summary.attributions) shap.push_back(a.contributions);
          py::dict d;
          d["ranking"] = ranking;
          d["shap"] = shap;
          d["baseline"] = r.summary.attributions.empty() ? 0.0
                                                         : r.summary.attributions[0].baseline;
          d["degenerate"] = r.summary.degenerate;
          d["max_efficiency_residual"] = r.summary.max_efficiency_residual;
          return d;
        },
        py::arg("rows"), py::arg("seed") = 13, py::arg("n_trees") = 200,
        py::arg("max_depth") = 0, py::arg("min_leaf") = 2, py::arg("features_per_split") = 0,
        py::arg("bootstrap") = true, py::arg("threads") = 0,
        "Random forest on (features, target) rows, exact Shapley values per row.");
  m.def("permutation_check",
        [](const std::vector<std::pair<std::vector<int>, double>>& rows, std::uint64_t seed,
           int n_trees) {
          const auto in = ToRows(rows);
          analysis::ForestParams p;
          p.n_trees = n_trees;
          analysis::PermutationReport r;
          {
            py::gil_scoped_release release;
            r = analysis::PermutationCheck(in, p, seed);
          }
          py::dict d;
          d["encodings"] = r.encodings;
          d["rankings"] = r.rankings;
          d["exact_match_fraction"] = r.exact_match_fraction;
          d["top2_match_fraction"] = r.top2_match_fraction;
          d["mean_footrule"] = r.mean_footrule;
          d["max_footrule"] = r.max_footrule;
          return d;
        },
        py::arg("rows"), py::arg("seed") = 13, py::arg("n_trees") = 200);

  // harness
  m.def("run", &RunCommand, py::arg("command"), py::arg("config") = py::none(),
        py::arg("out") = py::none(), py::arg("seed") = py::none(),
        py::arg("format") = py::none(), py::arg("threads") = py::none(),
        "Runs one pipeline command (ingest, score, aggregate, analyze, deltas, plot).");
  m.def("derive_seed",
        [](std::uint64_t parent, const std::string& tag) { return DeriveSeed(parent, tag); },
        py::arg("parent"), py::arg("tag"));
}

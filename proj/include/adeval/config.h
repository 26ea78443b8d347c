#ifndef ADEVAL_CONFIG_H_
#define ADEVAL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adeval/forest.h"
#include "adeval/split.h"

namespace adeval::harness {

enum class PredictionKind { kSpan, kGenerative };
enum class ReportFormat { kJson, kCsv };

// One prediction file to score, declared as a [run:<name>] section.
struct RunSource {
  std::string name;
  std::string model;  // registry name; defaults to <name>
  std::string dataset;
  PredictionKind kind = PredictionKind::kSpan;
  std::string path;
};

struct JobConfig {
  std::string out_dir = "out";
  std::uint64_t seed = 13;
  unsigned threads = 0;
  ReportFormat format = ReportFormat::kJson;

  // [corpus]
  std::string dataset = "corpus";
  std::string standoff_dir;  // directory of <id>.txt / <id>.ann pairs
  std::string corpus_jsonl;  // or an already normalized corpus
  std::vector<std::string> labels;  // kept mention labels; empty keeps all
  std::optional<corpus::SplitRatios> split;

  // [registry]
  std::string registry;  // empty: bundled model table

  // [score] and [run:*]
  std::string gold;  // empty: <out>/corpus.jsonl
  std::vector<long> seeds;  // empty: every seed found in the predictions
  std::vector<RunSource> runs;

  // [aggregate] [analysis] [plot]
  std::vector<std::string> run_files;  // empty: <out>/runs.jsonl
  analysis::ForestParams forest;
  bool permutation_check = true;

  // [deltas]
  std::vector<std::string> base_runs;
  std::vector<std::pair<std::string, std::string>> augmented_runs;  // name, file
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
std::optional<std::string> ProcessEnv(const std::string& name);

// Environment variable consulted for `key` of `section`:
// ADEVAL_<SECTION>_<KEY>, upper-cased, every non-alphanumeric replaced by
// '_' ([run:bert] path -> ADEVAL_RUN_BERT_PATH).
std::string EnvName(const std::string& section, const std::string& key);

// Parses an INI-style job file. Relative paths are resolved against the
// file's directory. Values from `env` override the file; defaults fill the
// rest. Throws ParseError on malformed files or values.
JobConfig LoadConfig(const std::filesystem::path& file,
                     const EnvLookup& env = ProcessEnv);

// Effective inputs after defaults, so that --out also moves them.
std::string GoldPath(const JobConfig& cfg);
std::vector<std::string> RunFiles(const JobConfig& cfg);

// Configuration from defaults and environment only (no file).
JobConfig DefaultConfig(const EnvLookup& env = ProcessEnv);

}  // namespace adeval::harness

#endif  // ADEVAL_CONFIG_H_

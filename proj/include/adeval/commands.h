#ifndef ADEVAL_COMMANDS_H_
#define ADEVAL_COMMANDS_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adeval/config.h"
#include "adeval/corpus.h"
#include "adeval/metrics.h"
#include "adeval/span.h"

namespace adeval::harness {

// One line of a span-type prediction file.
struct SpanPrediction {
  std::string doc_id;
  long seed = 0;
  std::vector<Span> spans;
  std::size_t line = 0;
};

// One line of a generative-type prediction file.
struct GenerativePrediction {
  std::string doc_id;
  long seed = 0;
  std::string output;
  std::size_t line = 0;
};

std::vector<SpanPrediction> ReadSpanPredictions(std::istream& in,
                                                std::string_view source = {});
std::vector<GenerativePrediction> ReadGenerativePredictions(
    std::istream& in, std::string_view source = {});

// Gold spans of every document, keyed by id (disambiguated mentions).
std::map<std::string, std::vector<Span>> GoldSpans(
    std::span<const corpus::Document> docs);

// Files a command produced, in the order they were written.
struct CommandResult {
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;  // non-fatal diagnostics
};

// Every command validates its inputs, builds all artifacts in memory and
// only then writes them (each via write-to-temp and rename). Malformed inputs
// raise ParseError/RangeError carrying file and line; configuration problems
// raise ContractError.
CommandResult Ingest(const JobConfig& cfg);
CommandResult Score(const JobConfig& cfg);
CommandResult Aggregate(const JobConfig& cfg);
CommandResult Analyze(const JobConfig& cfg);
CommandResult Deltas(const JobConfig& cfg);
CommandResult Plot(const JobConfig& cfg);

// Replaces characters unsafe in a file name with '_'.
std::string SafeName(std::string_view name);

}  // namespace adeval::harness

#endif  // ADEVAL_COMMANDS_H_

// Command-line front end: adeval <command> [--config FILE] [--out DIR]
// [--seed N] [--format json|csv].
// Exit status: 0 success, 1 bad input or configuration, 2 usage error.

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adeval/commands.h"
#include "adeval/config.h"
#include "adeval/error.h"

namespace {

using adeval::harness::CommandResult;
using adeval::harness::JobConfig;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
};

JobConfig Resolve(const Flags& flags) {
  JobConfig cfg = flags.config.empty() ? adeval::harness::DefaultConfig()
                                       : adeval::harness::LoadConfig(flags.config);
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.format) {
    cfg.format = *flags.format == "csv" ? adeval::harness::ReportFormat::kCsv
                                        : adeval::harness::ReportFormat::kJson;
  }
  if (flags.threads) {
    cfg.threads = *flags.threads;
    cfg.forest.threads = *flags.threads;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluation toolkit for adverse drug event extraction"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("-c,--config", flags.config, "Job file (INI)")->check(CLI::ExistingFile);
  app.add_option("-o,--out", flags.out, "Output directory");
  app.add_option("-s,--seed", flags.seed, "Master seed");
  app.add_option("-f,--format", flags.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-j,--threads", flags.threads, "Worker threads (0: all cores)");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only print errors");

  using Command = CommandResult (*)(const JobConfig&);
  const std::map<std::string, std::pair<Command, std::string>> commands = {
      {"ingest", {adeval::harness::Ingest, "Normalize a corpus and report text statistics"}},
      {"score", {adeval::harness::Score, "Score prediction files per seed"}},
      {"aggregate", {adeval::harness::Aggregate, "Mean and std across seeds"}},
      {"analyze", {adeval::harness::Analyze, "Random forest and Shapley attributions"}},
      {"deltas", {adeval::harness::Deltas, "Effect of an add-on module per model"}},
      {"plot", {adeval::harness::Plot, "SVG scatter and delta plots"}},
  };
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.second);
    // Global options are accepted after the subcommand as well.
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const CommandResult result = commands.at(name).first(Resolve(flags));
    for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
    if (!quiet) {
      for (const auto& path : result.artifacts) std::cout << "wrote " << path << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "adeval " << name << ": error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

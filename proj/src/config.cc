#include "adeval/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>

#include "adeval/error.h"

namespace adeval::harness {

namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> List(const std::string& value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t next = value.find(',', pos);
    if (next == std::string::npos) next = value.size();
    std::string item = Trim(value.substr(pos, next - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = next + 1;
  }
  return out;
}

// A section of the job file with environment overrides applied on lookup.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree, const EnvLookup& env,
          std::string source)
      : name_(std::move(name)), tree_(tree), env_(env), source_(std::move(source)) {}

  std::optional<std::string> Get(const std::string& key) const {
    if (auto v = env_(EnvName(name_, key))) return Trim(*v);
    if (tree_ != nullptr) {
      if (auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'))) {
        return Trim(*v);
      }
    }
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> GetNumber(const std::string& key) const {
    auto raw = Get(key);
    if (!raw || raw->empty()) return std::nullopt;
    T value{};
    auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
    if (ec != std::errc() || ptr != raw->data() + raw->size()) {
      Fail(key, "expected a number, got '" + *raw + "'");
    }
    return value;
  }

  std::optional<bool> GetBool(const std::string& key) const {
    auto raw = Get(key);
    if (!raw || raw->empty()) return std::nullopt;
    std::string v = *raw;
    for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    Fail(key, "expected a boolean, got '" + *raw + "'");
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& what) const {
    throw ParseError(source_, 0, "[" + name_ + "] " + key + ": " + what);
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  const EnvLookup& env_;
  std::string source_;
};

std::string Resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return p;
  const fs::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

JobConfig Build(const pt::ptree* root, const fs::path& base,
                const std::string& source, const EnvLookup& env) {
  auto section = [&](const std::string& name) {
    const pt::ptree* child = nullptr;
    if (root != nullptr) {
      auto it = root->find(name);
      if (it != root->not_found()) child = &it->second;
    }
    return Section(name, child, env, source);
  };
  auto resolve = [&](const std::string& p) { return Resolve(base, p); };

  JobConfig cfg;
  const Section general = section("general");
  if (auto v = general.Get("out"); v && !v->empty()) cfg.out_dir = *v;
  cfg.out_dir = resolve(cfg.out_dir);
  if (auto v = general.GetNumber<std::uint64_t>("seed")) cfg.seed = *v;
  if (auto v = general.GetNumber<unsigned>("threads")) cfg.threads = *v;
  if (auto v = general.Get("format"); v && !v->empty()) {
    if (*v == "json") {
      cfg.format = ReportFormat::kJson;
    } else if (*v == "csv") {
      cfg.format = ReportFormat::kCsv;
    } else {
      general.Fail("format", "expected json or csv");
    }
  }

  const Section corpus = section("corpus");
  if (auto v = corpus.Get("dataset"); v && !v->empty()) cfg.dataset = *v;
  if (auto v = corpus.Get("standoff_dir")) cfg.standoff_dir = resolve(*v);
  if (auto v = corpus.Get("jsonl")) cfg.corpus_jsonl = resolve(*v);
  if (auto v = corpus.Get("labels")) cfg.labels = List(*v);
  if (auto v = corpus.Get("split"); v && !v->empty()) {
    const auto parts = List(*v);
    if (parts.size() != 3) corpus.Fail("split", "expected three ratios");
    double r[3];
    for (int k = 0; k < 3; ++k) {
      auto [ptr, ec] = std::from_chars(parts[k].data(),
                                       parts[k].data() + parts[k].size(), r[k]);
      if (ec != std::errc() || ptr != parts[k].data() + parts[k].size()) {
        corpus.Fail("split", "bad ratio '" + parts[k] + "'");
      }
    }
    cfg.split = corpus::SplitRatios{r[0], r[1], r[2]};
  }

  if (auto v = section("registry").Get("path")) cfg.registry = resolve(*v);

  const Section score = section("score");
  cfg.gold = resolve(score.Get("gold").value_or(""));
  if (auto v = score.Get("seeds")) {
    std::set<long> unique;
    for (const auto& s : List(*v)) {
      long seed = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        score.Fail("seeds", "bad seed '" + s + "'");
      }
      if (!unique.insert(seed).second) {
        score.Fail("seeds", "seed " + s + " listed twice");
      }
      cfg.seeds.push_back(seed);
    }
  }

  if (root != nullptr) {
    for (const auto& [name, child] : *root) {
      if (name.rfind("run:", 0) != 0) continue;
      const Section run = section(name);
      RunSource src;
      src.name = Trim(name.substr(4));
      if (src.name.empty()) run.Fail("", "run section without a name");
      src.model = run.Get("model").value_or(src.name);
      if (src.model.empty()) src.model = src.name;
      src.dataset = run.Get("dataset").value_or(cfg.dataset);
      if (src.dataset.empty()) src.dataset = cfg.dataset;
      const std::string kind = run.Get("type").value_or("span");
      if (kind == "span" || kind.empty()) {
        src.kind = PredictionKind::kSpan;
      } else if (kind == "generative") {
        src.kind = PredictionKind::kGenerative;
      } else {
        run.Fail("type", "expected span or generative");
      }
      src.path = resolve(run.Get("path").value_or(""));
      if (src.path.empty()) run.Fail("path", "missing");
      cfg.runs.push_back(std::move(src));
    }
  }

  auto run_files = [&](const Section& s) -> std::optional<std::vector<std::string>> {
    auto v = s.Get("runs");
    if (!v || v->empty()) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& f : List(*v)) out.push_back(resolve(f));
    return out;
  };
  const Section analysis = section("analysis");
  cfg.run_files = run_files(analysis).value_or(std::vector<std::string>{});
  if (auto v = analysis.GetNumber<int>("n_trees")) cfg.forest.n_trees = *v;
  if (auto v = analysis.GetNumber<int>("max_depth")) cfg.forest.max_depth = *v;
  if (auto v = analysis.GetNumber<int>("min_leaf")) cfg.forest.min_leaf = *v;
  if (auto v = analysis.GetNumber<int>("features_per_split")) {
    cfg.forest.features_per_split = *v;
  }
  if (auto v = analysis.GetBool("bootstrap")) cfg.forest.bootstrap = *v;
  if (auto v = analysis.GetBool("permutation_check")) cfg.permutation_check = *v;
  if (cfg.forest.n_trees < 1) analysis.Fail("n_trees", "must be >= 1");
  if (cfg.forest.min_leaf < 1) analysis.Fail("min_leaf", "must be >= 1");
  cfg.forest.threads = cfg.threads;

  const Section deltas = section("deltas");
  if (auto v = deltas.Get("base")) {
    for (const auto& f : List(*v)) cfg.base_runs.push_back(resolve(f));
  }
  if (auto v = deltas.Get("augmented")) {
    for (const auto& item : List(*v)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos || colon == 0) {
        deltas.Fail("augmented", "expected <name>:<runs file>, got '" + item + "'");
      }
      cfg.augmented_runs.emplace_back(Trim(item.substr(0, colon)),
                                      resolve(Trim(item.substr(colon + 1))));
    }
  }
  return cfg;
}

}  // namespace

std::optional<std::string> ProcessEnv(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

std::string EnvName(const std::string& section, const std::string& key) {
  std::string out = "ADEVAL_";
  for (char c : section + "_" + key) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c))
                      ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                      : '_');
  }
  return out;
}

JobConfig LoadConfig(const std::filesystem::path& file, const EnvLookup& env) {
  pt::ptree root;
  try {
    pt::read_ini(file.string(), root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(file.string(), e.line(), e.message());
  }
  const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
  return Build(&root, base, file.string(), env);
}

std::string GoldPath(const JobConfig& cfg) {
  if (!cfg.gold.empty()) return cfg.gold;
  return (fs::path(cfg.out_dir) / "corpus.jsonl").string();
}

std::vector<std::string> RunFiles(const JobConfig& cfg) {
  if (!cfg.run_files.empty()) return cfg.run_files;
  return {(fs::path(cfg.out_dir) / "runs.jsonl").string()};
}

JobConfig DefaultConfig(const EnvLookup& env) {
  return Build(nullptr, fs::current_path(), "<defaults>", env);
}

}  // namespace adeval::harness

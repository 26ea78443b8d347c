#include "adeval/features.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "adeval/error.h"

namespace adeval::analysis {

// Defined in the generated models_data.cc.
extern const char* const kBundledModelRegistry;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ParseFlag(std::string_view raw, bool& out) {
  const std::string v = Lower(Trim(raw));
  if (v == "x" || v == "yes" || v == "1" || v == "true") {
    out = true;
    return true;
  }
  if (v.empty() || v == "-" || v == "no" || v == "0" || v == "false") {
    out = false;
    return true;
  }
  return false;
}

void CheckRange(int value, int hi, std::string_view name) {
  if (value < 0 || value > hi) {
    throw ContractError("feature '" + std::string(name) + "' = " +
                        std::to_string(value) + " outside [0, " +
                        std::to_string(hi) + "]");
  }
}

}  // namespace

std::string_view CategoryName(ModelCategory c) {
  switch (c) {
    case ModelCategory::kAutoEncoding: return "AutoEncoding";
    case ModelCategory::kAutoRegressive: return "AutoRegressive";
    case ModelCategory::kTextToText: return "Text-to-Text";
  }
  return "?";
}

ModelCategory ParseCategory(std::string_view name) {
  const std::string v = Lower(Trim(name));
  if (v == "autoencoding") return ModelCategory::kAutoEncoding;
  if (v == "autoregressive") return ModelCategory::kAutoRegressive;
  if (v == "text-to-text" || v == "texttotext" || v == "t2t") {
    return ModelCategory::kTextToText;
  }
  throw ContractError("unknown model category '" + std::string(name) + "'");
}

std::array<double, kNumFeatures> FeatureVector::AsArray() const {
  return {static_cast<double>(category), static_cast<double>(general),
          static_cast<double>(medical),  static_cast<double>(social),
          static_cast<double>(from_scratch), static_cast<double>(size_bucket)};
}

FeatureVector FeatureVector::FromArray(
    const std::array<double, kNumFeatures>& a) {
  FeatureVector f{static_cast<int>(a[0]), static_cast<int>(a[1]),
                  static_cast<int>(a[2]), static_cast<int>(a[3]),
                  static_cast<int>(a[4]), static_cast<int>(a[5])};
  f.Validate();
  return f;
}

void FeatureVector::Validate() const {
  CheckRange(category, 2, "category");
  CheckRange(general, 1, "general");
  CheckRange(medical, 1, "medical");
  CheckRange(social, 1, "social");
  CheckRange(from_scratch, 1, "from_scratch");
  CheckRange(size_bucket, 2, "size");
}

nlohmann::ordered_json FeatureVector::ToJson() const {
  nlohmann::ordered_json j;
  const auto a = AsArray();
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    j[std::string(kFeatureNames[i])] = static_cast<int>(a[i]);
  }
  return j;
}

FeatureVector FeatureVector::FromJson(const nlohmann::json& j) {
  std::array<double, kNumFeatures> a{};
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    a[i] = j.at(std::string(kFeatureNames[i])).get<int>();
  }
  return FromArray(a);
}

int SizeBucket(double size_millions) {
  if (size_millions < 100.0) return 0;
  if (size_millions <= 130.0) return 1;
  return 2;
}

FeatureVector EncodeFeatures(const ModelDescriptor& d) {
  return {static_cast<int>(d.category), d.general ? 1 : 0, d.medical ? 1 : 0,
          d.social ? 1 : 0, d.from_scratch ? 1 : 0, SizeBucket(d.size_millions)};
}

ModelRegistry ModelRegistry::Load(std::istream& in, std::string_view source) {
  const std::string src(source.empty() ? "<registry>" : source);
  ModelRegistry reg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(Trim(col));
    if (cols.size() != 7) {
      throw ParseError(src, line_no,
                       "expected 7 tab-separated columns, got " +
                           std::to_string(cols.size()));
    }
    ModelDescriptor d;
    d.name = cols[0];
    try {
      d.category = ParseCategory(cols[1]);
    } catch (const ContractError& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (!ParseFlag(cols[2], d.from_scratch) || !ParseFlag(cols[3], d.general) ||
        !ParseFlag(cols[4], d.medical) || !ParseFlag(cols[5], d.social)) {
      throw ParseError(src, line_no, "bad boolean column");
    }
    std::string size = cols[6];
    if (!size.empty() && (size.back() == 'M' || size.back() == 'm')) {
      size.pop_back();
    }
    auto [ptr, ec] =
        std::from_chars(size.data(), size.data() + size.size(), d.size_millions);
    if (ec != std::errc() || ptr != size.data() + size.size()) {
      throw ParseError(src, line_no, "bad model size '" + cols[6] + "'");
    }
    if (reg.Find(d.name) != nullptr) {
      throw ParseError(src, line_no, "duplicate model '" + d.name + "'");
    }
    reg.models_.push_back(std::move(d));
  }
  return reg;
}

const ModelRegistry& ModelRegistry::Bundled() {
  static const ModelRegistry reg = [] {
    std::istringstream in(kBundledModelRegistry);
    return Load(in, "bundled registry");
  }();
  return reg;
}

const ModelDescriptor* ModelRegistry::Find(std::string_view name) const {
  for (const auto& m : models_) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

}  // namespace adeval::analysis

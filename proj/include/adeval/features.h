#ifndef ADEVAL_FEATURES_H_
#define ADEVAL_FEATURES_H_

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace adeval::analysis {

enum class ModelCategory : int {
  kAutoEncoding = 0,
  kAutoRegressive = 1,
  kTextToText = 2,
};

std::string_view CategoryName(ModelCategory c);
// Accepts "AutoEncoding", "AutoRegressive", "Text-to-Text"/"TextToText"
// (case-insensitive). Throws ContractError otherwise.
ModelCategory ParseCategory(std::string_view name);

inline constexpr std::size_t kNumFeatures = 6;

// Column order used by the forest and the attribution exports.
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "category", "general", "medical", "social", "from_scratch", "size"};

// Six high-level model descriptors, label-encoded.
struct FeatureVector {
  int category = 0;      // 0 AutoEncoding, 1 AutoRegressive, 2 Text-to-Text
  int general = 0;       // pre-trained on general-domain text
  int medical = 0;       // ... on medical text
  int social = 0;        // ... on social-media text
  int from_scratch = 0;  // trained from scratch, not from another checkpoint
  int size_bucket = 0;   // 0: < 100M, 1: 100M-130M, 2: > 130M parameters

  std::array<double, kNumFeatures> AsArray() const;
  static FeatureVector FromArray(const std::array<double, kNumFeatures>& a);
  // Throws ContractError when a field is outside its enumeration.
  void Validate() const;

  nlohmann::ordered_json ToJson() const;
  static FeatureVector FromJson(const nlohmann::json& j);

  friend auto operator<=>(const FeatureVector&, const FeatureVector&) = default;
};

// A row of the model-description table.
struct ModelDescriptor {
  std::string name;
  ModelCategory category = ModelCategory::kAutoEncoding;
  bool from_scratch = false;
  bool general = false;
  bool medical = false;
  bool social = false;
  double size_millions = 0.0;
};

int SizeBucket(double size_millions);
FeatureVector EncodeFeatures(const ModelDescriptor& d);

// Model-descriptor table. Text format, one model per line, '#' comments:
//
//   name <TAB> category <TAB> from_scratch <TAB> general <TAB> medical
//        <TAB> social <TAB> size
//
// Boolean columns take x/yes/1/true for set and -/no/0/false/empty for unset;
// size is in millions of parameters with an optional M suffix.
class ModelRegistry {
 public:
  static ModelRegistry Load(std::istream& in, std::string_view source = {});
  // The 19 transformer variants of the ADE extraction benchmark.
  static const ModelRegistry& Bundled();

  const ModelDescriptor* Find(std::string_view name) const;
  const std::vector<ModelDescriptor>& models() const { return models_; }

 private:
  std::vector<ModelDescriptor> models_;
};

}  // namespace adeval::analysis

#endif  // ADEVAL_FEATURES_H_

#include "adeval/features.h"

#include <gtest/gtest.h>

#include <sstream>

#include "adeval/error.h"

namespace adeval::analysis {
namespace {

TEST(FeaturesTest, SizeBuckets) {
  EXPECT_EQ(SizeBucket(66), 0);
  EXPECT_EQ(SizeBucket(99.9), 0);
  EXPECT_EQ(SizeBucket(100), 1);
  EXPECT_EQ(SizeBucket(130), 1);
  EXPECT_EQ(SizeBucket(130.5), 2);
  EXPECT_EQ(SizeBucket(570), 2);
}

TEST(FeaturesTest, Categories) {
  EXPECT_EQ(ParseCategory("AutoEncoding"), ModelCategory::kAutoEncoding);
  EXPECT_EQ(ParseCategory("autoregressive"), ModelCategory::kAutoRegressive);
  EXPECT_EQ(ParseCategory("Text-to-Text"), ModelCategory::kTextToText);
  EXPECT_EQ(CategoryName(ModelCategory::kTextToText), "Text-to-Text");
  EXPECT_THROW(ParseCategory("Encoder"), ContractError);
}

TEST(FeaturesTest, BundledRegistryRows) {
  const auto& reg = ModelRegistry::Bundled();
  EXPECT_EQ(reg.models().size(), 19u);
  const auto* bert = reg.Find("BERT");
  ASSERT_NE(bert, nullptr);
  EXPECT_EQ(EncodeFeatures(*bert), (FeatureVector{0, 1, 0, 0, 1, 1}));
  const auto* endr = reg.Find("EnDR-BERT");
  ASSERT_NE(endr, nullptr);
  EXPECT_EQ(EncodeFeatures(*endr), (FeatureVector{0, 0, 1, 1, 0, 2}));
  EXPECT_EQ(EncodeFeatures(*reg.Find("DistilBERT")), (FeatureVector{0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(EncodeFeatures(*reg.Find("GPT-2")), (FeatureVector{1, 1, 0, 0, 1, 1}));
  EXPECT_EQ(EncodeFeatures(*reg.Find("SciFive")), (FeatureVector{2, 1, 1, 0, 0, 2}));
  EXPECT_EQ(EncodeFeatures(*reg.Find("BERTweet")), (FeatureVector{0, 0, 0, 1, 1, 2}));
  EXPECT_EQ(reg.Find("ALBERT"), nullptr);
}

TEST(FeaturesTest, RegistryParsing) {
  std::istringstream ok("# comment\nTiny\tAutoRegressive\tx\t-\tx\t-\t12.5M\n");
  const auto reg = ModelRegistry::Load(ok, "models.tsv");
  ASSERT_EQ(reg.models().size(), 1u);
  EXPECT_EQ(EncodeFeatures(reg.models()[0]), (FeatureVector{1, 0, 1, 0, 1, 0}));

  std::istringstream short_row("A\tAutoEncoding\tx\n");
  EXPECT_THROW(ModelRegistry::Load(short_row), ParseError);
  std::istringstream bad_size("\nA\tAutoEncoding\tx\tx\t-\t-\tbig\n");
  try {
    ModelRegistry::Load(bad_size, "m.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream dup("A\tAutoEncoding\tx\tx\t-\t-\t1M\nA\tAutoEncoding\tx\tx\t-\t-\t1M\n");
  EXPECT_THROW(ModelRegistry::Load(dup), ParseError);
}

TEST(FeaturesTest, JsonRoundTrip) {
  const FeatureVector f{2, 1, 1, 0, 0, 2};
  EXPECT_EQ(f.ToJson().dump(),
            R"({"category":2,"general":1,"medical":1,"social":0,"from_scratch":0,"size":2})");
  EXPECT_EQ(FeatureVector::FromJson(nlohmann::json::parse(f.ToJson().dump())), f);
  EXPECT_THROW(FeatureVector::FromArray({3, 0, 0, 0, 0, 0}), ContractError);
  EXPECT_THROW((FeatureVector{0, 2, 0, 0, 0, 0}.Validate()), ContractError);
}

}  // namespace
}  // namespace adeval::analysis

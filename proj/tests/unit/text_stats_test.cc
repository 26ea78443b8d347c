#include "adeval/text_stats.h"

#include <gtest/gtest.h>

#include <sstream>

#include "adeval/utf8.h"
#include "test_util.h"

namespace adeval::corpus {
namespace {

TEST(SyllablesTest, VowelGroups) {
  EXPECT_EQ(CountSyllables("nausea"), 2);
  EXPECT_EQ(CountSyllables("headache"), 2);  // ea-a-(e) : silent e dropped
  EXPECT_EQ(CountSyllables("make"), 1);
  EXPECT_EQ(CountSyllables("the"), 1);       // single group keeps its e
  EXPECT_EQ(CountSyllables("table"), 2);     // consonant + le
  EXPECT_EQ(CountSyllables("agree"), 2);     // ee is not silent
  EXPECT_EQ(CountSyllables("rhythm"), 1);
  EXPECT_EQ(CountSyllables("medication"), 4);
  EXPECT_EQ(CountSyllables("Dizziness"), 3);
  EXPECT_EQ(CountSyllables("stopped"), 1);   // silent e of -ed
  EXPECT_EQ(CountSyllables("wanted"), 2);
  EXPECT_EQ(CountSyllables("troubled"), 2);
  EXPECT_EQ(CountSyllables("times"), 1);     // silent e of -es
  EXPECT_EQ(CountSyllables("boxes"), 2);
  EXPECT_EQ(CountSyllables("wishes"), 2);
  EXPECT_EQ(CountSyllables("tables"), 2);
  EXPECT_EQ(CountSyllables("safely"), 2);
  EXPECT_EQ(CountSyllables("freely"), 2);
  EXPECT_EQ(CountSyllables("st"), 1);        // minimum one per word
  EXPECT_EQ(CountSyllables("42"), 0);
  EXPECT_EQ(CountSyllables(""), 0);
}

TEST(TextStatsTest, EmptyText) {
  EXPECT_EQ(ComputeTextStats(""), TextStats{});
  EXPECT_EQ(ComputeTextStats("   \n").sentence_count, 0);
}

TEST(TextStatsTest, SingleWordSentence) {
  const auto s = ComputeTextStats("nausea.");
  EXPECT_EQ(s.lexicon_count, 1);
  EXPECT_EQ(s.sentence_count, 1);
  EXPECT_EQ(s.character_count, 7);
  EXPECT_EQ(s.syllable_count, 2);
  EXPECT_EQ(s.difficult_words, 0);
}

TEST(TextStatsTest, HandCountedPost) {
  // Words: I(1) took(1) Lipitor(3) for(1) 2.5 years.(1) Terrible(3)
  //        muscle(2) pain!!(1) Never(2) again(2)
  const std::string text =
      "I took Lipitor for 2.5 years. Terrible muscle pain!! Never again";
  const auto s = ComputeTextStats(text);
  EXPECT_EQ(s.lexicon_count, 11);
  EXPECT_EQ(s.sentence_count, 3);  // "2.5" does not end a sentence
  EXPECT_EQ(s.character_count, static_cast<long>(text.size()));
  EXPECT_EQ(s.syllable_count, 1 + 1 + 3 + 1 + 0 + 1 + 3 + 2 + 1 + 2 + 2);
  // "lipitor" is not a common word; "terrible" is.
  EXPECT_EQ(s.difficult_words, 1);
}

TEST(TextStatsTest, DifficultWordsAreDistinctAndCaseFolded) {
  const auto s = ComputeTextStats("Fibromyalgia fibromyalgia, FIBROMYALGIA.");
  EXPECT_EQ(s.lexicon_count, 3);
  EXPECT_EQ(s.difficult_words, 1);
}

TEST(TextStatsTest, CustomCommonWords) {
  std::istringstream list("lipitor\n");
  const auto common = CommonWords::Load(list);
  EXPECT_EQ(ComputeTextStats("Lipitor", common).difficult_words, 0);
  EXPECT_EQ(ComputeTextStats("Lipitor").difficult_words, 1);
}

TEST(TextStatsTest, BundledListIsLoaded) {
  const auto& words = CommonWords::Bundled();
  EXPECT_GT(words.size(), 2500u);
  EXPECT_TRUE(words.Contains("terrible"));
  EXPECT_FALSE(words.Contains("fibromyalgia"));
}

TEST(TextStatsTest, PunctuationOnlyChunksAreNotWords) {
  const auto s = ComputeTextStats("pain - again ...");
  EXPECT_EQ(s.lexicon_count, 2);
}

TEST(TextStatsTest, CharacterCountIsScalarLength) {
  Rng rng(4);
  const char32_t alphabet[] = {U'a', U'B', U' ', U'.', U'é', U'—', U'😀', U'\n', U'7'};
  for (int iter = 0; iter < 500; ++iter) {
    std::u32string text;
    const auto len = rng.UniformIndex(60);
    for (std::uint64_t i = 0; i < len; ++i) text.push_back(alphabet[rng.UniformIndex(9)]);
    const auto s = ComputeTextStats(utf8::Encode(text));
    ASSERT_EQ(s.character_count, static_cast<long>(text.size()));
    ASSERT_GE(s.syllable_count, 0);
    ASSERT_GE(s.sentence_count, 0);
    ASSERT_LE(s.difficult_words, s.lexicon_count);
  }
}

TEST(TextStatsTest, DocumentCountsDisambiguatedAdes) {
  Document doc{"d", "legs weak and legs sore", {}};
  doc.mentions = {{{{0, 4}, {5, 9}}, "ADE"}, {{{0, 9}}, "ADE"}, {{{14, 23}}, "ADE"}};
  EXPECT_EQ(ComputeTextStats(doc).num_ades, 2);
}

}  // namespace
}  // namespace adeval::corpus

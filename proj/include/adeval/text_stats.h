#ifndef ADEVAL_TEXT_STATS_H_
#define ADEVAL_TEXT_STATS_H_

#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "adeval/corpus.h"

namespace adeval::corpus {

// Readability-style counts for one text.
//
//   syllable_count   sum over words of the vowel-group estimate
//   lexicon_count    whitespace-separated words with at least one letter or
//                    digit
//   sentence_count   segments closed by a run of . ! ? (a '.' between two
//                    digits is not a terminator); a trailing unterminated
//                    segment counts too; at least 1 for non-blank text
//   character_count  length in Unicode scalar values, whitespace included
//   difficult_words  distinct (case-folded) words with more than two
//                    syllables that are absent from the common-word list
//   num_ades         disambiguated spans of the document (0 for bare text)
struct TextStats {
  long syllable_count = 0;
  long lexicon_count = 0;
  long sentence_count = 0;
  long character_count = 0;
  long difficult_words = 0;
  long num_ades = 0;

  friend bool operator==(const TextStats&, const TextStats&) = default;
};

// Lowercase common-usage English words.
class CommonWords {
 public:
  CommonWords() = default;
  // One word per line; blank lines and surrounding whitespace ignored.
  static CommonWords Load(std::istream& in);
  // The list compiled into the library (Dale-Chall style, ~2900 words).
  static const CommonWords& Bundled();

  bool Contains(std::string_view lowercase_word) const {
    return words_.contains(std::string(lowercase_word));
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Vowel-group estimate: count maximal runs of a/e/i/o/u/y, drop a silent
// trailing 'e' (but not in consonant + "le" endings), at least 1 for any word
// with a letter. Non-letters are ignored; 0 for words without letters.
int CountSyllables(std::string_view word);

TextStats ComputeTextStats(std::string_view text,
                           const CommonWords& common = CommonWords::Bundled());
TextStats ComputeTextStats(const Document& doc,
                           const CommonWords& common = CommonWords::Bundled());

}  // namespace adeval::corpus

#endif  // ADEVAL_TEXT_STATS_H_

#include "adeval/text_stats.h"

#include <set>
#include <sstream>

#include "adeval/utf8.h"

namespace adeval::corpus {

// Defined in the generated common_words_data.cc.
extern const char* const kBundledCommonWords;

namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool IsAsciiLetter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

// Whitespace-separated chunks of the text.
std::vector<std::u32string_view> Chunks(std::u32string_view text) {
  std::vector<std::u32string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && utf8::IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !utf8::IsSpace(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Chunk with leading/trailing non-alphanumerics removed, case-folded.
std::string WordKey(std::u32string_view chunk) {
  std::size_t b = 0;
  std::size_t e = chunk.size();
  while (b < e && !utf8::IsAlnum(chunk[b])) ++b;
  while (e > b && !utf8::IsAlnum(chunk[e - 1])) --e;
  std::u32string folded;
  for (char32_t c : chunk.substr(b, e - b)) folded.push_back(utf8::ToLower(c));
  return utf8::Encode(folded);
}

bool HasAlnum(std::u32string_view chunk) {
  for (char32_t c : chunk) {
    if (utf8::IsAlnum(c)) return true;
  }
  return false;
}

bool IsDigit(char32_t c) { return c >= U'0' && c <= U'9'; }

long CountSentences(std::u32string_view text) {
  long count = 0;
  bool content = false;  // alphanumeric seen since the last terminator run
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    const bool terminator =
        c == U'!' || c == U'?' ||
        (c == U'.' &&
         !(i > 0 && i + 1 < text.size() && IsDigit(text[i - 1]) &&
           IsDigit(text[i + 1])));
    if (terminator) {
      while (i < text.size() &&
             (text[i] == U'.' || text[i] == U'!' || text[i] == U'?')) {
        ++i;
      }
      if (content) ++count;
      content = false;
      continue;
    }
    if (utf8::IsAlnum(c)) content = true;
    ++i;
  }
  if (content) ++count;
  if (count == 0 && !Chunks(text).empty()) count = 1;
  return count;
}

}  // namespace

CommonWords CommonWords::Load(std::istream& in) {
  CommonWords out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.words_.insert(line.substr(b, e - b + 1));
  }
  return out;
}

const CommonWords& CommonWords::Bundled() {
  static const CommonWords words = [] {
    std::istringstream in(kBundledCommonWords);
    return Load(in);
  }();
  return words;
}

int CountSyllables(std::string_view word) {
  std::string letters;
  for (char32_t c : utf8::Decode(word)) {
    if (IsAsciiLetter(c)) {
      letters.push_back(static_cast<char>(utf8::ToLower(c)));
    } else if (c >= 0x80 && utf8::IsAlnum(c)) {
      letters.push_back('#');  // non-ASCII letter, treated as a consonant
    }
  }
  if (letters.empty()) return 0;

  int groups = 0;
  bool in_vowels = false;
  for (char c : letters) {
    const bool v = IsVowel(c);
    if (v && !in_vowels) ++groups;
    in_vowels = v;
  }
  const std::size_t n = letters.size();
  auto ends_with = [&](std::string_view s) {
    return n >= s.size() && std::string_view(letters).substr(n - s.size()) == s;
  };
  // Consonant before the suffix, so the e forms its own vowel group, and
  // not the syllabic "-le" of "table" or "troubled".
  auto lone_e_before = [&](std::size_t suffix) {
    if (n < suffix + 2 || IsVowel(letters[n - suffix - 2])) return false;
    return !(letters[n - suffix - 2] == 'l' && n >= suffix + 3 &&
             !IsVowel(letters[n - suffix - 3]));
  };
  if (groups > 1) {
    if (letters[n - 1] == 'e') {
      const bool consonant_le =
          n >= 3 && letters[n - 2] == 'l' && !IsVowel(letters[n - 3]);
      const bool double_e = letters[n - 2] == 'e';
      if (!consonant_le && !double_e) --groups;
    } else if (ends_with("ed") && lone_e_before(1)) {
      // "stopped", but not "wanted" or "needed"
      const char c = letters[n - 3];
      if (c != 't' && c != 'd') --groups;
    } else if (ends_with("es") && lone_e_before(1)) {
      // "times", but not "boxes", "places" or "wishes"
      const char c = letters[n - 3];
      const bool sh_ch =
          c == 'h' && n >= 4 && (letters[n - 4] == 's' || letters[n - 4] == 'c');
      const bool sibilant =
          c == 's' || c == 'x' || c == 'z' || c == 'c' || c == 'g' || sh_ch;
      if (!sibilant) --groups;
    } else if (ends_with("ely") && lone_e_before(2)) {
      --groups;  // "safely"
    }
  }
  return groups < 1 ? 1 : groups;
}

TextStats ComputeTextStats(std::string_view text, const CommonWords& common) {
  TextStats stats;
  const std::u32string chars = utf8::Decode(text);
  stats.character_count = static_cast<long>(chars.size());

  std::set<std::string> difficult;
  for (std::u32string_view chunk : Chunks(chars)) {
    if (!HasAlnum(chunk)) continue;
    ++stats.lexicon_count;
    const std::string key = WordKey(chunk);
    const int syllables = CountSyllables(key);
    stats.syllable_count += syllables;
    if (syllables > 2 && !common.Contains(key)) difficult.insert(key);
  }
  stats.difficult_words = static_cast<long>(difficult.size());
  stats.sentence_count = CountSentences(chars);
  return stats;
}

TextStats ComputeTextStats(const Document& doc, const CommonWords& common) {
  TextStats stats = ComputeTextStats(doc.text, common);
  stats.num_ades = static_cast<long>(Disambiguate(doc.mentions).size());
  return stats;
}

}  // namespace adeval::corpus

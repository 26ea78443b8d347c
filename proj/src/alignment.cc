#include "adeval/alignment.h"

#include <optional>

#include "adeval/utf8.h"

namespace adeval::alignment {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Case-folded, whitespace-collapsed view of the source text that remembers
// where every normalized character came from.
struct NormalizedText {
  std::u32string chars;
  std::vector<CharIndex> begin;  // original offset of chars[i]
  std::vector<CharIndex> end;    // original end offset of chars[i]

  explicit NormalizedText(std::u32string_view text) {
    CharIndex i = 0;
    const auto n = static_cast<CharIndex>(text.size());
    while (i < n) {
      if (utf8::IsSpace(text[i])) {
        CharIndex j = i;
        while (j < n && utf8::IsSpace(text[j])) ++j;
        Push(U' ', i, j);
        i = j;
      } else {
        Push(utf8::ToLower(text[i]), i, i + 1);
        ++i;
      }
    }
  }

  void Push(char32_t c, CharIndex b, CharIndex e) {
    chars.push_back(c);
    begin.push_back(b);
    end.push_back(e);
  }

  // The match [a, a+len) must not split an alphanumeric run of the source.
  bool AtWordBoundaries(std::size_t a, std::size_t len) const {
    const std::size_t b = a + len;
    if (a > 0 && utf8::IsAlnum(chars[a - 1]) && utf8::IsAlnum(chars[a])) {
      return false;
    }
    if (b < chars.size() && utf8::IsAlnum(chars[b - 1]) &&
        utf8::IsAlnum(chars[b])) {
      return false;
    }
    return true;
  }

  Span ToOriginal(std::size_t a, std::size_t len) const {
    return {begin[a], end[a + len - 1]};
  }
};

std::vector<std::u32string> Words(std::string_view item) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : utf8::Decode(item)) {
    if (utf8::IsSpace(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::u32string> Folded(std::vector<std::u32string> words) {
  for (auto& w : words) {
    for (char32_t& c : w) c = utf8::ToLower(c);
  }
  return words;
}

std::u32string Join(const std::vector<std::u32string>& words, std::size_t from,
                    std::size_t to) {
  std::u32string out;
  for (std::size_t k = from; k < to; ++k) {
    if (k > from) out.push_back(U' ');
    out += words[k];
  }
  return out;
}

}  // namespace

GenerationOutput GenerationOutput::Parse(std::string raw) {
  GenerationOutput out;
  std::string_view view(raw);
  std::size_t pos = 0;
  while (pos <= view.size()) {
    std::size_t next = view.find(';', pos);
    if (next == std::string_view::npos) next = view.size();
    std::string item = Trim(view.substr(pos, next - pos));
    if (!item.empty()) out.items.push_back(std::move(item));
    pos = next + 1;
  }
  out.raw = std::move(raw);
  return out;
}

AlignmentResult Align(std::string_view text, const GenerationOutput& output) {
  const NormalizedText source(utf8::Decode(text));
  AlignmentResult result;

  // Returns the chosen occurrence as a span of the original text, or nothing.
  auto locate = [&](const std::u32string& needle) -> std::optional<Span> {
    std::optional<Span> leftmost;
    std::size_t pos = source.chars.find(needle);
    while (pos != std::u32string::npos) {
      if (source.AtWordBoundaries(pos, needle.size())) {
        const Span s = source.ToOriginal(pos, needle.size());
        if (!leftmost) leftmost = s;
        bool covered = false;
        for (const Span& e : result.spans) {
          if (e.Overlaps(s)) {
            covered = true;
            break;
          }
        }
        if (!covered) return s;
      }
      pos = source.chars.find(needle, pos + 1);
    }
    return leftmost;
  };

  for (std::size_t idx = 0; idx < output.items.size(); ++idx) {
    const auto original = Words(output.items[idx]);
    const auto words = Folded(original);
    std::size_t i = 0;
    while (i < words.size()) {
      bool matched = false;
      for (std::size_t j = words.size(); j > i; --j) {
        if (auto span = locate(Join(words, i, j))) {
          result.spans.push_back(*span);
          i = j;
          matched = true;
          break;
        }
      }
      if (!matched) {
        result.discarded.push_back({idx, utf8::Encode(original[i])});
        ++i;
      }
    }
  }
  return result;
}

std::vector<Span> DedupeSpans(std::vector<Span> spans) {
  return MergeSpans(std::move(spans));
}

}  // namespace adeval::alignment

#include "adeval/corpus.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "adeval/error.h"
#include "adeval/utf8.h"
#include "json.hpp"

namespace adeval::corpus {

namespace {

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseOffset(std::string_view s, CharIndex& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && out >= 0;
}

void CheckMention(const Mention& m, CharIndex text_length,
                  const std::string& where) {
  if (m.fragments.empty()) {
    throw ContractError(where + ": mention without fragments");
  }
  for (std::size_t i = 0; i < m.fragments.size(); ++i) {
    const Span& f = m.fragments[i];
    if (f.start < 0 || f.end > text_length || f.start >= f.end) {
      throw RangeError(where + ": fragment [" + std::to_string(f.start) +
                       ", " + std::to_string(f.end) +
                       ") outside text of length " +
                       std::to_string(text_length));
    }
    if (i > 0 && f.start < m.fragments[i - 1].end) {
      throw ContractError(where + ": fragments unsorted or overlapping");
    }
  }
}

}  // namespace

char ToChar(BioLabel label) { return static_cast<char>(label); }

BioLabel BioLabelFromChar(char c) {
  switch (c) {
    case 'B': return BioLabel::kB;
    case 'I': return BioLabel::kI;
    case 'O': return BioLabel::kO;
    default:
      throw ContractError(std::string("unknown BIO label '") + c + "'");
  }
}

Document ImportStandoff(std::string id, std::string text,
                        std::string_view annotations,
                        std::string_view source_name) {
  Document doc{std::move(id), std::move(text), {}};
  const auto length = static_cast<CharIndex>(utf8::Length(doc.text));
  const std::string source(source_name.empty() ? doc.id : source_name);

  std::size_t line_no = 0;
  for (std::string_view line : Split(annotations, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() != 'T') continue;

    const auto fields = Split(line, '\t');
    if (fields.size() < 2 || fields[0].size() < 2) {
      throw ParseError(source, line_no, "expected 'T<id>\\t<LABEL> <start> <end>'");
    }
    // "<LABEL> s e;s e;..." : the label is the first whitespace token, the
    // rest is a ';'-separated fragment list.
    std::string_view body = fields[1];
    const std::size_t label_end = body.find(' ');
    if (label_end == std::string_view::npos || label_end == 0) {
      throw ParseError(source, line_no, "missing label or offsets");
    }
    Mention m;
    m.label = std::string(body.substr(0, label_end));
    for (std::string_view frag : Split(body.substr(label_end + 1), ';')) {
      const auto parts = SplitWhitespace(frag);
      Span s;
      if (parts.size() != 2 || !ParseOffset(parts[0], s.start) ||
          !ParseOffset(parts[1], s.end)) {
        throw ParseError(source, line_no,
                         "malformed fragment '" + std::string(frag) + "'");
      }
      if (s.start >= s.end) {
        throw ParseError(source, line_no, "empty or reversed fragment");
      }
      if (s.end > length) {
        throw RangeError(source + ":" + std::to_string(line_no) +
                         ": offset " + std::to_string(s.end) +
                         " beyond text length " + std::to_string(length));
      }
      m.fragments.push_back(s);
    }
    std::sort(m.fragments.begin(), m.fragments.end());
    for (std::size_t i = 1; i < m.fragments.size(); ++i) {
      if (m.fragments[i].start < m.fragments[i - 1].end) {
        throw ParseError(source, line_no, "overlapping fragments in one mention");
      }
    }
    doc.mentions.push_back(std::move(m));
  }
  return doc;
}

void FilterLabels(Document& doc, std::span<const std::string> keep,
                  std::string_view relabel) {
  std::vector<Mention> kept;
  for (Mention& m : doc.mentions) {
    if (std::find(keep.begin(), keep.end(), m.label) == keep.end()) continue;
    if (!relabel.empty()) m.label = std::string(relabel);
    kept.push_back(std::move(m));
  }
  doc.mentions = std::move(kept);
}

std::vector<Span> Disambiguate(std::span<const Mention> mentions) {
  std::vector<Span> spans;
  for (const Mention& m : mentions) {
    spans.insert(spans.end(), m.fragments.begin(), m.fragments.end());
  }
  return MergeSpans(std::move(spans));
}

std::vector<Token> Tokenize(std::string_view text) {
  const std::u32string chars = utf8::Decode(text);
  std::vector<Token> tokens;
  const auto n = static_cast<CharIndex>(chars.size());
  CharIndex i = 0;
  while (i < n) {
    const char32_t c = chars[i];
    if (utf8::IsSpace(c)) {
      ++i;
      continue;
    }
    CharIndex j = i + 1;
    if (utf8::IsAlnum(c)) {
      while (j < n && utf8::IsAlnum(chars[j])) ++j;
    }
    tokens.push_back(
        {utf8::Encode(std::u32string_view(chars).substr(i, j - i)), i, j});
    i = j;
  }
  return tokens;
}

std::vector<BioLabel> SpansToBio(std::span<const Token> tokens,
                                 std::span<const Span> spans) {
  if (!IsSortedDisjoint(spans)) {
    throw ContractError("SpansToBio: spans must be sorted and disjoint");
  }
  std::vector<BioLabel> labels(tokens.size(), BioLabel::kO);
  // Two-pointer sweep; tokens and spans are both sorted.
  std::size_t s = 0;
  std::size_t last_span = SIZE_MAX;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const Span tok{tokens[t].start, tokens[t].end};
    while (s < spans.size() && spans[s].end <= tok.start) ++s;
    if (s < spans.size() && spans[s].Overlaps(tok)) {
      labels[t] = (last_span == s) ? BioLabel::kI : BioLabel::kB;
      last_span = s;
      // A token straddling two spans belongs to the first; the next span
      // then starts at a later token.
      if (spans[s].end <= tok.end) ++s;
    }
  }
  return labels;
}

BioDecoding BioToSpans(std::span<const Token> tokens,
                       std::span<const BioLabel> labels) {
  if (tokens.size() != labels.size()) {
    throw ContractError("BioToSpans: " + std::to_string(tokens.size()) +
                        " tokens but " + std::to_string(labels.size()) +
                        " labels");
  }
  BioDecoding out;
  bool open = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    BioLabel label = labels[i];
    if (label == BioLabel::kI && !open) {
      label = BioLabel::kB;
      ++out.repaired;
    }
    switch (label) {
      case BioLabel::kB:
        out.spans.push_back({tokens[i].start, tokens[i].end});
        open = true;
        break;
      case BioLabel::kI:
        out.spans.back().end = tokens[i].end;
        break;
      case BioLabel::kO:
        open = false;
        break;
    }
  }
  return out;
}

void Validate(const Document& doc) {
  const auto length = static_cast<CharIndex>(utf8::Length(doc.text));
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    CheckMention(doc.mentions[i], length,
                 "document '" + doc.id + "' mention " + std::to_string(i));
  }
}

std::vector<Document> ReadJsonl(std::istream& in,
                                std::string_view source_name) {
  const std::string source(source_name);
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Document doc;
      doc.id = j.at("id").get<std::string>();
      doc.text = j.at("text").get<std::string>();
      for (const auto& jm : j.value("mentions", nlohmann::json::array())) {
        Mention m;
        m.label = jm.value("label", std::string(kDefaultLabel));
        for (const auto& f : jm.at("fragments")) {
          m.fragments.push_back(
              {f.at(0).get<CharIndex>(), f.at(1).get<CharIndex>()});
        }
        doc.mentions.push_back(std::move(m));
      }
      Validate(doc);
      docs.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const std::logic_error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return docs;
}

void WriteJsonl(std::ostream& out, std::span<const Document> docs) {
  for (const Document& doc : docs) {
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    j["mentions"] = nlohmann::ordered_json::array();
    for (const Mention& m : doc.mentions) {
      nlohmann::ordered_json jm;
      jm["fragments"] = nlohmann::ordered_json::array();
      for (const Span& f : m.fragments) {
        jm["fragments"].push_back({f.start, f.end});
      }
      jm["label"] = m.label;
      j["mentions"].push_back(std::move(jm));
    }
    out << j.dump() << '\n';
  }
}

}  // namespace adeval::corpus

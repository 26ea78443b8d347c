#ifndef ADEVAL_UTF8_H_
#define ADEVAL_UTF8_H_

#include <string>
#include <string_view>

namespace adeval::utf8 {

// All character offsets in this library count Unicode scalar values, so text
// is decoded to UTF-32 before any offset arithmetic. Invalid byte sequences
// decode to U+FFFD, one replacement per offending byte.
std::u32string Decode(std::string_view bytes);
std::string Encode(std::u32string_view text);
std::string Encode(char32_t c);

// Number of scalar values in `bytes`.
std::size_t Length(std::string_view bytes);

bool IsSpace(char32_t c);
// ASCII letters and digits, plus every non-ASCII scalar that is neither
// whitespace nor in the General Punctuation / Latin-1 punctuation ranges.
bool IsAlnum(char32_t c);
// ASCII-only case folding; other scalars are returned unchanged.
char32_t ToLower(char32_t c);

}  // namespace adeval::utf8

#endif  // ADEVAL_UTF8_H_

#ifndef ADEVAL_ERROR_H_
#define ADEVAL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adeval {

// Malformed input file or record. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(Format(source, line, what)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

// An offset outside the text it refers to.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A violated precondition of an operation (overlapping spans, length
// mismatch, empty input where data is required, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace adeval

#endif  // ADEVAL_ERROR_H_

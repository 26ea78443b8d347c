#ifndef ADEVAL_FORMAT_H_
#define ADEVAL_FORMAT_H_

#include <string>

namespace adeval {

// Shortest decimal form that round-trips to the same double ("0.75",
// "0.6666666666666666"). Used for every number written to CSV or tables.
std::string FormatDouble(double value);

// Fixed-point with `digits` decimals ("70.43").
std::string FormatFixed(double value, int digits);

// Writes `content` to `path` through a temporary sibling and an atomic
// rename, creating parent directories as needed.
void WriteFileAtomic(const std::string& path, const std::string& content);

std::string ReadFile(const std::string& path);

}  // namespace adeval

#endif  // ADEVAL_FORMAT_H_

// vpeval/common.h

// Copyright 2026  vpeval authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VPEVAL_COMMON_H_
#define VPEVAL_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpeval {

// Bad inputs: malformed files, invalid configs, infeasible requests.
// CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures during an otherwise well-formed computation (singular matrices,
// degenerate score sets, ...). CLI maps these to exit code 2.
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Warning sink. Defaults to stderr; tests may swap it out.
void warn(const std::string& msg);
using WarnHandler = void (*)(const std::string&);
WarnHandler set_warn_handler(WarnHandler handler);

// ---------------------------------------------------------------------------
// Small string helpers
// ---------------------------------------------------------------------------

std::vector<std::string> split(std::string_view text, char delim);
std::string trim(std::string_view text);
std::string to_lower(std::string_view text);
bool contains_whitespace(std::string_view text);

// Strict double parser; rejects trailing junk, empty fields and (by default)
// non-finite values.
double parse_double(std::string_view text, bool allow_nonfinite = false);
long parse_long(std::string_view text);

// Fixed 17-significant-digit formatting ("%.17g"). Parsing the result and
// re-formatting reproduces the string exactly, which makes canonical files a
// fixed point of load/write.
std::string format_g17(double value);
// "%.*f" with the given number of decimals, for human-facing tables.
std::string format_fixed(double value, int decimals);

// FNV-1a, used to derive per-key RNG streams. Stable across platforms.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace vpeval

#endif  // VPEVAL_COMMON_H_

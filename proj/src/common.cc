// vpeval/common.cc

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

#include "vpeval/common.h"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace vpeval {

namespace {
void default_warn(const std::string& msg) {
  std::cerr << "vpeval: warning: " << msg << "\n";
}
WarnHandler g_warn_handler = &default_warn;
}  // namespace

void warn(const std::string& msg) { g_warn_handler(msg); }

WarnHandler set_warn_handler(WarnHandler handler) {
  WarnHandler old = g_warn_handler;
  g_warn_handler = handler ? handler : &default_warn;
  return old;
}

std::vector<std::string> split(std::string_view text, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool contains_whitespace(std::string_view text) {
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

double parse_double(std::string_view text, bool allow_nonfinite) {
  std::string buf = trim(text);
  if (buf.empty()) throw ValidationError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE)
    throw ValidationError("not a number: '" + buf + "'");
  if (!allow_nonfinite && !std::isfinite(value))
    throw ValidationError("non-finite value: '" + buf + "'");
  return value;
}

long parse_long(std::string_view text) {
  std::string buf = trim(text);
  if (buf.empty()) throw ValidationError("empty integer field");
  errno = 0;
  char* end = nullptr;
  long value = std::strtol(buf.c_str(), &end, 10);
  if (end != buf.c_str() + buf.size() || errno == ERANGE)
    throw ValidationError("not an integer: '" + buf + "'");
  return value;
}

std::string format_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace vpeval

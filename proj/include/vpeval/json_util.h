// vpeval/json_util.h

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

#ifndef VPEVAL_JSON_UTIL_H_
#define VPEVAL_JSON_UTIL_H_

#include <filesystem>
#include <string>

#include <json.hpp>

namespace vpeval {

using Json = nlohmann::json;

// Canonical serialization: object keys sorted (nlohmann's default map order),
// doubles rendered with fixed 17-significant-digit formatting, no whitespace.
// Two semantically equal documents always serialize to identical bytes, which
// is what cache keys and byte-stable artifacts are built on.
std::string canonical_dump(const Json& value);

// canonical_dump with a trailing newline, written atomically (tmp + rename).
void write_json_file(const std::filesystem::path& path, const Json& value);

Json parse_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin);

std::string read_text_file(const std::filesystem::path& path);
// Atomic write: same-directory temp file then rename.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace vpeval

#endif  // VPEVAL_JSON_UTIL_H_

// vpeval/cache.h

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

#ifndef VPEVAL_CACHE_H_
#define VPEVAL_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "vpeval/json_util.h"

namespace vpeval {

// Content-addressed artifact store. Keys are SHA-256 over the canonical
// serialization of everything that determines a step's output (step name,
// parameters, input hashes, engine fingerprint), so a hit is only possible
// when the artifact would be byte-identical. Writers publish through a
// same-directory temp file plus rename; an interrupted run never leaves a
// readable-but-corrupt entry. A per-key file lock makes concurrent writers
// of one key serialize while readers stay lock-free.
class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Key over canonical materials. Deterministic across platforms and config
  // key orderings.
  static std::string make_key(const Json& materials);

  bool contains(const std::string& key) const;
  std::filesystem::path artifact_path(const std::string& key) const;

  // Returns the artifact bytes for key, computing and publishing them if
  // absent. `hit` reports whether the artifact already existed.
  std::string get_or_compute(const std::string& key,
                             const std::function<std::string()>& compute, bool* hit = nullptr);

  std::string read(const std::string& key) const;

  struct Stats {
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
  };
  Stats stats() const;

  struct GcResult {
    std::size_t removed_entries = 0;
    std::size_t removed_temp_files = 0;
  };
  // Removes stray temp files always; removes entries older than max_age_days
  // (all entries when max_age_days is absent).
  GcResult gc(std::optional<double> max_age_days);

 private:
  std::filesystem::path dir_;
};

}  // namespace vpeval

#endif  // VPEVAL_CACHE_H_

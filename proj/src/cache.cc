// vpeval/cache.cc

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

#include "vpeval/cache.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <fstream>

#include "vpeval/common.h"
#include "vpeval/hash.h"

namespace vpeval {

namespace fs = std::filesystem;

namespace {

// flock-based exclusive lock, released on destruction.
class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw ComputeError("cannot open lock file: " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw ComputeError("cannot lock: " + path.string());
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

bool is_temp_name(const std::string& name) { return name.find(".tmp.") != std::string::npos; }

}  // namespace

CacheStore::CacheStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_ / "objects");
  fs::create_directories(dir_ / "locks");
}

std::string CacheStore::make_key(const Json& materials) {
  return sha256_hex(canonical_dump(materials));
}

fs::path CacheStore::artifact_path(const std::string& key) const {
  if (key.size() < 3) throw ComputeError("bad cache key: " + key);
  return dir_ / "objects" / key.substr(0, 2) / key;
}

bool CacheStore::contains(const std::string& key) const {
  return fs::exists(artifact_path(key));
}

std::string CacheStore::read(const std::string& key) const {
  return read_text_file(artifact_path(key));
}

std::string CacheStore::get_or_compute(const std::string& key,
                                       const std::function<std::string()>& compute, bool* hit) {
  const fs::path path = artifact_path(key);
  if (fs::exists(path)) {
    if (hit) *hit = true;
    return read_text_file(path);
  }
  FileLock lock(dir_ / "locks" / (key + ".lock"));
  // Another writer may have published while we waited for the lock.
  if (fs::exists(path)) {
    if (hit) *hit = true;
    return read_text_file(path);
  }
  if (hit) *hit = false;
  std::string artifact = compute();
  write_text_file_atomic(path, artifact);
  return artifact;
}

CacheStore::Stats CacheStore::stats() const {
  Stats s;
  const fs::path objects = dir_ / "objects";
  if (!fs::exists(objects)) return s;
  for (const auto& entry : fs::recursive_directory_iterator(objects)) {
    if (!entry.is_regular_file() || is_temp_name(entry.path().filename().string())) continue;
    ++s.entries;
    s.bytes += entry.file_size();
  }
  return s;
}

CacheStore::GcResult CacheStore::gc(std::optional<double> max_age_days) {
  GcResult result;
  const fs::path objects = dir_ / "objects";
  if (!fs::exists(objects)) return result;
  const auto now = fs::file_time_type::clock::now();
  std::vector<fs::path> doomed;
  for (const auto& entry : fs::recursive_directory_iterator(objects)) {
    if (!entry.is_regular_file()) continue;
    if (is_temp_name(entry.path().filename().string())) {
      doomed.push_back(entry.path());
      ++result.removed_temp_files;
      continue;
    }
    bool expire = true;
    if (max_age_days) {
      const auto age = now - entry.last_write_time();
      const double days =
          std::chrono::duration_cast<std::chrono::duration<double>>(age).count() / 86400.0;
      expire = days > *max_age_days;
    }
    if (expire) {
      doomed.push_back(entry.path());
      ++result.removed_entries;
    }
  }
  for (const fs::path& p : doomed) {
    std::error_code ec;
    fs::remove(p, ec);
  }
  // locks are recreated on demand; clear them alongside a full wipe
  if (!max_age_days) {
    std::error_code ec;
    fs::remove_all(dir_ / "locks", ec);
    fs::create_directories(dir_ / "locks");
  }
  return result;
}

}  // namespace vpeval

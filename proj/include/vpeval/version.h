// vpeval/version.h

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

#ifndef VPEVAL_VERSION_H_
#define VPEVAL_VERSION_H_

#include <string>

namespace vpeval {

inline constexpr const char* kVersion = "0.1.0";

// Version plus the active kernel lane, e.g. "vpeval-0.1.0+avx2". Cache keys
// embed this string so that results produced by a different engine build or
// kernel lane are never reused.
std::string engine_fingerprint();

}  // namespace vpeval

#endif  // VPEVAL_VERSION_H_

// tests/wer_test.cc

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

#include "vpeval/wer.h"

#include <random>

#include <doctest.h>

#include "oracles.h"
#include "vpeval/common.h"
#include "vpeval/corpus.h"

namespace vpeval {
namespace {

TEST_CASE("normalize_text lowercases, strips punctuation, keeps apostrophes") {
  CHECK(normalize_text("Hello, World!") == std::vector<std::string>{"hello", "world"});
  CHECK(normalize_text("").empty());
  CHECK(normalize_text("it's") == std::vector<std::string>{"it's"});
  CHECK(normalize_text("  a\t b\nc ") == std::vector<std::string>{"a", "b", "c"});
  TextNormalizer keep_dash{"-"};
  CHECK(keep_dash.normalize("e-mail it's") == std::vector<std::string>{"e-mail", "its"});
}

TEST_CASE("alignment counts on known cases") {
  CHECK(align_tokens({"a", "b", "c"}, {"a", "b", "c"}).substitutions == 0);

  // one substitution, not insert+delete
  AlignmentCounts c = align_tokens({"a", "b", "c"}, {"a", "x", "c"});
  CHECK(c.substitutions == 1);
  CHECK(c.deletions == 0);
  CHECK(c.insertions == 0);

  c = align_tokens({"a", "b"}, {});
  CHECK(c.deletions == 2);
  c = align_tokens({}, {"a", "b"});
  CHECK(c.insertions == 2);
}

TEST_CASE("swapping ref and hyp exchanges deletions and insertions") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 8), sym(0, 2);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> x, y;
    for (int i = len(rng); i > 0; --i) x.push_back(alphabet[sym(rng)]);
    for (int i = len(rng); i > 0; --i) y.push_back(alphabet[sym(rng)]);
    AlignmentCounts fwd = align_tokens(x, y);
    AlignmentCounts rev = align_tokens(y, x);
    CHECK(fwd.substitutions == rev.substitutions);
    CHECK(fwd.deletions == rev.insertions);
    CHECK(fwd.insertions == rev.deletions);
  }
}

TEST_CASE("dp edit distance equals brute force on short sequences") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 6), sym(0, 2);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> x, y;
    for (int i = len(rng); i > 0; --i) x.push_back(alphabet[sym(rng)]);
    for (int i = len(rng); i > 0; --i) y.push_back(alphabet[sym(rng)]);
    AlignmentCounts c = align_tokens(x, y);
    CHECK(c.substitutions + c.deletions + c.insertions ==
          testing::edit_distance_bruteforce(x, y));
  }
}

TEST_CASE("corpus wer pools edits over reference length") {
  TranscriptSet ref, hyp;
  ref.entries["u1"] = {"a", "b", "c"};
  ref.entries["u2"] = {"d", "e"};
  hyp.entries["u1"] = {"a", "x", "c"};
  hyp.entries["u2"] = {"d", "e"};
  WerResult r = wer(ref, hyp);
  CHECK(r.substitutions == 1);
  CHECK(r.reference_tokens == 5);
  CHECK(r.wer == doctest::Approx(0.2));

  WerResult self = wer(ref, ref);
  CHECK(self.wer == 0.0);
}

TEST_CASE("missing hypothesis counts as deletions, empty ref corpus errors") {
  TranscriptSet ref, hyp;
  ref.entries["u1"] = {"a", "b"};
  WarnHandler old = set_warn_handler([](const std::string&) {});
  WerResult r = wer(ref, hyp);
  set_warn_handler(old);
  CHECK(r.deletions == 2);
  CHECK(r.wer == doctest::Approx(1.0));

  TranscriptSet empty;
  CHECK_THROWS_AS(wer(empty, hyp), ComputeError);
}

TEST_CASE("insertions can push wer above 1") {
  TranscriptSet ref, hyp;
  ref.entries["u1"] = {"a"};
  hyp.entries["u1"] = {"a", "b", "c", "d"};
  WerResult r = wer(ref, hyp);
  CHECK(r.insertions == 3);
  CHECK(r.wer == doctest::Approx(3.0));
  CHECK(r.wer <= 1.0 + static_cast<double>(r.insertions) / r.reference_tokens);
}

TEST_CASE("alignment dump emits one row per utterance") {
  TranscriptSet ref, hyp;
  ref.entries["u1"] = {"a", "b"};
  hyp.entries["u1"] = {"a"};
  std::vector<std::string> dump;
  wer(ref, hyp, &dump);
  REQUIRE(dump.size() == 1);
  CHECK(dump[0] == "u1\t0\t1\t0\t2");
}

}  // namespace
}  // namespace vpeval

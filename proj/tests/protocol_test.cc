// tests/protocol_test.cc

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

#include "vpeval/protocol.h"

#include <filesystem>
#include <random>
#include <set>

#include <doctest.h>

#include "oracles.h"
#include "vpeval/common.h"

namespace vpeval {
namespace {

TEST_CASE("condition specs encode the attack matrix") {
  auto oo = condition_spec(AsvCondition::kOO);
  CHECK(oo.enroll_condition == Condition::kOriginal);
  CHECK(oo.trial_condition == Condition::kOriginal);
  CHECK(oo.space == Space::kEval);

  auto semi = condition_spec(AsvCondition::kAASemi);
  CHECK(semi.enroll_condition == Condition::kAnonymized);
  CHECK(semi.trial_condition == Condition::kAnonymized);
  CHECK(semi.space == Space::kEvalAnon);

  auto rr = condition_spec(AsvCondition::kRRLazy);
  CHECK(rr.enroll_condition == Condition::kResynthesized);
  CHECK(rr.trial_condition == Condition::kResynthesized);
  CHECK(rr.space == Space::kEval);

  // every other label uses the eval space
  for (AsvCondition c : all_asv_conditions())
    if (c != AsvCondition::kAASemi) CHECK(condition_spec(c).space == Space::kEval);

  CHECK(parse_asv_condition("AA-lazy") == AsvCondition::kAALazy);
  CHECK_THROWS_AS(parse_asv_condition("bogus"), ValidationError);
  CHECK(parse_asr_condition("A-semi") == AsrCondition::kASemi);
}

TEST_CASE("resolve_condition is total over a complete space map") {
  testing::SyntheticSpec spec;
  spec.speakers = 3;
  spec.utts_per_speaker = 2;
  spec.dim = 2;
  std::vector<EmbeddingSet> sets;
  std::map<std::pair<Condition, Space>, const EmbeddingSet*> available;
  for (Condition c : {Condition::kOriginal, Condition::kAnonymized, Condition::kResynthesized})
    for (Space s : {Space::kEval, Space::kEvalAnon}) {
      spec.condition = c;
      spec.space = s;
      sets.push_back(testing::synthetic_embeddings(spec));
    }
  std::size_t idx = 0;
  for (Condition c : {Condition::kOriginal, Condition::kAnonymized, Condition::kResynthesized})
    for (Space s : {Space::kEval, Space::kEvalAnon}) available[{c, s}] = &sets[idx++];

  for (AsvCondition label : all_asv_conditions()) {
    auto [enroll, trial] = resolve_condition(label, available);
    const ConditionSpec cs = condition_spec(label);
    CHECK(enroll->condition() == cs.enroll_condition);
    CHECK(trial->condition() == cs.trial_condition);
    CHECK(enroll->space() == cs.space);
  }

  std::map<std::pair<Condition, Space>, const EmbeddingSet*> partial = available;
  partial.erase({Condition::kAnonymized, Space::kEvalAnon});
  CHECK_THROWS_WITH_AS(resolve_condition(AsvCondition::kAASemi, partial),
                       doctest::Contains("eval_anon"), ValidationError);
}

TEST_CASE("generate_trials exhaustively pairs enroll models with utterances") {
  std::map<std::string, std::string> enrolls{{"e1", "s1"}, {"e2", "s2"}};
  std::vector<std::pair<std::string, std::string>> utts{
      {"u1", "s1"}, {"u2", "s1"}, {"u3", "s3"}};
  TrialList list = generate_trials(enrolls, utts);
  CHECK(list.trials.size() == 6);
  CHECK(list.target_count() == 2);  // e1 with u1, u2

  // speaker with no trial utterances contributes only nontargets
  std::size_t e2_targets = 0;
  for (const Trial& t : list.trials)
    if (t.enroll_id == "e2" && t.target) ++e2_targets;
  CHECK(e2_targets == 0);

  CHECK_THROWS_AS(generate_trials({}, utts), ValidationError);
  CHECK_THROWS_AS(generate_trials(enrolls, {}), ValidationError);
}

TEST_CASE("generated trials round-trip through the csv format") {
  std::map<std::string, std::string> enrolls{{"e1", "s1"}};
  std::vector<std::pair<std::string, std::string>> utts{{"u1", "s1"}, {"u2", "s2"}};
  TrialList list = generate_trials(enrolls, utts, TrialPolicy::kExhaustive, "OO");
  auto tmp = std::filesystem::temp_directory_path() /
             ("vpeval-trials-" + std::to_string(std::random_device{}()) + ".csv");
  write_trials(tmp, list);
  TrialList loaded = load_trials(tmp, "OO");
  CHECK(loaded.trials.size() == list.trials.size());
  for (std::size_t i = 0; i < list.trials.size(); ++i) {
    CHECK(loaded.trials[i].enroll_id == list.trials[i].enroll_id);
    CHECK(loaded.trials[i].utt_id == list.trials[i].utt_id);
    CHECK(loaded.trials[i].target == list.trials[i].target);
  }
  std::filesystem::remove(tmp);
}

TEST_CASE("reduce_dataset strategies") {
  testing::SyntheticSpec spec;
  spec.speakers = 9;
  spec.utts_per_speaker = 12;
  spec.dim = 4;
  EmbeddingSet set = testing::synthetic_embeddings(spec);

  // all = identity
  EmbeddingSet all = reduce_dataset(set, {ReductionStrategy::kAll, 0, 1});
  CHECK(all.size() == set.size());

  // utts_per_speaker caps at availability
  EmbeddingSet capped =
      reduce_dataset(set, {ReductionStrategy::kUttsPerSpeaker, 50, 1});
  CHECK(capped.size() == set.size());

  EmbeddingSet five = reduce_dataset(set, {ReductionStrategy::kUttsPerSpeaker, 5, 1});
  CHECK(five.size() == 45);
  for (const auto& [spk, rows] : five.speaker_table()) CHECK(rows.size() == 5);

  // speaker_count keeps whole speakers
  EmbeddingSet spk3 = reduce_dataset(set, {ReductionStrategy::kSpeakerCount, 3, 1});
  CHECK(spk3.speaker_table().size() == 3);
  CHECK(spk3.size() == 36);
  CHECK_THROWS_AS(reduce_dataset(set, {ReductionStrategy::kSpeakerCount, 10, 1}),
                  ValidationError);
  CHECK_THROWS_AS(reduce_dataset(set, {ReductionStrategy::kUttsPerSpeaker, 0, 1}),
                  ValidationError);
}

TEST_CASE("reduction sampling is nested across amounts") {
  testing::SyntheticSpec spec;
  spec.speakers = 7;
  spec.utts_per_speaker = 100;
  spec.dim = 2;
  EmbeddingSet set = testing::synthetic_embeddings(spec);

  for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
    std::set<std::string> prev;
    for (int amount : {10, 50, 90}) {
      auto manifest =
          reduction_manifest(set, {ReductionStrategy::kUttsPerSpeaker, amount, seed});
      std::set<std::string> cur(manifest.begin(), manifest.end());
      CHECK(cur.size() == static_cast<std::size_t>(7 * amount));
      for (const auto& utt : prev) CHECK(cur.count(utt) == 1);
      prev = std::move(cur);
    }

    // nested speaker subsets too
    std::set<std::string> prev_spk;
    for (int amount : {2, 4, 6}) {
      EmbeddingSet sub = reduce_dataset(set, {ReductionStrategy::kSpeakerCount, amount, seed});
      auto speakers = sub.speakers_sorted();
      std::set<std::string> cur(speakers.begin(), speakers.end());
      for (const auto& spk : prev_spk) CHECK(cur.count(spk) == 1);
      prev_spk = std::move(cur);
    }
  }

  // reproducible given the seed
  auto m1 = reduction_manifest(set, {ReductionStrategy::kUttsPerSpeaker, 10, 5});
  auto m2 = reduction_manifest(set, {ReductionStrategy::kUttsPerSpeaker, 10, 5});
  CHECK(m1 == m2);
}

}  // namespace
}  // namespace vpeval

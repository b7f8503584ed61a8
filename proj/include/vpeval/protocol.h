// vpeval/protocol.h

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

#ifndef VPEVAL_PROTOCOL_H_
#define VPEVAL_PROTOCOL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vpeval/corpus.h"

namespace vpeval {

// Verification attack conditions. The first letter describes the enrollment
// side, the second the trial side: O original, A anonymized, R resynthesized.
// The -lazy / -semi suffix says whether the attacker's evaluation model was
// trained on original (eval space) or anonymized (eval_anon space) data.
enum class AsvCondition { kOO, kOA, kAALazy, kAASemi, kOR, kRRLazy };
// Recognition conditions keying hypothesis transcripts.
enum class AsrCondition { kO, kALazy, kASemi, kRLazy };

const char* asv_condition_name(AsvCondition c);
AsvCondition parse_asv_condition(const std::string& label);
const std::vector<AsvCondition>& all_asv_conditions();

const char* asr_condition_name(AsrCondition c);
AsrCondition parse_asr_condition(const std::string& label);

struct ConditionSpec {
  AsvCondition label;
  Condition enroll_condition;
  Condition trial_condition;
  Space space;
};

// The fixed (enrollment, trial, space) assignment for a condition label.
ConditionSpec condition_spec(AsvCondition label);

// Looks up the two embedding sets feeding scoring for a condition. Missing
// sets are reported with the exact (condition, space) gap.
std::pair<const EmbeddingSet*, const EmbeddingSet*> resolve_condition(
    AsvCondition label,
    const std::map<std::pair<Condition, Space>, const EmbeddingSet*>& available);

enum class TrialPolicy { kExhaustive };

// Exhaustive trial generation: every (enroll-model, trial-utterance) pair,
// target iff the speakers match. Deterministic ordering (enroll id, utt id).
TrialList generate_trials(const std::map<std::string, std::string>& enroll_speakers,
                          const std::vector<std::pair<std::string, std::string>>& trial_utts,
                          TrialPolicy policy = TrialPolicy::kExhaustive,
                          const std::string& condition_label = "");

enum class ReductionStrategy { kUttsPerSpeaker, kSpeakerCount, kAll };
const char* reduction_strategy_name(ReductionStrategy s);
ReductionStrategy parse_reduction_strategy(const std::string& name);

struct ReductionSpec {
  ReductionStrategy strategy = ReductionStrategy::kAll;
  int amount = 0;  // >= 1 unless strategy == kAll
  std::uint64_t seed = 0;
};

// Deterministic subset selection for cheaper training-data anonymization.
// Sampling is nested: for a fixed seed the subset for a smaller amount is
// contained in the subset for a larger one (per-speaker utterance prefixes,
// and a fixed speaker permutation for speaker_count), so cost sweeps reuse
// work. utts_per_speaker keeps min(amount, available) per speaker;
// speaker_count keeps every utterance of the selected speakers.
EmbeddingSet reduce_dataset(const EmbeddingSet& set, const ReductionSpec& spec);

// The utterance ids reduce_dataset would keep, sorted; this is the manifest
// handed to an external anonymization run (one id per line).
std::vector<std::string> reduction_manifest(const EmbeddingSet& set, const ReductionSpec& spec);
void write_reduction_manifest(const std::filesystem::path& path,
                              const std::vector<std::string>& utts);

}  // namespace vpeval

#endif  // VPEVAL_PROTOCOL_H_

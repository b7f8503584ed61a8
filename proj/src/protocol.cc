// vpeval/protocol.cc

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

#include <algorithm>
#include <random>
#include <set>

#include "vpeval/common.h"
#include "vpeval/json_util.h"

namespace vpeval {

const char* asv_condition_name(AsvCondition c) {
  switch (c) {
    case AsvCondition::kOO: return "OO";
    case AsvCondition::kOA: return "OA";
    case AsvCondition::kAALazy: return "AA-lazy";
    case AsvCondition::kAASemi: return "AA-semi";
    case AsvCondition::kOR: return "OR";
    case AsvCondition::kRRLazy: return "RR-lazy";
  }
  return "unknown";
}

AsvCondition parse_asv_condition(const std::string& label) {
  for (AsvCondition c : all_asv_conditions())
    if (label == asv_condition_name(c)) return c;
  throw ValidationError("unknown ASV condition label: '" + label + "'");
}

const std::vector<AsvCondition>& all_asv_conditions() {
  static const std::vector<AsvCondition> all = {
      AsvCondition::kOO,     AsvCondition::kOA, AsvCondition::kAALazy,
      AsvCondition::kAASemi, AsvCondition::kOR, AsvCondition::kRRLazy,
  };
  return all;
}

const char* asr_condition_name(AsrCondition c) {
  switch (c) {
    case AsrCondition::kO: return "O";
    case AsrCondition::kALazy: return "A-lazy";
    case AsrCondition::kASemi: return "A-semi";
    case AsrCondition::kRLazy: return "R-lazy";
  }
  return "unknown";
}

AsrCondition parse_asr_condition(const std::string& label) {
  for (AsrCondition c :
       {AsrCondition::kO, AsrCondition::kALazy, AsrCondition::kASemi, AsrCondition::kRLazy})
    if (label == asr_condition_name(c)) return c;
  throw ValidationError("unknown ASR condition label: '" + label + "'");
}

ConditionSpec condition_spec(AsvCondition label) {
  switch (label) {
    case AsvCondition::kOO:
      return {label, Condition::kOriginal, Condition::kOriginal, Space::kEval};
    case AsvCondition::kOA:
      return {label, Condition::kOriginal, Condition::kAnonymized, Space::kEval};
    case AsvCondition::kAALazy:
      return {label, Condition::kAnonymized, Condition::kAnonymized, Space::kEval};
    case AsvCondition::kAASemi:
      return {label, Condition::kAnonymized, Condition::kAnonymized, Space::kEvalAnon};
    case AsvCondition::kOR:
      return {label, Condition::kOriginal, Condition::kResynthesized, Space::kEval};
    case AsvCondition::kRRLazy:
      return {label, Condition::kResynthesized, Condition::kResynthesized, Space::kEval};
  }
  throw ValidationError("unknown ASV condition");
}

std::pair<const EmbeddingSet*, const EmbeddingSet*> resolve_condition(
    AsvCondition label,
    const std::map<std::pair<Condition, Space>, const EmbeddingSet*>& available) {
  const ConditionSpec spec = condition_spec(label);
  auto lookup = [&](Condition cond) -> const EmbeddingSet* {
    auto it = available.find({cond, spec.space});
    if (it == available.end() || it->second == nullptr)
      throw ValidationError(std::string("condition ") + asv_condition_name(label) +
                            ": missing embeddings for (" + condition_name(cond) + ", " +
                            space_name(spec.space) + ")");
    return it->second;
  };
  return {lookup(spec.enroll_condition), lookup(spec.trial_condition)};
}

TrialList generate_trials(const std::map<std::string, std::string>& enroll_speakers,
                          const std::vector<std::pair<std::string, std::string>>& trial_utts,
                          TrialPolicy policy, const std::string& condition_label) {
  if (enroll_speakers.empty()) throw ValidationError("generate_trials: no enrollment models");
  if (trial_utts.empty()) throw ValidationError("generate_trials: no trial utterances");
  if (policy != TrialPolicy::kExhaustive)
    throw ValidationError("generate_trials: unsupported policy");

  std::vector<std::pair<std::string, std::string>> utts = trial_utts;
  std::sort(utts.begin(), utts.end());

  TrialList list;
  list.condition_label = condition_label;
  list.trials.reserve(enroll_speakers.size() * utts.size());
  for (const auto& [enroll_id, speaker] : enroll_speakers) {
    for (const auto& [utt, utt_speaker] : utts) {
      list.trials.push_back({enroll_id, utt, speaker == utt_speaker});
    }
  }
  return list;
}

const char* reduction_strategy_name(ReductionStrategy s) {
  switch (s) {
    case ReductionStrategy::kUttsPerSpeaker: return "utts_per_speaker";
    case ReductionStrategy::kSpeakerCount: return "speaker_count";
    case ReductionStrategy::kAll: return "all";
  }
  return "unknown";
}

ReductionStrategy parse_reduction_strategy(const std::string& name) {
  if (name == "utts_per_speaker") return ReductionStrategy::kUttsPerSpeaker;
  if (name == "speaker_count") return ReductionStrategy::kSpeakerCount;
  if (name == "all") return ReductionStrategy::kAll;
  throw ValidationError("unknown reduction strategy: '" + name + "'");
}

namespace {

// Fixed permutation of a speaker's utterance rows; subsets are prefixes so a
// larger amount always contains a smaller one.
std::vector<std::size_t> speaker_permutation(const std::vector<std::size_t>& rows,
                                             std::uint64_t seed, const std::string& speaker) {
  std::vector<std::size_t> perm = rows;
  std::mt19937_64 rng(seed ^ fnv1a64(speaker));
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

std::set<std::string> selected_utts(const EmbeddingSet& set, const ReductionSpec& spec) {
  auto table = set.speaker_table();
  std::set<std::string> keep;
  switch (spec.strategy) {
    case ReductionStrategy::kAll: {
      for (std::size_t i = 0; i < set.size(); ++i) keep.insert(set.utt(i));
      break;
    }
    case ReductionStrategy::kUttsPerSpeaker: {
      if (spec.amount < 1) throw ValidationError("reduction: amount must be >= 1");
      for (const auto& [speaker, rows] : table) {
        auto perm = speaker_permutation(rows, spec.seed, speaker);
        const std::size_t take = std::min<std::size_t>(perm.size(), spec.amount);
        for (std::size_t i = 0; i < take; ++i) keep.insert(set.utt(perm[i]));
      }
      break;
    }
    case ReductionStrategy::kSpeakerCount: {
      if (spec.amount < 1) throw ValidationError("reduction: amount must be >= 1");
      std::vector<std::string> speakers;
      for (const auto& [speaker, rows] : table) speakers.push_back(speaker);
      if (static_cast<std::size_t>(spec.amount) > speakers.size())
        throw ValidationError("reduction: requested " + std::to_string(spec.amount) +
                              " speakers, only " + std::to_string(speakers.size()) +
                              " available");
      std::mt19937_64 rng(spec.seed);
      std::shuffle(speakers.begin(), speakers.end(), rng);
      speakers.resize(static_cast<std::size_t>(spec.amount));
      for (const auto& speaker : speakers)
        for (std::size_t row : table.at(speaker)) keep.insert(set.utt(row));
      break;
    }
  }
  return keep;
}

}  // namespace

EmbeddingSet reduce_dataset(const EmbeddingSet& set, const ReductionSpec& spec) {
  if (spec.strategy == ReductionStrategy::kAll) return set;
  auto keep = selected_utts(set, spec);
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.reserve(keep.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!keep.count(set.utt(i))) continue;
    auto v = set.vec(i);
    entries.emplace_back(set.utt(i), set.speaker(i), std::vector<double>(v.begin(), v.end()));
  }
  return set.with_entries(std::move(entries));
}

std::vector<std::string> reduction_manifest(const EmbeddingSet& set, const ReductionSpec& spec) {
  auto keep = selected_utts(set, spec);
  return {keep.begin(), keep.end()};
}

void write_reduction_manifest(const std::filesystem::path& path,
                              const std::vector<std::string>& utts) {
  std::string out;
  for (const auto& utt : utts) out += utt + "\n";
  write_text_file_atomic(path, out);
}

}  // namespace vpeval

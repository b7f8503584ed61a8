// vpeval/corpus.cc

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

#include "vpeval/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vpeval/common.h"
#include "vpeval/json_util.h"
#include "vpeval/kernels.h"
#include "vpeval/wer.h"

namespace vpeval {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::kOriginal: return "original";
    case Condition::kAnonymized: return "anonymized";
    case Condition::kResynthesized: return "resynthesized";
  }
  return "unknown";
}

const char* space_name(Space s) {
  return s == Space::kEval ? "eval" : "eval_anon";
}

Condition parse_condition(const std::string& name) {
  if (name == "original") return Condition::kOriginal;
  if (name == "anonymized") return Condition::kAnonymized;
  if (name == "resynthesized") return Condition::kResynthesized;
  throw ValidationError("unknown condition: '" + name + "'");
}

Space parse_space(const std::string& name) {
  if (name == "eval") return Space::kEval;
  if (name == "eval_anon") return Space::kEvalAnon;
  throw ValidationError("unknown embedding space: '" + name + "'");
}

namespace {

void check_identifier(const std::string& id, const char* what) {
  if (id.empty()) throw ValidationError(std::string(what) + " id is empty");
  if (contains_whitespace(id))
    throw ValidationError(std::string(what) + " id contains whitespace: '" + id + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// EmbeddingSet
// ---------------------------------------------------------------------------

EmbeddingSet::EmbeddingSet(
    std::string dataset, Condition condition, Space space,
    std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries)
    : dataset_(std::move(dataset)), condition_(condition), space_(space) {
  if (entries.empty()) throw ValidationError("embedding set '" + dataset_ + "': no records");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  dim_ = static_cast<int>(std::get<2>(entries.front()).size());
  if (dim_ <= 0) throw ValidationError("embedding set '" + dataset_ + "': zero-dim vector");
  utts_.reserve(entries.size());
  speakers_.reserve(entries.size());
  data_.reserve(entries.size() * static_cast<std::size_t>(dim_));
  for (auto& [utt, spk, vec] : entries) {
    check_identifier(utt, "utterance");
    check_identifier(spk, "speaker");
    if (static_cast<int>(vec.size()) != dim_)
      throw ValidationError("embedding set '" + dataset_ + "': dimension mismatch for '" + utt +
                            "' (" + std::to_string(vec.size()) + " vs " + std::to_string(dim_) +
                            ")");
    for (double v : vec)
      if (!std::isfinite(v))
        throw ValidationError("embedding set '" + dataset_ + "': non-finite value in '" + utt +
                              "'");
    if (!index_.emplace(utt, utts_.size()).second)
      throw ValidationError("embedding set '" + dataset_ + "': duplicate utterance '" + utt +
                            "'");
    utts_.push_back(std::move(utt));
    speakers_.push_back(std::move(spk));
    data_.insert(data_.end(), vec.begin(), vec.end());
  }
}

std::optional<std::size_t> EmbeddingSet::find(const std::string& utt) const {
  auto it = index_.find(utt);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::vector<std::size_t>> EmbeddingSet::speaker_table() const {
  std::map<std::string, std::vector<std::size_t>> table;
  for (std::size_t i = 0; i < utts_.size(); ++i) table[speakers_[i]].push_back(i);
  return table;
}

std::vector<std::string> EmbeddingSet::speakers_sorted() const {
  std::set<std::string> uniq(speakers_.begin(), speakers_.end());
  return {uniq.begin(), uniq.end()};
}

std::vector<double> EmbeddingSet::mean() const {
  std::vector<double> m(static_cast<std::size_t>(dim_), 0.0);
  for (std::size_t i = 0; i < size(); ++i) kernels::add_inplace(m, vec(i));
  kernels::scale_inplace(m, 1.0 / static_cast<double>(size()));
  return m;
}

bool EmbeddingSet::same_collection(const EmbeddingSet& other) const {
  return dataset_ == other.dataset_ && condition_ == other.condition_ && space_ == other.space_;
}

EmbeddingSet EmbeddingSet::with_entries(
    std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries) const {
  return EmbeddingSet(dataset_, condition_, space_, std::move(entries));
}

EmbeddingSet load_embeddings(const std::filesystem::path& path, std::optional<int> expected_dim) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open embeddings file: " + path.string());

  std::string dataset = path.stem().string();
  Condition condition = Condition::kOriginal;
  Space space = Space::kEval;
  std::optional<int> manifest_dim;

  std::filesystem::path manifest_path = path;
  manifest_path += ".manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    Json m = parse_json_file(manifest_path);
    if (m.contains("dataset")) dataset = m.at("dataset").get<std::string>();
    if (m.contains("condition")) condition = parse_condition(m.at("condition").get<std::string>());
    if (m.contains("space")) space = parse_space(m.at("space").get<std::string>());
    if (m.contains("dim")) manifest_dim = m.at("dim").get<int>();
  }

  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  std::set<std::string> seen;
  std::optional<int> dim = expected_dim ? expected_dim : manifest_dim;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Json rec = parse_json_text(line, path.string() + ":" + std::to_string(line_no));
    if (!rec.is_object() || !rec.contains("utt") || !rec.contains("spk") || !rec.contains("emb"))
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected object with utt/spk/emb");
    std::string utt = rec.at("utt").get<std::string>();
    std::string spk = rec.at("spk").get<std::string>();
    if (!seen.insert(utt).second)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate utterance '" + utt + "'");
    const Json& emb = rec.at("emb");
    if (!emb.is_array() || emb.empty())
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": emb must be a non-empty array");
    std::vector<double> vec;
    vec.reserve(emb.size());
    for (const Json& v : emb) {
      if (!v.is_number())
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": non-numeric embedding value");
      double x = v.get<double>();
      if (!std::isfinite(x))
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": non-finite embedding value");
      vec.push_back(x);
    }
    if (!dim) dim = static_cast<int>(vec.size());
    if (static_cast<int>(vec.size()) != *dim)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": dimension mismatch (" + std::to_string(vec.size()) + " vs " +
                            std::to_string(*dim) + ")");
    entries.emplace_back(std::move(utt), std::move(spk), std::move(vec));
  }
  if (entries.empty()) throw ValidationError(path.string() + ": no records");
  return EmbeddingSet(std::move(dataset), condition, space, std::move(entries));
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    out += "{\"utt\":" + Json(set.utt(i)).dump() + ",\"spk\":" + Json(set.speaker(i)).dump() +
           ",\"emb\":[";
    auto v = set.vec(i);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) out += ',';
      out += format_g17(v[j]);
    }
    out += "]}\n";
  }
  write_text_file_atomic(path, out);

  Json manifest;
  manifest["dataset"] = set.dataset();
  manifest["condition"] = condition_name(set.condition());
  manifest["space"] = space_name(set.space());
  manifest["dim"] = set.dim();
  manifest["count"] = set.size();
  std::filesystem::path manifest_path = path;
  manifest_path += ".manifest.json";
  write_json_file(manifest_path, manifest);
}

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

TranscriptSet load_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open transcript file: " + path.string());
  TranscriptSet set;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": missing tab separator");
    std::string utt = line.substr(0, tab);
    check_identifier(utt, "utterance");
    auto tokens = normalize_text(line.substr(tab + 1));
    if (set.entries.count(utt))
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate utterance '" + utt + "'");
    if (tokens.empty()) {
      set.empty_utts.push_back(utt);
      warn(path.string() + ": empty transcript for '" + utt + "'");
    }
    set.entries.emplace(std::move(utt), std::move(tokens));
  }
  return set;
}

void write_transcripts(const std::filesystem::path& path, const TranscriptSet& set) {
  std::string out;
  for (const auto& [utt, tokens] : set.entries) {
    out += utt;
    out += '\t';
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out += ' ';
      out += tokens[i];
    }
    out += '\n';
  }
  write_text_file_atomic(path, out);
}

// ---------------------------------------------------------------------------
// Trials and scores
// ---------------------------------------------------------------------------

std::size_t TrialList::target_count() const {
  std::size_t n = 0;
  for (const Trial& t : trials) n += t.target ? 1 : 0;
  return n;
}

std::size_t TrialList::nontarget_count() const { return trials.size() - target_count(); }

const char* score_kind_name(ScoreKind k) { return k == ScoreKind::kLlr ? "llr" : "cosine"; }

ScoreKind parse_score_kind(const std::string& name) {
  if (name == "llr") return ScoreKind::kLlr;
  if (name == "cosine") return ScoreKind::kCosine;
  throw ValidationError("unknown score kind: '" + name + "'");
}

std::vector<double> ScoreSet::target_scores() const {
  std::vector<double> out;
  for (const ScoredTrial& t : trials)
    if (t.target) out.push_back(t.score);
  return out;
}

std::vector<double> ScoreSet::nontarget_scores() const {
  std::vector<double> out;
  for (const ScoredTrial& t : trials)
    if (!t.target) out.push_back(t.score);
  return out;
}

namespace {

bool parse_label(const std::string& token, const std::string& origin, long line_no) {
  if (token == "target") return true;
  if (token == "nontarget") return false;
  throw ValidationError(origin + ":" + std::to_string(line_no) + ": unknown label '" + token +
                        "'");
}

}  // namespace

TrialList load_trials(const std::filesystem::path& path, const std::string& condition_label) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trial file: " + path.string());
  TrialList list;
  list.condition_label = condition_label;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 3)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected enroll_id,utt_id,label");
    Trial t;
    t.enroll_id = trim(fields[0]);
    t.utt_id = trim(fields[1]);
    check_identifier(t.enroll_id, "enroll-model");
    check_identifier(t.utt_id, "utterance");
    t.target = parse_label(trim(fields[2]), path.string(), line_no);
    if (!seen.emplace(t.enroll_id, t.utt_id).second)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": duplicate trial (" +
                            t.enroll_id + ", " + t.utt_id + ")");
    list.trials.push_back(std::move(t));
  }
  if (list.trials.empty()) throw ValidationError(path.string() + ": no trials");
  return list;
}

void write_trials(const std::filesystem::path& path, const TrialList& list) {
  std::string out;
  for (const Trial& t : list.trials)
    out += t.enroll_id + "," + t.utt_id + "," + (t.target ? "target" : "nontarget") + "\n";
  write_text_file_atomic(path, out);
}

ScoreSet load_scores(const std::filesystem::path& path, ScoreKind kind) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open score file: " + path.string());
  ScoreSet set;
  set.kind = kind;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected enroll_id,utt_id,label,score");
    ScoredTrial t;
    t.enroll_id = trim(fields[0]);
    t.utt_id = trim(fields[1]);
    check_identifier(t.enroll_id, "enroll-model");
    check_identifier(t.utt_id, "utterance");
    t.target = parse_label(trim(fields[2]), path.string(), line_no);
    try {
      t.score = parse_double(fields[3]);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.emplace(t.enroll_id, t.utt_id).second)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": duplicate trial (" +
                            t.enroll_id + ", " + t.utt_id + ")");
    set.trials.push_back(std::move(t));
  }
  if (set.trials.empty()) throw ValidationError(path.string() + ": no scores");
  return set;
}

void write_scores(const std::filesystem::path& path, const ScoreSet& scores) {
  std::string out;
  for (const ScoredTrial& t : scores.trials)
    out += t.enroll_id + "," + t.utt_id + "," + (t.target ? "target" : "nontarget") + "," +
           format_g17(t.score) + "\n";
  write_text_file_atomic(path, out);
}

void check_scores_match_trials(const ScoreSet& scores, const TrialList& trials) {
  if (scores.trials.size() != trials.trials.size())
    throw ValidationError("score/trial cardinality mismatch: " +
                          std::to_string(scores.trials.size()) + " vs " +
                          std::to_string(trials.trials.size()));
  std::map<std::pair<std::string, std::string>, bool> want;
  for (const Trial& t : trials.trials) want[{t.enroll_id, t.utt_id}] = t.target;
  for (const ScoredTrial& s : scores.trials) {
    auto it = want.find({s.enroll_id, s.utt_id});
    if (it == want.end())
      throw ValidationError("scored trial (" + s.enroll_id + ", " + s.utt_id +
                            ") not present in trial list");
    if (it->second != s.target)
      throw ValidationError("label mismatch for trial (" + s.enroll_id + ", " + s.utt_id + ")");
  }
}

}  // namespace vpeval

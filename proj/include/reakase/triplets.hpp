// Copyright 2026 The ReaKase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "reakase/common.hpp"
#include "reakase/io.hpp"
#include "reakase/text.hpp"

namespace reakase {

struct RelationTriplet {
  std::string head;
  std::string relation;
  std::string tail;
  int source_sentence_index = -1;

  bool same_spans(const RelationTriplet& o) const {
    return head == o.head && relation == o.relation && tail == o.tail;
  }
};

enum class TripletOrigin { builtin, imported };
enum class SourceField { facts, issues };

inline std::string to_string(SourceField f) {
  return f == SourceField::facts ? "facts" : "issues";
}

inline SourceField parse_source_field(const std::string& s) {
  if (s == "facts") return SourceField::facts;
  if (s == "issues") return SourceField::issues;
  throw ConfigError("unknown source field '" + s + "'");
}

struct TripletSet {
  std::vector<RelationTriplet> triplets;
  TripletOrigin origin = TripletOrigin::builtin;
  SourceField source_field = SourceField::facts;
};

namespace detail {

inline const std::set<std::string>& determiners() {
  static const std::set<std::string> kSet = {"the",  "a",     "an",  "this",
                                             "that", "these", "those"};
  return kSet;
}

inline const std::set<std::string>& auxiliary_verbs() {
  static const std::set<std::string> kSet = {
      "is",   "are",  "was",    "were", "be",   "been", "being",
      "has",  "have", "had",    "will", "would", "shall", "should",
      "may",  "might", "must",  "can",  "could", "do",   "does",
      "did"};
  return kSet;
}

// Unambiguously verbal forms only; noun/verb homographs (order, file,
// claims) are deliberately absent, at the cost of missing some sentences.
inline const std::set<std::string>& verb_lexicon() {
  static const std::set<std::string> kSet = {
      "held",     "found",    "sought",   "brought",  "took",    "made",
      "gave",     "said",     "upheld",   "quashed",  "seeks",   "argues",
      "alleges",  "submits",  "contends", "asserts",  "states",  "notes",
      "concludes", "requires", "applies", "relies",   "concerns", "holds",
      "finds",    "grants",   "denies",   "dismisses", "allows", "rejects",
      "remits"};
  return kSet;
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline bool is_verb_start(const std::string& lower) {
  return auxiliary_verbs().count(lower) > 0 || verb_lexicon().count(lower) > 0 ||
         (lower.size() >= 4 && ends_with(lower, "ed"));
}

inline bool is_verb_continuation(const std::string& lower) {
  return auxiliary_verbs().count(lower) > 0 || verb_lexicon().count(lower) > 0 ||
         (lower.size() >= 4 && ends_with(lower, "ed")) ||
         (lower.size() >= 5 && ends_with(lower, "ing"));
}

inline bool allows_continuation(const std::string& lower) {
  return auxiliary_verbs().count(lower) > 0 || lower == "not";
}

inline std::string strip_trailing_punct(std::string s) {
  while (!s.empty() &&
         std::ispunct(static_cast<unsigned char>(s.back())) != 0) {
    s.pop_back();
  }
  return s;
}

// Subject-verb-object pattern rule: the chunk before the first finite verb
// group is the head (leading determiners dropped), the verb group is the
// relation, the remainder is the tail (determiners kept). At most one
// triplet; sentences that do not fit produce none.
inline bool pattern_triplet(const std::string& sentence, int sentence_index,
                            RelationTriplet* out) {
  const auto tokens = split_whitespace(sentence);
  if (tokens.size() < 3) return false;

  std::size_t verb_begin = tokens.size();
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (is_verb_start(lowercase_ascii(strip_punct_edges(tokens[i])))) {
      verb_begin = i;
      break;
    }
  }
  if (verb_begin >= tokens.size() - 1) return false;  // need a tail

  std::size_t verb_end = verb_begin;  // inclusive
  while (verb_end + 1 < tokens.size() - 1) {
    const std::string prev =
        lowercase_ascii(strip_punct_edges(tokens[verb_end]));
    const std::string next =
        lowercase_ascii(strip_punct_edges(tokens[verb_end + 1]));
    if (allows_continuation(prev) &&
        (next == "not" || is_verb_continuation(next))) {
      ++verb_end;
    } else {
      break;
    }
  }

  std::size_t head_begin = 0;
  while (head_begin < verb_begin &&
         determiners().count(lowercase_ascii(tokens[head_begin])) > 0) {
    ++head_begin;
  }
  if (head_begin >= verb_begin) return false;

  std::vector<std::string> head_tokens(tokens.begin() + head_begin,
                                       tokens.begin() + verb_begin);
  std::vector<std::string> verb_tokens(tokens.begin() + verb_begin,
                                       tokens.begin() + verb_end + 1);
  std::vector<std::string> tail_tokens(tokens.begin() + verb_end + 1,
                                       tokens.end());

  out->head = join(head_tokens, " ");
  out->relation = join(verb_tokens, " ");
  out->tail = strip_trailing_punct(join(tail_tokens, " "));
  out->source_sentence_index = sentence_index;
  return !out->head.empty() && !out->relation.empty() && !out->tail.empty();
}

inline void dedup_triplets(std::vector<RelationTriplet>& triplets) {
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::vector<RelationTriplet> unique;
  for (auto& t : triplets) {
    if (seen.insert({t.head, t.relation, t.tail}).second) {
      unique.push_back(std::move(t));
    }
  }
  triplets = std::move(unique);
}

}  // namespace detail

inline TripletSet extract_triplets(
    std::string_view text, SourceField source_field = SourceField::facts) {
  TripletSet set;
  set.origin = TripletOrigin::builtin;
  set.source_field = source_field;
  const auto sentences = split_sentences(text);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    RelationTriplet t;
    if (detail::pattern_triplet(sentences[i], static_cast<int>(i), &t)) {
      set.triplets.push_back(std::move(t));
    }
  }
  detail::dedup_triplets(set.triplets);
  return set;
}

// Import format: line-delimited JSON records with fields head, relation,
// tail and optional sentence_index. Duplicates keep the first occurrence.
inline TripletSet import_triplets(const std::filesystem::path& path,
                                  SourceField source_field) {
  TripletSet set;
  set.origin = TripletOrigin::imported;
  set.source_field = source_field;
  std::size_t row = 0;
  for (const auto& rec : read_jsonl(path)) {
    ++row;
    RelationTriplet t;
    try {
      t.head = trim(rec.at("head").get<std::string>());
      t.relation = trim(rec.at("relation").get<std::string>());
      t.tail = trim(rec.at("tail").get<std::string>());
      t.source_sentence_index = rec.value("sentence_index", -1);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": malformed triplet record at row " +
                       std::to_string(row) + ": " + e.what());
    }
    if (t.head.empty() || t.relation.empty() || t.tail.empty()) {
      throw ParseError(path.string() + ": empty span in triplet record at row " +
                       std::to_string(row));
    }
    set.triplets.push_back(std::move(t));
  }
  detail::dedup_triplets(set.triplets);
  return set;
}

// Prompt-slot serialization: `(h, r, t)` items joined by "; ".
inline std::string render_triplets(const TripletSet& set) {
  if (set.triplets.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < set.triplets.size(); ++i) {
    if (i) out += "; ";
    const auto& t = set.triplets[i];
    out += "(" + t.head + ", " + t.relation + ", " + t.tail + ")";
  }
  return out;
}

inline nlohmann::json triplet_to_json(const RelationTriplet& t) {
  return nlohmann::json{{"head", t.head},
                        {"relation", t.relation},
                        {"tail", t.tail},
                        {"sentence_index", t.source_sentence_index}};
}

inline void save_triplet_set(const std::filesystem::path& path,
                             const TripletSet& set) {
  std::vector<nlohmann::json> records;
  records.reserve(set.triplets.size());
  for (const auto& t : set.triplets) records.push_back(triplet_to_json(t));
  write_jsonl(path, records);
}

}  // namespace reakase

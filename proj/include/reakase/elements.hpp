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
#include <string>
#include <vector>

#include <json.hpp>

#include "reakase/corpus.hpp"
#include "reakase/gateway.hpp"
#include "reakase/templates.hpp"

namespace reakase {

// Citation placeholders marking issue sentences. Matching is literal
// substring, per the dataset convention.
struct PlaceholderConfig {
  std::vector<std::string> placeholder_tokens = {"FRAGMENT_SUPPRESSED"};
};

struct LegalElements {
  std::string case_id;
  std::string facts;                 // c_Fact
  std::vector<std::string> issues;   // c_Issue
  std::string judgement;             // c_Jud
  std::string reasoning;             // c_Reason, filled later
  bool reasoning_lacked_judgement = false;
};

// Issue sentences are exactly the Analysis sentences containing at least
// one placeholder token, in document order.
inline std::vector<std::string> extract_issues(const CaseSections& sections,
                                               const PlaceholderConfig& ph) {
  if (ph.placeholder_tokens.empty()) {
    throw ConfigError("placeholder token list is empty");
  }
  for (const auto& token : ph.placeholder_tokens) {
    if (token.empty()) throw ConfigError("empty placeholder token");
  }
  std::vector<std::string> issues;
  for (const auto& sentence : sections.analysis_sentences) {
    for (const auto& token : ph.placeholder_tokens) {
      if (sentence.find(token) != std::string::npos) {
        issues.push_back(sentence);
        break;
      }
    }
  }
  return issues;
}

struct AttributionConfig {
  // A sentence is an attribution note when it begins with one of these,
  // case-insensitively.
  std::vector<std::string> prefixes = {"Editor", "Solicitor", "Counsel"};
};

inline bool is_attribution_sentence(const std::string& sentence,
                                    const AttributionConfig& config) {
  const std::string lowered = lowercase_ascii(trim(sentence));
  for (const auto& prefix : config.prefixes) {
    const std::string p = lowercase_ascii(prefix);
    if (lowered.rfind(p, 0) == 0) return true;
  }
  return false;
}

// The conclusion sentences that follow a Judgment/Judgement/Order heading,
// with attribution notes dropped. Returns the selected sentences; the
// string form below joins them.
inline std::vector<std::string> select_judgement_sentences(
    const CaseSections& sections,
    const std::vector<std::string>& judgement_headings = {"JUDGMENT",
                                                          "JUDGEMENT", "ORDER"},
    const AttributionConfig& attribution = {}) {
  std::size_t heading_at = sections.conclusion_sentences.size();
  for (std::size_t i = 0; i < sections.conclusion_sentences.size(); ++i) {
    if (is_heading_line(sections.conclusion_sentences[i], judgement_headings)) {
      heading_at = i;
      break;
    }
  }
  std::vector<std::string> selected;
  if (heading_at == sections.conclusion_sentences.size()) return selected;
  for (std::size_t i = heading_at + 1; i < sections.conclusion_sentences.size();
       ++i) {
    const auto& sentence = sections.conclusion_sentences[i];
    if (!is_attribution_sentence(sentence, attribution)) {
      selected.push_back(sentence);
    }
  }
  return selected;
}

inline std::string extract_judgement(
    const CaseSections& sections,
    const std::vector<std::string>& judgement_headings = {"JUDGMENT",
                                                          "JUDGEMENT", "ORDER"},
    const AttributionConfig& attribution = {}) {
  return join(select_judgement_sentences(sections, judgement_headings,
                                         attribution),
              " ");
}

// Fact summarization through the gateway. Empty background short-circuits
// to "" without a call; identical backgrounds hit the gateway cache.
inline std::string extract_facts(const CaseSections& sections,
                                 Gateway& gateway,
                                 const DecodeParams& decode = {}) {
  if (trim(sections.background).empty()) return "";
  ChatRequest req;
  req.user_prompt = render_fact_prompt(sections.background);
  req.decode = decode;
  return gateway.chat_complete(req);
}

// ---------------------------------------------------------------------------
// Persistence (pipeline resume)
// ---------------------------------------------------------------------------

inline nlohmann::json elements_to_json(const LegalElements& e) {
  nlohmann::json j{{"case_id", e.case_id},
                   {"facts", e.facts},
                   {"issues", e.issues},
                   {"judgement", e.judgement},
                   {"reasoning", e.reasoning}};
  if (e.reasoning_lacked_judgement) j["reasoning_lacked_judgement"] = true;
  return j;
}

inline LegalElements elements_from_json(const nlohmann::json& j) {
  LegalElements e;
  e.case_id = j.at("case_id").get<std::string>();
  e.facts = j.at("facts").get<std::string>();
  e.issues = j.at("issues").get<std::vector<std::string>>();
  e.judgement = j.at("judgement").get<std::string>();
  e.reasoning = j.value("reasoning", "");
  e.reasoning_lacked_judgement = j.value("reasoning_lacked_judgement", false);
  return e;
}

inline void save_elements(const std::filesystem::path& path,
                          const std::vector<LegalElements>& elements) {
  std::vector<nlohmann::json> records;
  records.reserve(elements.size());
  for (const auto& e : elements) records.push_back(elements_to_json(e));
  write_jsonl(path, records);
}

inline std::vector<LegalElements> load_elements(
    const std::filesystem::path& path) {
  std::vector<LegalElements> out;
  for (const auto& rec : read_jsonl(path)) {
    out.push_back(elements_from_json(rec));
  }
  return out;
}

}  // namespace reakase

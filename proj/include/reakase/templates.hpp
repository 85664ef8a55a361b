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

#include <string>

#include "reakase/common.hpp"

// Prompt templates used across the pipeline. These strings are part of the
// pipeline's reproducibility contract: golden tests pin the rendered output
// byte-exactly, so any edit here must update the golden files.

namespace reakase {

enum class TemplateId { default_template, prompt1, prompt2 };

inline std::string to_string(TemplateId id) {
  switch (id) {
    case TemplateId::default_template: return "default";
    case TemplateId::prompt1: return "prompt1";
    case TemplateId::prompt2: return "prompt2";
  }
  throw Error("invalid template id");
}

inline TemplateId parse_template_id(const std::string& name) {
  if (name == "default") return TemplateId::default_template;
  if (name == "prompt1") return TemplateId::prompt1;
  if (name == "prompt2") return TemplateId::prompt2;
  throw ConfigError("unknown template_id '" + name +
                    "' (expected default, prompt1 or prompt2)");
}

// Fact summarization prompt. No system prompt.
inline std::string render_fact_prompt(const std::string& background) {
  return "Summarize in 50 words: " + background;
}

inline constexpr const char* kReasoningSystemPrompt =
    "Assuming you are a legal expert from Federal Court of Canada.";

// The five labeled slots, in template order, followed by the instruction.
inline std::string render_reasoning_prompt(const std::string& facts,
                                           const std::string& fact_triplets,
                                           const std::string& issues,
                                           const std::string& issue_triplets,
                                           const std::string& judgement) {
  std::string out;
  out += "Given a case with its legal facts: " + facts + ".\n";
  out += "Legal fact relation triplets: " + fact_triplets + ".\n";
  out += "Legal issues: " + issues + ".\n";
  out += "Legal issue relation triplets: " + issue_triplets + ".\n";
  out += "Final case judgement: " + judgement + ".\n";
  out +=
      "Please explain how to deduce the final judgement from both legal "
      "facts and legal issues in 100 words.";
  return out;
}

inline constexpr const char* kEncodingSystemPrompt =
    "The following contains key components of a legal case.";

// Case-encoding user prompts. The judgement is deliberately absent from all
// three: it is a short decisive sentence that adds no retrieval signal.
inline std::string render_encoding_prompt(TemplateId id,
                                          const std::string& facts,
                                          const std::string& fact_triplets,
                                          const std::string& issues,
                                          const std::string& issue_triplets,
                                          const std::string& reasoning) {
  std::string out;
  switch (id) {
    case TemplateId::default_template:
      out += "Legal facts: " + facts + ".\n";
      out += "Legal fact relation triplets: " + fact_triplets + ".\n";
      out += "Legal issues: " + issues + ".\n";
      out += "Legal issue relation triplets: " + issue_triplets + ".\n";
      out += "Legal reasoning: " + reasoning + ".";
      return out;
    case TemplateId::prompt1:
      out += "Provide the key factual background: " + facts + ".\n";
      out += "Provide the legal fact relation triplets: " + fact_triplets +
             ".\n";
      out += "Provide the key legal disputes: " + issues + ".\n";
      out += "Provide the legal issue relation triplets: " + issue_triplets +
             ".\n";
      out += "Provide the legal reasoning between legal facts and legal "
             "issues: " +
             reasoning + ".";
      return out;
    case TemplateId::prompt2:
      out += "List the important legal facts as: " + facts + ".\n";
      out += "List the important fact relations among events and parties "
             "as: " +
             fact_triplets + ".\n";
      out += "List the important legal issues as: " + issues + ".\n";
      out += "List the important issue relations among events and parties "
             "as: " +
             issue_triplets + ".\n";
      out += "List the important legal reasoning as: " + reasoning + ".";
      return out;
  }
  throw Error("invalid template id");
}

}  // namespace reakase

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

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reakase/common.hpp"
#include "reakase/io.hpp"
#include "reakase/qrels.hpp"
#include "reakase/text.hpp"

namespace reakase {

// ---------------------------------------------------------------------------
// Language filter
// ---------------------------------------------------------------------------

// Line-level French filter. A line is dropped when the fraction of its
// tokens found in `french_words` strictly exceeds `threshold`; kept lines
// pass through byte-identical, which makes the filter idempotent.
struct LanguageFilterConfig {
  std::set<std::string> french_words;
  double threshold = 0.5;
};

inline const std::set<std::string>& default_french_words() {
  static const std::set<std::string> kWords = {
      "le",    "la",    "les",  "un",    "une",  "des",  "du",   "de",
      "au",    "aux",   "et",   "ou",    "mais", "donc", "car",  "ne",
      "pas",   "que",   "qui",  "quoi",  "dont", "où",   "à",    "avec",
      "sans",  "sous",  "sur",  "dans",  "par",  "pour", "en",   "vers",
      "chez",  "est",   "sont", "était", "étaient", "être", "avoir", "a",
      "ont",   "il",    "elle", "ils",   "elles", "nous", "vous", "je",
      "se",    "ce"};
  return kWords;
}

inline LanguageFilterConfig default_language_filter() {
  return LanguageFilterConfig{default_french_words(), 0.5};
}

inline double french_token_ratio(std::string_view line,
                                 const std::set<std::string>& french_words) {
  std::size_t total = 0, french = 0;
  for (const auto& raw : split_whitespace(line)) {
    std::string token = lowercase_ascii(strip_punct_edges(raw));
    if (token.empty()) continue;
    ++total;
    if (french_words.count(token)) ++french;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(french) / static_cast<double>(total);
}

inline std::string strip_non_english(std::string_view text,
                                     const LanguageFilterConfig& config) {
  if (text.empty()) return std::string();
  std::vector<std::string> kept;
  for (auto& line : split_lines(text)) {
    if (french_token_ratio(line, config.french_words) <= config.threshold) {
      kept.push_back(std::move(line));
    }
  }
  return join(kept, "\n");
}

// ---------------------------------------------------------------------------
// Section segmentation
// ---------------------------------------------------------------------------

struct SegmentationRules {
  std::vector<std::string> background_headings = {"BACKGROUND"};
  std::vector<std::string> analysis_headings = {"ANALYSIS", "REASONS"};
  std::vector<std::string> conclusion_headings = {"JUDGMENT", "JUDGEMENT",
                                                  "ORDER"};
  std::set<std::string> abbreviations = default_abbreviations();
};

// A heading line is the keyword alone on its line, case-insensitively,
// allowing a trailing ':' or '.'.
inline bool is_heading_line(std::string_view line,
                            const std::vector<std::string>& keywords) {
  std::string cleaned = trim(line);
  while (!cleaned.empty() &&
         (cleaned.back() == ':' || cleaned.back() == '.')) {
    cleaned.pop_back();
  }
  cleaned = lowercase_ascii(trim(cleaned));
  for (const auto& kw : keywords) {
    if (cleaned == lowercase_ascii(kw)) return true;
  }
  return false;
}

struct CaseSections {
  std::string background;                       // c_Bg
  std::vector<std::string> analysis_sentences;  // c_Ana, document order
  std::vector<std::string> conclusion_sentences;  // c_Con, document order
};

namespace detail {

// Heading line first (as its own sentence), then the remaining region lines
// joined and sentence-split. Headings rarely carry terminal punctuation, so
// splitting the joined block would glue them onto the first sentence.
inline std::vector<std::string> region_sentences(
    const std::vector<std::string>& lines, std::size_t begin, std::size_t end,
    const std::set<std::string>& abbreviations) {
  std::vector<std::string> out;
  if (begin >= end) return out;
  std::string heading = trim(lines[begin]);
  if (!heading.empty()) out.push_back(heading);
  std::vector<std::string> rest(lines.begin() + static_cast<long>(begin) + 1,
                                lines.begin() + static_cast<long>(end));
  for (auto& s : split_sentences(join(rest, " "), abbreviations)) {
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Partitions a document at the first match of each configured heading.
// Text before any heading is background; a matched background heading line
// is dropped from the background text. Analysis and conclusion keep their
// heading line as the leading sentence of the section.
inline CaseSections segment_sections(std::string_view doc_text,
                                     const SegmentationRules& rules) {
  const std::vector<std::string> lines = split_lines(doc_text);
  const std::size_t n = lines.size();

  std::size_t analysis_at = n, conclusion_at = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_heading_line(lines[i], rules.analysis_headings)) {
      analysis_at = i;
      break;
    }
  }
  const std::size_t conclusion_from =
      analysis_at < n ? analysis_at + 1 : 0;
  for (std::size_t i = conclusion_from; i < n; ++i) {
    if (is_heading_line(lines[i], rules.conclusion_headings)) {
      conclusion_at = i;
      break;
    }
  }

  const std::size_t background_end = std::min(analysis_at, conclusion_at);

  CaseSections sections;
  std::vector<std::string> background_lines;
  bool background_heading_dropped = false;
  for (std::size_t i = 0; i < background_end; ++i) {
    if (!background_heading_dropped &&
        is_heading_line(lines[i], rules.background_headings)) {
      background_heading_dropped = true;
      continue;
    }
    background_lines.push_back(lines[i]);
  }
  sections.background = trim(join(background_lines, "\n"));
  sections.analysis_sentences = detail::region_sentences(
      lines, analysis_at, std::min(conclusion_at, n), rules.abbreviations);
  sections.conclusion_sentences =
      detail::region_sentences(lines, conclusion_at, n, rules.abbreviations);
  return sections;
}

// ---------------------------------------------------------------------------
// Corpus ingestion and persistence
// ---------------------------------------------------------------------------

struct CaseDocument {
  std::string case_id;
  std::string raw_text;  // post language-filter working text
  CaseSections sections;
  std::size_t token_count = 0;  // whitespace tokens of raw_text
};

struct CorpusStats {
  std::size_t num_queries = 0;
  std::size_t num_candidates = 0;
  double avg_relevant = 0.0;
  double avg_tokens = 0.0;
  std::size_t max_tokens = 0;
};

struct CorpusHandle {
  std::string corpus_id;
  std::vector<CaseDocument> cases;  // sorted by case_id
  std::optional<Qrels> qrels;
  CorpusStats stats;
  std::vector<std::string> warnings;

  const CaseDocument* find(const std::string& case_id) const {
    auto it = std::lower_bound(
        cases.begin(), cases.end(), case_id,
        [](const CaseDocument& d, const std::string& id) {
          return d.case_id < id;
        });
    if (it == cases.end() || it->case_id != case_id) return nullptr;
    return &*it;
  }
};

// Corpus layout: a directory of UTF-8 case files plus an optional qrels
// file. `case_suffix` selects case files by extension.
struct CorpusLayout {
  std::string case_suffix = ".txt";
  std::string qrels_file;  // relative to root; empty = no qrels
  LanguageFilterConfig filter = default_language_filter();
  SegmentationRules rules;
};

inline CorpusStats compute_stats(const std::vector<CaseDocument>& cases,
                                 const std::optional<Qrels>& qrels) {
  CorpusStats stats;
  stats.num_candidates = cases.size();
  if (!cases.empty()) {
    std::size_t total = 0;
    for (const auto& c : cases) {
      total += c.token_count;
      stats.max_tokens = std::max(stats.max_tokens, c.token_count);
    }
    stats.avg_tokens =
        static_cast<double>(total) / static_cast<double>(cases.size());
  }
  if (qrels && !qrels->relevant.empty()) {
    stats.num_queries = qrels->relevant.size();
    std::size_t total_relevant = 0;
    for (const auto& [q, docs] : qrels->relevant) total_relevant += docs.size();
    stats.avg_relevant = static_cast<double>(total_relevant) /
                         static_cast<double>(stats.num_queries);
  }
  return stats;
}

inline CaseDocument make_case_document(std::string case_id,
                                       std::string_view file_text,
                                       const CorpusLayout& layout) {
  CaseDocument doc;
  doc.case_id = std::move(case_id);
  doc.raw_text = strip_non_english(file_text, layout.filter);
  if (trim(doc.raw_text).empty()) {
    throw ParseError("case '" + doc.case_id +
                     "' is empty after language filtering");
  }
  doc.sections = segment_sections(doc.raw_text, layout.rules);
  doc.token_count = whitespace_token_count(doc.raw_text);
  return doc;
}

inline CorpusHandle ingest_corpus(const std::filesystem::path& root,
                                  const CorpusLayout& layout) {
  if (!std::filesystem::exists(root)) {
    throw Error("corpus root does not exist: " + root.string());
  }
  CorpusHandle handle;
  handle.corpus_id = root.filename().string();

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() == layout.case_suffix) files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw Error("no case files found under " + root.string());
  }

  std::set<std::string> seen;
  for (const auto& file : files) {
    std::string case_id = file.stem().string();
    if (!seen.insert(case_id).second) {
      throw Error("duplicate case_id: " + case_id);
    }
    handle.cases.push_back(
        make_case_document(std::move(case_id), read_file(file), layout));
  }
  std::sort(handle.cases.begin(), handle.cases.end(),
            [](const CaseDocument& a, const CaseDocument& b) {
              return a.case_id < b.case_id;
            });

  if (!layout.qrels_file.empty()) {
    Qrels qrels = load_qrels(root / layout.qrels_file);
    for (const auto& [query, docs] : qrels.relevant) {
      if (handle.find(query) == nullptr) {
        handle.warnings.push_back("qrels query '" + query +
                                  "' not found in corpus");
      }
      for (const auto& doc : docs) {
        if (handle.find(doc) == nullptr) {
          handle.warnings.push_back("qrels references unknown candidate '" +
                                    doc + "'");
        }
      }
    }
    handle.qrels = std::move(qrels);
  }
  handle.stats = compute_stats(handle.cases, handle.qrels);
  return handle;
}

inline nlohmann::json case_to_json(const CaseDocument& doc) {
  return nlohmann::json{
      {"case_id", doc.case_id},
      {"raw_text", doc.raw_text},
      {"sections",
       {{"background", doc.sections.background},
        {"analysis_sentences", doc.sections.analysis_sentences},
        {"conclusion_sentences", doc.sections.conclusion_sentences}}},
      {"token_count", doc.token_count}};
}

inline CaseDocument case_from_json(const nlohmann::json& j) {
  CaseDocument doc;
  doc.case_id = j.at("case_id").get<std::string>();
  doc.raw_text = j.at("raw_text").get<std::string>();
  const auto& s = j.at("sections");
  doc.sections.background = s.at("background").get<std::string>();
  doc.sections.analysis_sentences =
      s.at("analysis_sentences").get<std::vector<std::string>>();
  doc.sections.conclusion_sentences =
      s.at("conclusion_sentences").get<std::vector<std::string>>();
  doc.token_count = j.at("token_count").get<std::size_t>();
  return doc;
}

inline void save_corpus(const std::filesystem::path& path,
                        const CorpusHandle& handle) {
  std::vector<nlohmann::json> records;
  records.reserve(handle.cases.size());
  for (const auto& doc : handle.cases) records.push_back(case_to_json(doc));
  write_jsonl(path, records);
}

inline std::vector<CaseDocument> load_corpus(
    const std::filesystem::path& path) {
  std::vector<CaseDocument> cases;
  for (const auto& rec : read_jsonl(path)) {
    cases.push_back(case_from_json(rec));
  }
  std::sort(cases.begin(), cases.end(),
            [](const CaseDocument& a, const CaseDocument& b) {
              return a.case_id < b.case_id;
            });
  return cases;
}

}  // namespace reakase

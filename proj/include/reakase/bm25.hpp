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
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reakase/common.hpp"
#include "reakase/corpus.hpp"
#include "reakase/io.hpp"
#include "reakase/text.hpp"

namespace reakase {

struct AnalyzerConfig {
  std::set<std::string> stopwords;
};

inline const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> kStop = {
      "a",  "an", "and", "are", "as",  "at",  "be",  "by", "for", "from",
      "has", "he", "in",  "is",  "it",  "its", "of",  "on", "that", "the",
      "to", "was", "were", "will", "with"};
  return kStop;
}

inline AnalyzerConfig default_analyzer() {
  return AnalyzerConfig{default_stopwords()};
}

// Lowercased alphanumeric unigrams with stopwords removed. Bytes >= 0x80
// count as word characters so accented terms survive intact.
inline std::vector<std::string> analyze_text(std::string_view text,
                                             const AnalyzerConfig& config) {
  std::vector<std::string> terms;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      if (config.stopwords.count(cur) == 0) terms.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char c : text) {
    const bool word_char = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                           (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (word_char) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                         : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return terms;
}

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct Bm25Index {
  std::map<std::string, std::size_t> doc_frequencies;
  std::map<std::string, std::size_t> doc_lengths;  // analyzed term counts
  double avg_doc_length = 0.0;
  // term -> (case_id, tf), sorted by case_id
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>>
      postings;
  Bm25Params params;

  std::size_t num_docs() const { return doc_lengths.size(); }

  bool has_doc(const std::string& case_id) const {
    return doc_lengths.count(case_id) > 0;
  }

  // ln(1 + (N - df + 0.5) / (df + 0.5)); non-negative by construction.
  double idf(const std::string& term) const {
    auto it = doc_frequencies.find(term);
    const double df =
        it == doc_frequencies.end() ? 0.0 : static_cast<double>(it->second);
    const double n = static_cast<double>(num_docs());
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
  }
};

inline Bm25Index build_bm25(
    const std::vector<std::pair<std::string, std::string>>& docs,
    const AnalyzerConfig& analyzer = default_analyzer(),
    const Bm25Params& params = {}) {
  if (docs.empty()) throw Error("cannot build BM25 index over empty corpus");
  Bm25Index index;
  index.params = params;
  std::size_t total_length = 0;
  for (const auto& [case_id, text] : docs) {
    if (index.doc_lengths.count(case_id)) {
      throw Error("duplicate case_id in BM25 build: " + case_id);
    }
    const auto terms = analyze_text(text, analyzer);
    index.doc_lengths[case_id] = terms.size();
    total_length += terms.size();
    std::map<std::string, std::size_t> tf;
    for (const auto& t : terms) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings[term].emplace_back(case_id, count);
      ++index.doc_frequencies[term];
    }
  }
  for (auto& [term, posting] : index.postings) {
    std::sort(posting.begin(), posting.end());
  }
  index.avg_doc_length =
      static_cast<double>(total_length) / static_cast<double>(docs.size());
  return index;
}

inline Bm25Index build_bm25(const CorpusHandle& corpus,
                            const AnalyzerConfig& analyzer = default_analyzer(),
                            const Bm25Params& params = {}) {
  std::vector<std::pair<std::string, std::string>> docs;
  docs.reserve(corpus.cases.size());
  for (const auto& c : corpus.cases) docs.emplace_back(c.case_id, c.raw_text);
  return build_bm25(docs, analyzer, params);
}

// Okapi BM25 score of `case_id` for the given query terms.
inline double bm25_score(const Bm25Index& index,
                         const std::vector<std::string>& query_terms,
                         const std::string& case_id) {
  auto len_it = index.doc_lengths.find(case_id);
  if (len_it == index.doc_lengths.end()) {
    throw Error("unknown case_id in BM25 score: " + case_id);
  }
  const double len = static_cast<double>(len_it->second);
  const double k1 = index.params.k1;
  const double b = index.params.b;
  const double len_norm =
      k1 * (1.0 - b + b * len / index.avg_doc_length);

  double score = 0.0;
  for (const auto& term : query_terms) {
    auto post_it = index.postings.find(term);
    if (post_it == index.postings.end()) continue;
    const auto& posting = post_it->second;
    auto it = std::lower_bound(
        posting.begin(), posting.end(), case_id,
        [](const std::pair<std::string, std::size_t>& entry,
           const std::string& id) { return entry.first < id; });
    if (it == posting.end() || it->first != case_id) continue;
    const double tf = static_cast<double>(it->second);
    score += index.idf(term) * tf * (k1 + 1.0) / (tf + len_norm);
  }
  return score;
}

// Full ranking over the indexed corpus (zero-score documents included),
// score descending with ties broken by ascending case_id.
inline std::vector<std::pair<std::string, double>> bm25_top_k(
    const Bm25Index& index, std::string_view query_text, std::size_t k,
    const std::set<std::string>& exclude = {},
    const AnalyzerConfig& analyzer = default_analyzer()) {
  if (k < 1) throw Error("bm25_top_k requires k >= 1");
  const auto raw_terms = analyze_text(query_text, analyzer);
  // occurrence count per query term, so repeated terms score like
  // bm25_score over the same term list
  std::map<std::string, std::size_t> query_tf;
  for (const auto& t : raw_terms) ++query_tf[t];

  std::map<std::string, double> scores;
  for (const auto& [case_id, len] : index.doc_lengths) {
    if (exclude.count(case_id)) continue;
    scores[case_id] = 0.0;
  }
  for (const auto& [term, qtf] : query_tf) {
    auto post_it = index.postings.find(term);
    if (post_it == index.postings.end()) continue;
    const double idf = index.idf(term);
    for (const auto& [case_id, tf] : post_it->second) {
      auto it = scores.find(case_id);
      if (it == scores.end()) continue;
      const double len =
          static_cast<double>(index.doc_lengths.at(case_id));
      const double len_norm = index.params.k1 *
                              (1.0 - index.params.b +
                               index.params.b * len / index.avg_doc_length);
      it->second += static_cast<double>(qtf) * idf * static_cast<double>(tf) *
                    (index.params.k1 + 1.0) /
                    (static_cast<double>(tf) + len_norm);
    }
  }

  std::vector<std::pair<std::string, double>> ranked(scores.begin(),
                                                     scores.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

struct MiningResult {
  std::vector<std::string> negatives;
  bool exhausted = false;  // fewer than `count` available
};

// Hard negatives: the highest-BM25 candidates that are not ground-truth
// matches and not the query itself.
inline MiningResult mine_hard_negatives(const Bm25Index& index,
                                        const CaseDocument& query,
                                        const std::set<std::string>& positives,
                                        std::size_t count,
                                        std::size_t pool_depth,
                                        const AnalyzerConfig& analyzer =
                                            default_analyzer()) {
  if (count < 1) throw Error("mine_hard_negatives requires count >= 1");
  if (pool_depth < count) {
    throw Error("mine_hard_negatives requires pool_depth >= count");
  }
  MiningResult result;
  for (const auto& [case_id, score] :
       bm25_top_k(index, query.raw_text, pool_depth, {}, analyzer)) {
    if (case_id == query.case_id || positives.count(case_id)) continue;
    result.negatives.push_back(case_id);
    if (result.negatives.size() == count) break;
  }
  result.exhausted = result.negatives.size() < count;
  return result;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline void save_bm25(const std::filesystem::path& path,
                      const Bm25Index& index) {
  nlohmann::json j;
  j["k1"] = index.params.k1;
  j["b"] = index.params.b;
  j["doc_lengths"] = index.doc_lengths;
  nlohmann::json postings = nlohmann::json::object();
  for (const auto& [term, posting] : index.postings) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [case_id, tf] : posting) {
      list.push_back(nlohmann::json::array({case_id, tf}));
    }
    postings[term] = std::move(list);
  }
  j["postings"] = std::move(postings);
  write_file(path, j.dump() + "\n");
}

inline Bm25Index load_bm25(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_file(path));
  Bm25Index index;
  index.params.k1 = j.at("k1").get<double>();
  index.params.b = j.at("b").get<double>();
  index.doc_lengths =
      j.at("doc_lengths").get<std::map<std::string, std::size_t>>();
  std::size_t total = 0;
  for (const auto& [id, len] : index.doc_lengths) total += len;
  index.avg_doc_length = index.doc_lengths.empty()
                             ? 0.0
                             : static_cast<double>(total) /
                                   static_cast<double>(index.doc_lengths.size());
  for (const auto& [term, list] : j.at("postings").items()) {
    auto& posting = index.postings[term];
    for (const auto& entry : list) {
      posting.emplace_back(entry.at(0).get<std::string>(),
                           entry.at(1).get<std::size_t>());
    }
    index.doc_frequencies[term] = posting.size();
  }
  return index;
}

// Mining output: `<query_id> <TAB> <negative_case_id>` lines.
inline void save_hard_negatives(
    const std::filesystem::path& path,
    const std::map<std::string, std::vector<std::string>>& negatives) {
  std::string out;
  for (const auto& [query, ids] : negatives) {
    for (const auto& id : ids) {
      out += query;
      out += '\t';
      out += id;
      out += '\n';
    }
  }
  write_file(path, out);
}

inline std::map<std::string, std::vector<std::string>> load_hard_negatives(
    const std::filesystem::path& path) {
  std::map<std::string, std::vector<std::string>> out;
  std::size_t lineno = 0;
  for (const auto& line : split_lines(read_file(path))) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected <query_id>\\t<case_id>");
    }
    out[trim(line.substr(0, tab))].push_back(trim(line.substr(tab + 1)));
  }
  return out;
}

}  // namespace reakase

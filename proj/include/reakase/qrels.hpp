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
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "reakase/common.hpp"
#include "reakase/text.hpp"

namespace reakase {

// Binary relevance judgments: query id -> relevant case ids.
struct Qrels {
  std::map<std::string, std::set<std::string>> relevant;

  bool empty() const { return relevant.empty(); }
  std::size_t num_queries() const { return relevant.size(); }
};

// Qrels file format: one `<query_id> <TAB> <relevant_case_id>` per line.
inline Qrels load_qrels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read qrels: " + path.string());
  Qrels qrels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected <query_id>\\t<case_id>");
    }
    std::string query = trim(line.substr(0, tab));
    std::string doc = trim(line.substr(tab + 1));
    if (query.empty() || doc.empty()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": empty id in qrels line");
    }
    qrels.relevant[query].insert(doc);
  }
  return qrels;
}

inline void save_qrels(const std::filesystem::path& path, const Qrels& qrels) {
  std::string out;
  for (const auto& [query, docs] : qrels.relevant) {
    for (const auto& doc : docs) {
      out += query;
      out += '\t';
      out += doc;
      out += '\n';
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write qrels: " + path.string());
  f << out;
}

}  // namespace reakase

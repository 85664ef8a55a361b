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
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reakase {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

inline std::size_t whitespace_token_count(std::string_view s) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : s) {
    if (is_space(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

// Collapses whitespace runs to single spaces and trims the ends.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Splits on '\n' keeping empty segments, so join(split(x), "\n") == x.
inline std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '\n') {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

// Strips ASCII punctuation from both ends of a token; interior bytes
// (including UTF-8 sequences) are untouched.
inline std::string strip_punct_edges(std::string_view s) {
  std::size_t b = 0, e = s.size();
  auto is_punct = [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  };
  while (b < e && is_punct(s[b])) ++b;
  while (e > b && is_punct(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> kAbbrev = {
      "v.",    "No.",  "Nos.",   "Inc.", "Ltd.",  "Co.",  "Corp.",
      "Mr.",   "Mrs.", "Ms.",    "Dr.",  "Hon.",  "St.",  "s.",
      "ss.",   "para.", "paras.", "art.", "vol.",  "p.",   "pp.",
      "cf.",   "e.g.", "i.e.",   "etc.", "approx."};
  return kAbbrev;
}

// Rule-based sentence splitter. Boundaries are '.', '!' or '?' followed by
// whitespace and an uppercase letter (or end of text), unless the token
// ending at the mark is a protected abbreviation. The input is whitespace-
// normalized first, so joining the result with single spaces reproduces
// the normalized text.
inline std::vector<std::string> split_sentences(
    std::string_view text,
    const std::set<std::string>& abbreviations = default_abbreviations()) {
  const std::string norm = collapse_whitespace(text);
  std::vector<std::string> out;
  if (norm.empty()) return out;

  auto token_ending_at = [&](std::size_t punct_idx) {
    std::size_t start = punct_idx;
    while (start > 0 && norm[start - 1] != ' ') --start;
    return norm.substr(start, punct_idx - start + 1);
  };

  std::size_t sentence_start = 0;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    char c = norm[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool at_end = (i + 1 == norm.size());
    bool boundary = at_end;
    if (!at_end && norm[i + 1] == ' ' && i + 2 < norm.size() &&
        norm[i + 2] >= 'A' && norm[i + 2] <= 'Z') {
      boundary = true;
    }
    if (boundary && c == '.' &&
        abbreviations.count(token_ending_at(i)) > 0) {
      boundary = false;
    }
    if (boundary) {
      out.push_back(norm.substr(sentence_start, i - sentence_start + 1));
      sentence_start = i + 2;  // skip the single space
      if (sentence_start > norm.size()) sentence_start = norm.size();
    }
  }
  if (sentence_start < norm.size()) {
    out.push_back(norm.substr(sentence_start));
  }
  return out;
}

// Levenshtein distance, used for near-miss suggestions in config validation.
inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace reakase

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

#include <cmath>
#include <string>
#include <vector>

#include "reakase/common.hpp"

namespace reakase {

enum class SimilarityKind { dot, cosine };

inline std::string to_string(SimilarityKind kind) {
  return kind == SimilarityKind::dot ? "dot" : "cosine";
}

inline SimilarityKind parse_similarity_kind(const std::string& s) {
  if (s == "dot") return SimilarityKind::dot;
  if (s == "cosine") return SimilarityKind::cosine;
  throw ConfigError("unknown similarity kind '" + s +
                    "' (expected dot or cosine)");
}

inline double dot_product(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double l2_norm(const std::vector<double>& v) {
  return std::sqrt(dot_product(v, v));
}

inline double similarity(const std::vector<double>& a,
                         const std::vector<double>& b, SimilarityKind kind) {
  if (a.size() != b.size()) {
    throw Error("similarity dimension mismatch: " + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()));
  }
  const double dot = dot_product(a, b);
  if (kind == SimilarityKind::dot) return dot;
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error("cosine similarity with zero-norm vector");
  }
  return dot / (na * nb);
}

inline void l2_normalize(std::vector<double>& v) {
  const double norm = l2_norm(v);
  if (norm == 0.0) throw Error("cannot normalize zero vector");
  for (auto& x : v) x /= norm;
}

}  // namespace reakase

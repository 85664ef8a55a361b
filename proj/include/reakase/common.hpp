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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reakase {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad or inconsistent configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage was invoked before its inputs exist (CLI exit code 3).
class DependencyError : public Error {
 public:
  using Error::Error;
};

// Chat/embedding backend failures, including transcript misses.
class GatewayError : public Error {
 public:
  using Error::Error;
};

// Malformed input files (records, qrels, run files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// 64-bit FNV-1a over raw bytes.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Stateless splitmix64 finalizer. Used wherever a well-mixed value is
// derived from a seed or a hash; pinned here so tests can recompute it.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Content hash used for cache keys, transcript entries and manifests.
inline std::string content_hash(std::string_view data) {
  return to_hex(fnv1a64(data));
}

}  // namespace reakase

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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "reakase/common.hpp"
#include "reakase/io.hpp"
#include "reakase/text.hpp"

namespace reakase {

struct DecodeParams {
  double temperature = 0.0;
  int max_output_tokens = 256;
};

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;  // must be non-empty
  DecodeParams decode;
};

struct EmbeddingRequest {
  std::vector<std::string> texts;  // non-empty list of non-empty texts
  std::string model_tag;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const ChatRequest& req) = 0;
  virtual std::string tag() const = 0;
};

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual std::vector<std::vector<double>> embed_batch(
      const std::vector<std::string>& texts) = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string tag() const = 0;
};

// ---------------------------------------------------------------------------
// Deterministic mocks
// ---------------------------------------------------------------------------

// Completion is a tagged digest-summary: a hash tag over (seed, system,
// user) followed by the leading words of the user prompt. Depends on
// nothing else, so recorded pipelines replay bit-identically.
class MockChatBackend : public ChatBackend {
 public:
  explicit MockChatBackend(std::uint64_t seed = 0) : seed_(seed) {}

  std::string complete(const ChatRequest& req) override {
    const std::uint64_t h =
        fnv1a64(req.user_prompt, fnv1a64(req.system_prompt)) ^ mix64(seed_);
    auto words = split_whitespace(req.user_prompt);
    const std::size_t keep = std::min<std::size_t>(words.size(), 48);
    std::string summary;
    for (std::size_t i = 0; i < keep; ++i) {
      if (i) summary += ' ';
      summary += words[i];
    }
    return "[mock " + to_hex(h).substr(0, 12) + "] " + summary;
  }

  std::string tag() const override { return "mock-chat"; }

 private:
  std::uint64_t seed_;
};

// Seeded hash projection of the text, unit norm. The exact construction is
// part of the contract (tests recompute it):
//   h    = fnv1a64(text) ^ mix64(seed)
//   r_i  = mix64(h + (i+1) * 0x9E3779B97F4A7C15)
//   v_i  = (r_i >> 11) * 2^-53 * 2 - 1, then v / ||v||.
class MockEmbeddingBackend : public EmbeddingBackend {
 public:
  MockEmbeddingBackend(std::size_t dim, std::uint64_t seed)
      : dim_(dim), seed_(seed) {}

  std::vector<std::vector<double>> embed_batch(
      const std::vector<std::string>& texts) override {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& text : texts) out.push_back(project(text));
    return out;
  }

  std::size_t dim() const override { return dim_; }
  std::string tag() const override {
    return "mock-embed-d" + std::to_string(dim_) + "-s" + std::to_string(seed_);
  }

 private:
  std::vector<double> project(const std::string& text) const {
    const std::uint64_t h = fnv1a64(text) ^ mix64(seed_);
    std::vector<double> v(dim_);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const std::uint64_t r = mix64(h + (i + 1) * 0x9E3779B97F4A7C15ULL);
      v[i] = static_cast<double>(r >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      norm_sq += v[i] * v[i];
    }
    const double norm = std::sqrt(norm_sq);
    for (auto& x : v) x /= norm;
    return v;
  }

  std::size_t dim_;
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Transcript
// ---------------------------------------------------------------------------

enum class TranscriptMode { record, replay, live };

// Content-addressed request/response log. In replay mode a miss is an
// error, never a live call.
struct GatewayTranscript {
  std::map<std::string, nlohmann::json> entries;  // hash -> response payload
  std::map<std::string, std::string> summaries;   // hash -> request summary
  TranscriptMode mode = TranscriptMode::live;
};

inline GatewayTranscript load_transcript(const std::filesystem::path& path,
                                         TranscriptMode mode) {
  GatewayTranscript transcript;
  transcript.mode = mode;
  if (std::filesystem::exists(path)) {
    for (const auto& rec : read_jsonl(path)) {
      const std::string hash = rec.at("hash").get<std::string>();
      transcript.entries[hash] = rec.at("response");
      transcript.summaries[hash] = rec.value("request", "");
    }
  }
  return transcript;
}

inline void save_transcript(const std::filesystem::path& path,
                            const GatewayTranscript& transcript) {
  std::vector<nlohmann::json> records;
  for (const auto& [hash, response] : transcript.entries) {
    nlohmann::json rec{{"hash", hash}, {"response", response}};
    auto it = transcript.summaries.find(hash);
    rec["request"] = it == transcript.summaries.end() ? "" : it->second;
    records.push_back(std::move(rec));
  }
  write_jsonl(path, records);
}

// ---------------------------------------------------------------------------
// Gateway: backend + transcript + content-addressed cache
// ---------------------------------------------------------------------------

inline std::string chat_request_hash(const ChatRequest& req,
                                     const std::string& backend_tag) {
  std::string key = backend_tag;
  key += '\x1e';
  key += req.system_prompt;
  key += '\x1e';
  key += req.user_prompt;
  key += '\x1e';
  key += std::to_string(req.decode.temperature);
  key += '\x1e';
  key += std::to_string(req.decode.max_output_tokens);
  return content_hash(key);
}

inline std::string embed_request_hash(const std::string& text,
                                      const std::string& backend_tag) {
  std::string key = backend_tag;
  key += '\x1e';
  key += text;
  return content_hash(key);
}

// Shareable front end over chat/embedding backends. Responses are cached by
// request content hash with per-key single flight, so concurrent identical
// requests issue one upstream call. An attached transcript makes recorded
// pipelines replayable with zero live calls.
class Gateway {
 public:
  Gateway(std::shared_ptr<ChatBackend> chat,
          std::shared_ptr<EmbeddingBackend> embedding,
          std::shared_ptr<GatewayTranscript> transcript = nullptr)
      : chat_(std::move(chat)),
        embedding_(std::move(embedding)),
        transcript_(std::move(transcript)) {}

  std::string chat_complete(const ChatRequest& req) {
    if (req.user_prompt.empty()) {
      throw GatewayError("chat request with empty user prompt");
    }
    if (!chat_) throw GatewayError("no chat backend configured");
    const std::string key = chat_request_hash(req, chat_->tag());

    std::shared_future<std::string> fut;
    bool owner = false;
    std::promise<std::string> promise;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = chat_cache_.find(key); it != chat_cache_.end()) {
        return it->second;
      }
      if (transcript_) {
        if (auto it = transcript_->entries.find(key);
            it != transcript_->entries.end() && it->second.is_string()) {
          std::string value = it->second.get<std::string>();
          chat_cache_[key] = value;
          return value;
        }
        if (transcript_->mode == TranscriptMode::replay) {
          throw GatewayError("transcript miss: " + key);
        }
      }
      if (auto it = inflight_.find(key); it != inflight_.end()) {
        fut = it->second;
      } else {
        owner = true;
        fut = promise.get_future().share();
        inflight_[key] = fut;
      }
    }
    if (!owner) return fut.get();

    try {
      std::string value = chat_->complete(req);
      {
        std::lock_guard<std::mutex> lock(mu_);
        chat_cache_[key] = value;
        if (transcript_ && transcript_->mode == TranscriptMode::record) {
          transcript_->entries[key] = value;
          transcript_->summaries[key] = request_summary(req);
        }
        inflight_.erase(key);
      }
      ++upstream_chat_calls_;
      promise.set_value(value);
      return value;
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(mu_);
        inflight_.erase(key);
      }
      promise.set_exception(std::current_exception());
      throw;
    }
  }

  // One vector per input text, order aligned; all vectors share dim().
  std::vector<std::vector<double>> embed(const EmbeddingRequest& req) {
    if (req.texts.empty()) throw GatewayError("empty embedding request");
    if (!embedding_) throw GatewayError("no embedding backend configured");
    for (const auto& t : req.texts) {
      if (t.empty()) throw GatewayError("empty text in embedding request");
    }
    const std::string tag = embedding_->tag();

    std::vector<std::vector<double>> out(req.texts.size());
    std::vector<std::size_t> missing;
    std::vector<std::string> missing_texts;
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (std::size_t i = 0; i < req.texts.size(); ++i) {
        const std::string key = embed_request_hash(req.texts[i], tag);
        if (auto it = embed_cache_.find(key); it != embed_cache_.end()) {
          out[i] = it->second;
          continue;
        }
        if (transcript_) {
          if (auto it = transcript_->entries.find(key);
              it != transcript_->entries.end() && it->second.is_array()) {
            out[i] = it->second.get<std::vector<double>>();
            embed_cache_[key] = out[i];
            continue;
          }
          if (transcript_->mode == TranscriptMode::replay) {
            throw GatewayError("transcript miss: " + key);
          }
        }
        // duplicate texts inside one batch resolve to one upstream slot
        bool queued = false;
        for (std::size_t k = 0; k < missing.size(); ++k) {
          if (missing_texts[k] == req.texts[i]) {
            queued = true;
            break;
          }
        }
        missing.push_back(i);
        if (!queued) missing_texts.push_back(req.texts[i]);
      }
    }
    if (!missing_texts.empty()) {
      auto vectors = embedding_->embed_batch(missing_texts);
      ++upstream_embed_calls_;
      if (vectors.size() != missing_texts.size()) {
        throw GatewayError("embedding backend returned wrong batch size");
      }
      const std::size_t d = embedding_->dim();
      for (const auto& v : vectors) {
        if (v.size() != d) {
          throw GatewayError("embedding dimension mismatch in batch: got " +
                             std::to_string(v.size()) + ", expected " +
                             std::to_string(d));
        }
      }
      std::lock_guard<std::mutex> lock(mu_);
      for (std::size_t k = 0; k < missing_texts.size(); ++k) {
        const std::string key = embed_request_hash(missing_texts[k], tag);
        embed_cache_[key] = vectors[k];
        if (transcript_ && transcript_->mode == TranscriptMode::record) {
          transcript_->entries[key] = vectors[k];
          transcript_->summaries[key] =
              tag + ": " + missing_texts[k].substr(0, 80);
        }
      }
      for (std::size_t idx : missing) {
        const std::string key = embed_request_hash(req.texts[idx], tag);
        out[idx] = embed_cache_.at(key);
      }
    }
    return out;
  }

  std::size_t embedding_dim() const {
    if (!embedding_) throw GatewayError("no embedding backend configured");
    return embedding_->dim();
  }

  std::string embedding_tag() const {
    return embedding_ ? embedding_->tag() : std::string();
  }

  std::shared_ptr<GatewayTranscript> transcript() const { return transcript_; }

  // Upstream call counters, for cache behavior tests.
  std::size_t upstream_chat_calls() const { return upstream_chat_calls_; }
  std::size_t upstream_embed_calls() const { return upstream_embed_calls_; }

 private:
  static std::string request_summary(const ChatRequest& req) {
    return collapse_whitespace(req.user_prompt).substr(0, 80);
  }

  std::shared_ptr<ChatBackend> chat_;
  std::shared_ptr<EmbeddingBackend> embedding_;
  std::shared_ptr<GatewayTranscript> transcript_;

  std::mutex mu_;
  std::unordered_map<std::string, std::string> chat_cache_;
  std::unordered_map<std::string, std::vector<double>> embed_cache_;
  std::unordered_map<std::string, std::shared_future<std::string>> inflight_;
  std::atomic<std::size_t> upstream_chat_calls_{0};
  std::atomic<std::size_t> upstream_embed_calls_{0};
};

}  // namespace reakase

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
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "reakase/elements.hpp"
#include "reakase/gateway.hpp"
#include "reakase/rng.hpp"
#include "reakase/similarity.hpp"
#include "reakase/templates.hpp"
#include "reakase/triplets.hpp"

namespace reakase {

// ---------------------------------------------------------------------------
// Reasoning generation
// ---------------------------------------------------------------------------

inline std::string issues_slot(const std::vector<std::string>& issues) {
  return join(issues, " ");
}

// Renders the reasoning prompt for one case. An empty judgement renders the
// sentinel "(no judgement extracted)" so the prompt stays well-formed; the
// caller flags that in provenance.
inline ChatRequest build_reasoning_request(const LegalElements& elements,
                                           const TripletSet& r_fact,
                                           const TripletSet& r_issue,
                                           const DecodeParams& decode = {}) {
  const std::string judgement_slot = trim(elements.judgement).empty()
                                         ? "(no judgement extracted)"
                                         : elements.judgement;
  ChatRequest req;
  req.system_prompt = kReasoningSystemPrompt;
  req.user_prompt = render_reasoning_prompt(
      elements.facts, render_triplets(r_fact), issues_slot(elements.issues),
      render_triplets(r_issue), judgement_slot);
  req.decode = decode;
  return req;
}

inline std::string generate_reasoning(const LegalElements& elements,
                                      const TripletSet& r_fact,
                                      const TripletSet& r_issue,
                                      Gateway& gateway,
                                      const DecodeParams& decode = {}) {
  return gateway.chat_complete(
      build_reasoning_request(elements, r_fact, r_issue, decode));
}

// ---------------------------------------------------------------------------
// Contextualized case rendering
// ---------------------------------------------------------------------------

struct ContextualisedCase {
  std::string case_id;
  TemplateId template_id = TemplateId::default_template;
  std::string system_text;
  std::string user_text;
  bool truncated = false;
};

// Tail truncation to a whitespace-token budget. Under-budget text passes
// through unchanged; over-budget text is rebuilt from its first `budget`
// tokens joined by single spaces.
inline std::pair<std::string, bool> truncate_to_budget(std::string_view text,
                                                       std::size_t budget) {
  if (budget < 1) throw ConfigError("token budget must be >= 1");
  if (whitespace_token_count(text) <= budget) {
    return {std::string(text), false};
  }
  const auto tokens = split_whitespace(text);
  std::string out;
  for (std::size_t i = 0; i < budget; ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return {std::move(out), true};
}

// Builds c_Cont from the extracted elements. The judgement never appears in
// the encoding prompt.
inline ContextualisedCase render_context(const LegalElements& elements,
                                         const TripletSet& r_fact,
                                         const TripletSet& r_issue,
                                         TemplateId template_id,
                                         std::size_t token_budget = 2048) {
  ContextualisedCase ctx;
  ctx.case_id = elements.case_id;
  ctx.template_id = template_id;
  ctx.system_text = kEncodingSystemPrompt;
  const std::string rendered = render_encoding_prompt(
      template_id, elements.facts, render_triplets(r_fact),
      issues_slot(elements.issues), render_triplets(r_issue),
      elements.reasoning);
  auto [text, truncated] = truncate_to_budget(rendered, token_budget);
  ctx.user_text = std::move(text);
  ctx.truncated = truncated;
  return ctx;
}

// ---------------------------------------------------------------------------
// Local hashing embedder
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t fnv1a64_seeded(std::string_view s, std::uint64_t seed) {
  return fnv1a64(s, 14695981039346656037ULL ^ mix64(seed));
}

inline std::vector<std::string> embed_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    const bool word_char =
        (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
        (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (word_char) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                         : static_cast<char>(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace detail

// Feature hashing of lowercased word unigrams and bigrams into `dim`
// buckets with seeded sign hashing, log-scaled term counts, then L2
// normalization. Pure function of (text, dim, seed); empty input yields an
// (un-normalizable) zero vector.
inline std::vector<double> local_embed(std::string_view text, std::size_t dim,
                                       std::uint64_t seed) {
  if (dim < 8) throw ConfigError("local_embed dimension must be >= 8");
  std::vector<double> v(dim, 0.0);
  const auto tokens = detail::embed_tokens(text);
  if (tokens.empty()) return v;

  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    ++counts[tokens[i] + '\x1f' + tokens[i + 1]];
  }
  for (const auto& [feature, count] : counts) {
    const std::uint64_t h = detail::fnv1a64_seeded(feature, seed);
    const double sign = (mix64(h) & 1) ? 1.0 : -1.0;
    v[h % dim] += sign * (1.0 + std::log(static_cast<double>(count)));
  }
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (auto& x : v) x /= norm;
  }
  return v;
}

// local_embed wrapped as an embedding backend for desk-scale runs.
class LocalHashEmbeddingBackend : public EmbeddingBackend {
 public:
  LocalHashEmbeddingBackend(std::size_t dim, std::uint64_t seed)
      : dim_(dim), seed_(seed) {}

  std::vector<std::vector<double>> embed_batch(
      const std::vector<std::string>& texts) override {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(local_embed(t, dim_, seed_));
    return out;
  }

  std::size_t dim() const override { return dim_; }
  std::string tag() const override {
    return "local-hash-d" + std::to_string(dim_) + "-s" + std::to_string(seed_);
  }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Adapter and case encoding
// ---------------------------------------------------------------------------

// Affine map over frozen base embeddings; the trainable stand-in for
// fine-tuning the base encoder.
struct Adapter {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<double> weights;  // row-major d_in x d_out
  std::vector<double> bias;     // d_out
  std::string version;

  std::vector<double> apply(const std::vector<double>& input) const {
    if (input.size() != d_in) {
      throw Error("adapter input dimension mismatch: got " +
                  std::to_string(input.size()) + ", expected " +
                  std::to_string(d_in));
    }
    std::vector<double> out(bias);
    for (std::size_t i = 0; i < d_in; ++i) {
      const double x = input[i];
      if (x == 0.0) continue;
      const double* row = &weights[i * d_out];
      for (std::size_t j = 0; j < d_out; ++j) out[j] += x * row[j];
    }
    return out;
  }
};

// Truncated-identity initialization plus small seeded noise: training
// starts at (a projection of) base-embedding behavior.
inline Adapter make_initial_adapter(std::size_t d_in, std::size_t d_out,
                                    double noise_scale, std::uint64_t seed,
                                    std::string version = "init") {
  Adapter adapter;
  adapter.d_in = d_in;
  adapter.d_out = d_out;
  adapter.version = std::move(version);
  adapter.weights.assign(d_in * d_out, 0.0);
  adapter.bias.assign(d_out, 0.0);
  DetRng rng(seed);
  for (std::size_t i = 0; i < d_in; ++i) {
    for (std::size_t j = 0; j < d_out; ++j) {
      double w = (i == j) ? 1.0 : 0.0;
      if (noise_scale > 0.0) w += noise_scale * rng.next_gaussian();
      adapter.weights[i * d_out + j] = w;
    }
  }
  return adapter;
}

inline Adapter make_identity_adapter(std::size_t dim) {
  return make_initial_adapter(dim, dim, 0.0, 0, "identity");
}

struct CaseEmbedding {
  std::string case_id;
  std::vector<double> vector;
  std::string backend_tag;
  std::string adapter_version;  // empty when no adapter was applied
  bool normalized = false;
};

inline std::string embedding_input(const ContextualisedCase& ctx) {
  return ctx.system_text + "\n" + ctx.user_text;
}

// Embeds the contextualized case, optionally through the adapter, and
// normalizes under cosine similarity.
inline CaseEmbedding encode_case(const ContextualisedCase& ctx,
                                 Gateway& gateway, const Adapter* adapter,
                                 SimilarityKind similarity_kind) {
  EmbeddingRequest req;
  req.texts = {embedding_input(ctx)};
  req.model_tag = gateway.embedding_tag();
  CaseEmbedding emb;
  emb.case_id = ctx.case_id;
  emb.backend_tag = gateway.embedding_tag();
  emb.vector = gateway.embed(req)[0];
  if (adapter != nullptr) {
    emb.vector = adapter->apply(emb.vector);
    emb.adapter_version = adapter->version;
  }
  if (similarity_kind == SimilarityKind::cosine) {
    l2_normalize(emb.vector);
    emb.normalized = true;
  }
  return emb;
}

// ---------------------------------------------------------------------------
// Embedding store
// ---------------------------------------------------------------------------

struct EmbeddingStore {
  std::string backend_tag;
  std::string template_id;
  std::string adapter_version;
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;  // case_id -> vector

  const std::vector<double>& at(const std::string& case_id) const {
    auto it = vectors.find(case_id);
    if (it == vectors.end()) {
      throw Error("no embedding stored for case '" + case_id + "'");
    }
    return it->second;
  }
};

inline void save_embedding_store(const std::filesystem::path& path,
                                 const EmbeddingStore& store) {
  std::vector<nlohmann::json> records;
  records.reserve(store.vectors.size());
  for (const auto& [case_id, vec] : store.vectors) {
    records.push_back(nlohmann::json{{"case_id", case_id},
                                     {"backend_tag", store.backend_tag},
                                     {"template_id", store.template_id},
                                     {"adapter_version", store.adapter_version},
                                     {"values", vec}});
  }
  write_jsonl(path, records);
}

inline EmbeddingStore load_embedding_store(const std::filesystem::path& path) {
  EmbeddingStore store;
  for (const auto& rec : read_jsonl(path)) {
    const std::string case_id = rec.at("case_id").get<std::string>();
    store.backend_tag = rec.at("backend_tag").get<std::string>();
    store.template_id = rec.at("template_id").get<std::string>();
    store.adapter_version = rec.value("adapter_version", "");
    auto vec = rec.at("values").get<std::vector<double>>();
    if (store.dim == 0) store.dim = vec.size();
    if (vec.size() != store.dim) {
      throw ParseError("inconsistent embedding dimension for case '" +
                       case_id + "'");
    }
    store.vectors[case_id] = std::move(vec);
  }
  return store;
}

}  // namespace reakase

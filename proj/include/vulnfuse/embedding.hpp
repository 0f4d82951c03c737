// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/error.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vulnfuse
{
inline constexpr size_t embedding_dim = 1536;

using EmbeddingVector = std::vector<float>;

/// Hex digest identifying a text in error messages and cache records.
[[nodiscard]] std::string text_hash(std::string_view text);

/// A provider failure inside `embed_batch`. `kind()` keeps the underlying error's name
/// (AuthFailure, RemoteUnavailable, ...); `index()` is the position in the request.
class BatchEmbeddingError : public Error
{
public:
    BatchEmbeddingError(const Error& cause, size_t index)
        : Error{cause.kind(), "batch index " + std::to_string(index) + ": " + cause.what()},
          index_{index}
    {}

    [[nodiscard]] size_t index() const noexcept { return index_; }

private:
    size_t index_;
};

/// Source of raw embeddings. Implementations must be safe to call concurrently.
class EmbeddingBackend
{
public:
    virtual ~EmbeddingBackend() = default;

    /// Stable description mixed into cache keys, e.g. "local:seed=42".
    [[nodiscard]] virtual std::string identity() const = 0;

    /// One provider request for `texts`; returns one `embedding_dim` vector per text.
    [[nodiscard]] virtual std::vector<EmbeddingVector> fetch(
        std::span<const std::string> texts) = 0;

    /// Largest number of texts sent in one `fetch`.
    [[nodiscard]] virtual size_t max_batch() const noexcept { return 64; }
};

/// Offline, deterministic embeddings: FNV-1a of the text mixed with the seed keys a
/// SplitMix64 counter stream; 1536 uniform draws in [-1, 1) are normalized to unit length.
/// Identical on every platform.
class LocalEmbeddingBackend final : public EmbeddingBackend
{
public:
    explicit LocalEmbeddingBackend(uint64_t seed = 42) noexcept : seed_{seed} {}

    [[nodiscard]] std::string identity() const override;
    [[nodiscard]] std::vector<EmbeddingVector> fetch(std::span<const std::string> texts) override;

    [[nodiscard]] static EmbeddingVector embed(std::string_view text, uint64_t seed);

private:
    uint64_t seed_;
};

struct RemoteEmbeddingConfig
{
    /// Full endpoint, e.g. "https://api.openai.com/v1/embeddings".
    std::string url;
    std::string api_key;
    std::string model = "text-embedding-ada-002";
    unsigned max_attempts = 5;
    std::chrono::milliseconds initial_backoff{500};
    unsigned max_in_flight = 4;
    size_t batch_size = 64;
    std::chrono::seconds timeout{60};
};

/// OpenAI-compatible embeddings endpoint. Retries transient failures (network errors, 429,
/// 5xx) with exponential backoff; 401/403 fail immediately with AuthFailure.
class RemoteEmbeddingBackend final : public EmbeddingBackend
{
public:
    explicit RemoteEmbeddingBackend(RemoteEmbeddingConfig cfg);
    ~RemoteEmbeddingBackend() override;

    [[nodiscard]] std::string identity() const override;
    [[nodiscard]] std::vector<EmbeddingVector> fetch(std::span<const std::string> texts) override;
    [[nodiscard]] size_t max_batch() const noexcept override { return cfg_.batch_size; }

private:
    struct Limiter;
    RemoteEmbeddingConfig cfg_;
    std::unique_ptr<Limiter> limiter_;
};

/// Content-addressed vector store, optionally backed by an append-only file that survives
/// restarts. A torn trailing record (interrupted write) is ignored on load.
class EmbeddingCache
{
public:
    EmbeddingCache() = default;
    explicit EmbeddingCache(std::filesystem::path file);

    [[nodiscard]] bool lookup(const std::string& key, EmbeddingVector& out) const;
    void insert(const std::string& key, const EmbeddingVector& value);
    [[nodiscard]] size_t size() const;

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::string, EmbeddingVector> entries_;
    std::filesystem::path file_;
    std::ofstream log_;
};

/// Cache + dedup front end over a backend.
class EmbeddingProvider
{
public:
    explicit EmbeddingProvider(std::unique_ptr<EmbeddingBackend> backend,
        std::shared_ptr<EmbeddingCache> cache = std::make_shared<EmbeddingCache>());

    [[nodiscard]] EmbeddingVector embed_text(std::string_view text);

    /// Order-preserving; identical texts are fetched once. Failures are rethrown as
    /// BatchEmbeddingError carrying the first affected index.
    [[nodiscard]] std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts);

    [[nodiscard]] std::string identity() const { return backend_->identity(); }

    /// Number of texts actually sent to the backend.
    [[nodiscard]] size_t texts_fetched() const noexcept { return texts_fetched_; }
    [[nodiscard]] size_t backend_calls() const noexcept { return backend_calls_; }

private:
    [[nodiscard]] std::string cache_key(std::string_view text) const;

    std::unique_ptr<EmbeddingBackend> backend_;
    std::shared_ptr<EmbeddingCache> cache_;
    std::string identity_;
    std::atomic<size_t> texts_fetched_{0};
    std::atomic<size_t> backend_calls_{0};
};

struct ProviderSettings
{
    /// "local" or "remote".
    std::string kind = "local";
    uint64_t local_seed = 42;
    RemoteEmbeddingConfig remote;
    /// Empty for an in-memory cache.
    std::filesystem::path cache_file;
};

/// Reads VULNFUSE_EMBEDDING_{PROVIDER,URL,API_KEY,MODEL,SEED,MAX_IN_FLIGHT} (API key falls
/// back to OPENAI_API_KEY) on top of `defaults`.
[[nodiscard]] ProviderSettings provider_settings_from_env(ProviderSettings defaults = {});

[[nodiscard]] std::unique_ptr<EmbeddingProvider> make_provider(const ProviderSettings& settings);
}  // namespace vulnfuse

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/embedding.hpp>
#include <vulnfuse/util.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <unordered_map>

namespace vulnfuse
{
namespace
{
constexpr uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr uint64_t splitmix64_mix(uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr char cache_magic[] = "VFEC";
constexpr uint32_t cache_version = 1;
constexpr size_t cache_key_len = 64;  // hex SHA-256
constexpr size_t cache_record_len = cache_key_len + embedding_dim * 4;

void validate_vector(const EmbeddingVector& v, std::string_view text)
{
    if (v.size() != embedding_dim)
        throw ProviderFailure{"text " + text_hash(text) + ": embedding has " +
                              std::to_string(v.size()) + " values, expected " +
                              std::to_string(embedding_dim)};
    for (const float x : v)
    {
        if (!std::isfinite(x))
            throw ProviderFailure{"text " + text_hash(text) + ": non-finite embedding value"};
    }
}

const char* env(const char* name)
{
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? v : nullptr;
}
}  // namespace

std::string text_hash(std::string_view text)
{
    return sha256_hex(text).substr(0, 16);
}

std::string LocalEmbeddingBackend::identity() const
{
    return "local:splitmix64:seed=" + std::to_string(seed_);
}

EmbeddingVector LocalEmbeddingBackend::embed(std::string_view text, uint64_t seed)
{
    const uint64_t key = fnv1a64(text) ^ splitmix64_mix(seed + golden_gamma);
    std::vector<double> raw(embedding_dim);
    double sum_sq = 0.0;
    for (size_t i = 0; i < embedding_dim; ++i)
    {
        const uint64_t z = splitmix64_mix(key + (i + 1) * golden_gamma);
        const double u = double(z >> 11) * 0x1.0p-53;
        raw[i] = 2.0 * u - 1.0;
        sum_sq += raw[i] * raw[i];
    }
    const double norm = std::sqrt(sum_sq);
    EmbeddingVector v(embedding_dim);
    for (size_t i = 0; i < embedding_dim; ++i)
        v[i] = static_cast<float>(raw[i] / norm);
    return v;
}

std::vector<EmbeddingVector> LocalEmbeddingBackend::fetch(std::span<const std::string> texts)
{
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts)
        out.push_back(embed(t, seed_));
    return out;
}

EmbeddingCache::EmbeddingCache(std::filesystem::path file) : file_{std::move(file)}
{
    if (file_.has_parent_path())
        std::filesystem::create_directories(file_.parent_path());

    size_t valid_bytes = 0;
    if (std::filesystem::exists(file_))
    {
        const auto blob = read_file(file_);
        constexpr size_t header_len = 12;
        const bool header_ok = blob.size() >= header_len && blob.compare(0, 4, cache_magic) == 0;
        uint32_t version = 0;
        uint32_t dim = 0;
        if (header_ok)
        {
            std::memcpy(&version, blob.data() + 4, 4);
            std::memcpy(&dim, blob.data() + 8, 4);
        }
        if (!header_ok || version != cache_version || dim != embedding_dim)
            throw IoError{"embedding cache " + file_.string() + " has an incompatible header"};

        size_t pos = header_len;
        for (; pos + cache_record_len <= blob.size(); pos += cache_record_len)
        {
            std::string key = blob.substr(pos, cache_key_len);
            EmbeddingVector v(embedding_dim);
            std::memcpy(v.data(), blob.data() + pos + cache_key_len, embedding_dim * 4);
            entries_.insert_or_assign(std::move(key), std::move(v));
        }
        valid_bytes = pos;
    }

    if (valid_bytes == 0)
    {
        std::ofstream init{file_, std::ios::binary | std::ios::trunc};
        init.write(cache_magic, 4);
        init.write(reinterpret_cast<const char*>(&cache_version), 4);
        const auto dim = static_cast<uint32_t>(embedding_dim);
        init.write(reinterpret_cast<const char*>(&dim), 4);
    }
    else if (valid_bytes != std::filesystem::file_size(file_))
    {
        std::filesystem::resize_file(file_, valid_bytes);
    }
    log_.open(file_, std::ios::binary | std::ios::app);
    if (!log_)
        throw IoError{"cannot open embedding cache " + file_.string()};
}

bool EmbeddingCache::lookup(const std::string& key, EmbeddingVector& out) const
{
    std::lock_guard lock{mutex_};
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return false;
    out = it->second;
    return true;
}

void EmbeddingCache::insert(const std::string& key, const EmbeddingVector& value)
{
    std::lock_guard lock{mutex_};
    if (!entries_.emplace(key, value).second)
        return;
    if (log_.is_open())
    {
        log_.write(key.data(), static_cast<std::streamsize>(key.size()));
        log_.write(reinterpret_cast<const char*>(value.data()),
            static_cast<std::streamsize>(value.size() * sizeof(float)));
        log_.flush();
    }
}

size_t EmbeddingCache::size() const
{
    std::lock_guard lock{mutex_};
    return entries_.size();
}

EmbeddingProvider::EmbeddingProvider(std::unique_ptr<EmbeddingBackend> backend,
    std::shared_ptr<EmbeddingCache> cache)
    : backend_{std::move(backend)}, cache_{std::move(cache)}, identity_{backend_->identity()}
{
    if (!cache_)
        cache_ = std::make_shared<EmbeddingCache>();
}

std::string EmbeddingProvider::cache_key(std::string_view text) const
{
    std::string material = identity_;
    material.push_back('\0');
    material += text;
    return sha256_hex(material);
}

EmbeddingVector EmbeddingProvider::embed_text(std::string_view text)
{
    const auto key = cache_key(text);
    EmbeddingVector v;
    if (cache_->lookup(key, v))
        return v;

    const std::string owned{text};
    ++backend_calls_;
    ++texts_fetched_;
    auto fetched = backend_->fetch(std::span{&owned, 1});
    if (fetched.size() != 1)
        throw ProviderFailure{"text " + text_hash(text) + ": backend returned " +
                              std::to_string(fetched.size()) + " vectors for 1 text"};
    validate_vector(fetched.front(), text);
    cache_->insert(key, fetched.front());
    return std::move(fetched.front());
}

std::vector<EmbeddingVector> EmbeddingProvider::embed_batch(std::span<const std::string> texts)
{
    std::vector<EmbeddingVector> results(texts.size());
    std::vector<std::string> keys(texts.size());
    // First occurrence of each uncached key, and every index waiting on it.
    std::vector<size_t> pending;
    std::unordered_map<std::string, std::vector<size_t>> waiting;

    for (size_t i = 0; i < texts.size(); ++i)
    {
        keys[i] = cache_key(texts[i]);
        if (cache_->lookup(keys[i], results[i]))
            continue;
        auto& slot = waiting[keys[i]];
        if (slot.empty())
            pending.push_back(i);
        slot.push_back(i);
    }

    const size_t chunk = std::max<size_t>(1, backend_->max_batch());
    for (size_t begin = 0; begin < pending.size(); begin += chunk)
    {
        const size_t end = std::min(pending.size(), begin + chunk);
        std::vector<std::string> request;
        for (size_t j = begin; j < end; ++j)
            request.push_back(texts[pending[j]]);

        std::vector<EmbeddingVector> fetched;
        try
        {
            ++backend_calls_;
            texts_fetched_ += request.size();
            fetched = backend_->fetch(request);
            if (fetched.size() != request.size())
                throw ProviderFailure{"backend returned " + std::to_string(fetched.size()) +
                                      " vectors for " + std::to_string(request.size()) + " texts"};
            for (size_t j = 0; j < request.size(); ++j)
                validate_vector(fetched[j], request[j]);
        }
        catch (const Error& e)
        {
            throw BatchEmbeddingError{e, pending[begin]};
        }

        for (size_t j = begin; j < end; ++j)
        {
            const auto& key = keys[pending[j]];
            auto& v = fetched[j - begin];
            cache_->insert(key, v);
            for (const auto idx : waiting[key])
                results[idx] = v;
        }
    }
    return results;
}

ProviderSettings provider_settings_from_env(ProviderSettings s)
{
    if (const auto* v = env("VULNFUSE_EMBEDDING_PROVIDER"))
        s.kind = v;
    if (const auto* v = env("VULNFUSE_EMBEDDING_URL"))
        s.remote.url = v;
    if (const auto* v = env("VULNFUSE_EMBEDDING_API_KEY"))
        s.remote.api_key = v;
    else if (const auto* k = env("OPENAI_API_KEY"))
        s.remote.api_key = k;
    if (const auto* v = env("VULNFUSE_EMBEDDING_MODEL"))
        s.remote.model = v;
    if (const auto* v = env("VULNFUSE_EMBEDDING_SEED"))
        s.local_seed = std::strtoull(v, nullptr, 10);
    if (const auto* v = env("VULNFUSE_EMBEDDING_MAX_IN_FLIGHT"))
        s.remote.max_in_flight = static_cast<unsigned>(std::max(1UL, std::strtoul(v, nullptr, 10)));
    if (s.remote.url.empty())
        s.remote.url = "https://api.openai.com/v1/embeddings";
    return s;
}

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderSettings& settings)
{
    std::unique_ptr<EmbeddingBackend> backend;
    if (settings.kind == "local")
        backend = std::make_unique<LocalEmbeddingBackend>(settings.local_seed);
    else if (settings.kind == "remote")
        backend = std::make_unique<RemoteEmbeddingBackend>(settings.remote);
    else
        throw InvalidArgument{"unknown embedding provider '" + settings.kind + "'"};

    auto cache = settings.cache_file.empty()
                     ? std::make_shared<EmbeddingCache>()
                     : std::make_shared<EmbeddingCache>(settings.cache_file);
    return std::make_unique<EmbeddingProvider>(std::move(backend), std::move(cache));
}
}  // namespace vulnfuse

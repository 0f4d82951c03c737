// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <vulnfuse/embedding.hpp>

#include <json.hpp>
#include <semaphore>
#include <thread>

namespace vulnfuse
{
struct RemoteEmbeddingBackend::Limiter
{
    explicit Limiter(unsigned n) : slots{std::ptrdiff_t(n)} {}
    std::counting_semaphore<1024> slots;
};

namespace
{
struct Endpoint
{
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url)
{
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw InvalidArgument{"embedding URL must include a scheme"};
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

enum class Outcome
{
    ok,
    transient,
    auth,
    fatal,
};
}  // namespace

RemoteEmbeddingBackend::RemoteEmbeddingBackend(RemoteEmbeddingConfig cfg)
    : cfg_{std::move(cfg)},
      limiter_{std::make_unique<Limiter>(std::clamp(cfg_.max_in_flight, 1U, 1024U))}
{
    if (cfg_.max_attempts == 0)
        cfg_.max_attempts = 1;
    (void)split_url(cfg_.url);
}

RemoteEmbeddingBackend::~RemoteEmbeddingBackend() = default;

std::string RemoteEmbeddingBackend::identity() const
{
    return "remote:" + cfg_.model;
}

std::vector<EmbeddingVector> RemoteEmbeddingBackend::fetch(std::span<const std::string> texts)
{
    if (texts.empty())
        return {};
    const auto first_hash = text_hash(texts.front());
    const auto endpoint = split_url(cfg_.url);
    const auto body = nlohmann::json{{"model", cfg_.model},
        {"input", std::vector<std::string>(texts.begin(), texts.end())}}
                          .dump();

    std::string last_error;
    auto delay = cfg_.initial_backoff;
    for (unsigned attempt = 1; attempt <= cfg_.max_attempts; ++attempt)
    {
        if (attempt > 1)
        {
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }

        Outcome outcome = Outcome::ok;
        std::vector<EmbeddingVector> vectors;
        {
            limiter_->slots.acquire();
            struct Release
            {
                Limiter& l;
                ~Release() { l.slots.release(); }
            } release{*limiter_};

            httplib::Client client{endpoint.origin};
            client.set_connection_timeout(cfg_.timeout);
            client.set_read_timeout(cfg_.timeout);
            client.set_write_timeout(cfg_.timeout);
            httplib::Headers headers;
            if (!cfg_.api_key.empty())
                headers.emplace("Authorization", "Bearer " + cfg_.api_key);

            const auto res = client.Post(endpoint.path, headers, body, "application/json");
            if (!res)
            {
                outcome = Outcome::transient;
                last_error = "transport error: " + httplib::to_string(res.error());
            }
            else if (res->status == 401 || res->status == 403)
            {
                outcome = Outcome::auth;
                last_error = "HTTP " + std::to_string(res->status);
            }
            else if (res->status == 429 || res->status >= 500)
            {
                outcome = Outcome::transient;
                last_error = "HTTP " + std::to_string(res->status);
            }
            else if (res->status != 200)
            {
                outcome = Outcome::fatal;
                last_error = "HTTP " + std::to_string(res->status);
            }
            else
            {
                try
                {
                    const auto doc = nlohmann::json::parse(res->body);
                    const auto& data = doc.at("data");
                    vectors.resize(texts.size());
                    for (size_t i = 0; i < data.size(); ++i)
                    {
                        const size_t idx = data[i].value("index", i);
                        if (idx >= vectors.size())
                            throw std::out_of_range{"embedding index out of range"};
                        vectors[idx] = data[i].at("embedding").get<EmbeddingVector>();
                    }
                }
                catch (const std::exception& e)
                {
                    outcome = Outcome::fatal;
                    last_error = std::string{"malformed response: "} + e.what();
                }
            }
        }

        switch (outcome)
        {
        case Outcome::ok:
            return vectors;
        case Outcome::auth:
            throw AuthFailure{"text " + first_hash + ": " + last_error};
        case Outcome::fatal:
            throw ProviderFailure{"text " + first_hash + ": " + last_error};
        case Outcome::transient:
            break;
        }
    }
    throw RemoteUnavailable{"text " + first_hash + ": " + last_error + " after " +
                            std::to_string(cfg_.max_attempts) + " attempts"};
}
}  // namespace vulnfuse

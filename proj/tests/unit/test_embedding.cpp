// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <vulnfuse/embedding.hpp>
#include <vulnfuse/util.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <thread>

using namespace vulnfuse;

namespace
{
/// Counts calls and records the texts it was asked for.
class CountingBackend final : public EmbeddingBackend
{
public:
    std::string identity() const override { return "counting"; }
    std::vector<EmbeddingVector> fetch(std::span<const std::string> texts) override
    {
        ++calls;
        for (const auto& t : texts)
            seen.push_back(t);
        std::vector<EmbeddingVector> out;
        for (const auto& t : texts)
            out.push_back(LocalEmbeddingBackend::embed(t, 1));
        return out;
    }
    size_t max_batch() const noexcept override { return 8; }

    size_t calls = 0;
    std::vector<std::string> seen;
};

std::filesystem::path temp_file(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("vulnfuse_" + name);
    std::filesystem::remove(p);
    return p;
}

/// Minimal embeddings endpoint on localhost for exercising the remote client.
struct FakeEndpoint
{
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> requests{0};
    std::atomic<int> fail_first{0};
    std::atomic<int> status_on_fail{500};

    FakeEndpoint()
    {
        server.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
            const int n = ++requests;
            if (req.get_header_value("Authorization") != "Bearer sk-test-secret")
            {
                res.status = 401;
                return;
            }
            if (n <= fail_first)
            {
                res.status = status_on_fail;
                return;
            }
            const auto body = nlohmann::json::parse(req.body);
            nlohmann::json data = nlohmann::json::array();
            const auto& input = body.at("input");
            // Reverse order with explicit indices, as some services do.
            for (size_t i = input.size(); i-- > 0;)
            {
                const auto v = LocalEmbeddingBackend::embed(input[i].get<std::string>(), 7);
                data.push_back({{"index", i}, {"embedding", v}});
            }
            res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread{[this] { server.listen_after_bind(); }};
        server.wait_until_ready();
    }
    ~FakeEndpoint()
    {
        server.stop();
        thread.join();
    }

    RemoteEmbeddingConfig config(std::string key = "sk-test-secret") const
    {
        RemoteEmbeddingConfig c;
        c.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/embeddings";
        c.api_key = std::move(key);
        c.initial_backoff = std::chrono::milliseconds{1};
        c.max_attempts = 3;
        c.timeout = std::chrono::seconds{5};
        return c;
    }
};
}  // namespace

TEST_CASE("local embeddings are unit-norm and pinned")
{
    const auto v = LocalEmbeddingBackend::embed("PUSH1 ADD", 42);
    REQUIRE(v.size() == 1536);
    // Values from an independent splitmix64 implementation.
    CHECK(v[0] == -0.037723906338214874f);
    CHECK(v[1] == 0.03887397050857544f);
    CHECK(v[2] == -0.01935667358338833f);
    CHECK(v[3] == 0.03960774466395378f);
    CHECK(v[1535] == 0.036524783819913864f);

    for (const char* text : {"", "a", "PUSH1 ADD", "0 JUMPDEST PUSH1 SSTORE STOP", "\xc3\xa9"})
    {
        const auto e = LocalEmbeddingBackend::embed(text, 42);
        double sq = 0.0;
        for (const float x : e)
        {
            CHECK(std::isfinite(x));
            sq += double(x) * double(x);
        }
        CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-6);
    }
    CHECK(LocalEmbeddingBackend::embed("x", 1) != LocalEmbeddingBackend::embed("x", 2));
}

TEST_CASE("provider caches and deduplicates")
{
    auto backend = std::make_unique<CountingBackend>();
    auto* raw = backend.get();
    EmbeddingProvider p{std::move(backend)};

    const auto a1 = p.embed_text("a");
    const auto a2 = p.embed_text("a");
    CHECK(a1 == a2);
    CHECK(raw->calls == 1);

    const std::vector<std::string> texts{"a", "b", "a"};
    const auto r = p.embed_batch(texts);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == r[2]);
    CHECK(r[0] == a1);
    CHECK(raw->seen == std::vector<std::string>{"a", "b"});

    CHECK(p.embed_batch({}).empty());

    std::vector<std::string> many;
    for (int i = 0; i < 100; ++i)
        many.push_back("t" + std::to_string(i));
    const auto before = raw->calls;
    (void)p.embed_batch(many);
    CHECK(raw->calls - before <= 100);
    CHECK(p.texts_fetched() == 102);
}

TEST_CASE("persistent cache survives reopen and is transparent")
{
    const auto file = temp_file("cache.bin");
    std::vector<EmbeddingVector> cold;
    {
        ProviderSettings s;
        s.cache_file = file;
        auto p = make_provider(s);
        cold = p->embed_batch(std::vector<std::string>{"x", "y"});
    }
    auto cache = std::make_shared<EmbeddingCache>(file);
    CHECK(cache->size() == 2);
    EmbeddingProvider p{std::make_unique<LocalEmbeddingBackend>(42), cache};
    CHECK(p.embed_batch(std::vector<std::string>{"x", "y"}) == cold);
    CHECK(p.texts_fetched() == 0);

    // A torn trailing record is dropped on open.
    {
        std::ofstream f{file, std::ios::binary | std::ios::app};
        f << "partial";
    }
    EmbeddingCache again{file};
    CHECK(again.size() == 2);

    write_file(file, "garbage header");
    CHECK_THROWS_AS(EmbeddingCache{file}, IoError);
    std::filesystem::remove(file);
}

TEST_CASE("provider identity separates cache entries")
{
    auto cache = std::make_shared<EmbeddingCache>();
    EmbeddingProvider a{std::make_unique<LocalEmbeddingBackend>(1), cache};
    EmbeddingProvider b{std::make_unique<LocalEmbeddingBackend>(2), cache};
    CHECK(a.embed_text("same") != b.embed_text("same"));
}

TEST_CASE("remote backend against a local endpoint")
{
    FakeEndpoint ep;
    auto cfg = ep.config();
    cfg.batch_size = 2;
    EmbeddingProvider p{std::make_unique<RemoteEmbeddingBackend>(cfg)};
    const std::vector<std::string> texts{"u", "v", "w", "u"};
    const auto r = p.embed_batch(texts);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == LocalEmbeddingBackend::embed("u", 7));
    CHECK(r[2] == LocalEmbeddingBackend::embed("w", 7));
    CHECK(r[3] == r[0]);
    CHECK(p.backend_calls() == 2);
}

TEST_CASE("remote retries transient failures")
{
    FakeEndpoint ep;
    ep.fail_first = 2;
    RemoteEmbeddingBackend backend{ep.config()};
    const std::vector<std::string> one{"retry me"};
    const auto r = backend.fetch(one);
    CHECK(r.size() == 1);
    CHECK(ep.requests == 3);

    FakeEndpoint down;
    down.fail_first = 100;
    down.status_on_fail = 503;
    RemoteEmbeddingBackend failing{down.config()};
    try
    {
        (void)failing.fetch(one);
        FAIL("expected RemoteUnavailable");
    }
    catch (const RemoteUnavailable& e)
    {
        CHECK(std::string{e.what()}.find(text_hash("retry me")) != std::string::npos);
    }
    CHECK(down.requests == 3);
}

TEST_CASE("auth failures carry the text hash, never the credential")
{
    FakeEndpoint ep;
    EmbeddingProvider p{std::make_unique<RemoteEmbeddingBackend>(ep.config("sk-wrong-key-123"))};
    try
    {
        (void)p.embed_text("secret text");
        FAIL("expected AuthFailure");
    }
    catch (const AuthFailure& e)
    {
        const std::string what = e.what();
        CHECK(what.find(text_hash("secret text")) != std::string::npos);
        CHECK(what.find("sk-wrong-key-123") == std::string::npos);
        CHECK(what.find("secret text") == std::string::npos);
    }
    CHECK(ep.requests == 1);

    try
    {
        (void)p.embed_batch(std::vector<std::string>{"fine", "other"});
        FAIL("expected a batch error");
    }
    catch (const BatchEmbeddingError& e)
    {
        CHECK(e.kind() == "AuthFailure");
        CHECK(e.index() == 0);
    }
}

TEST_CASE("unreachable endpoint")
{
    RemoteEmbeddingConfig c;
    c.url = "http://127.0.0.1:1/v1/embeddings";
    c.max_attempts = 2;
    c.initial_backoff = std::chrono::milliseconds{1};
    c.timeout = std::chrono::seconds{2};
    RemoteEmbeddingBackend b{c};
    CHECK_THROWS_AS((void)b.fetch(std::vector<std::string>{"x"}), RemoteUnavailable);
    c.url = "no-scheme";
    CHECK_THROWS_AS(RemoteEmbeddingBackend{c}, InvalidArgument);
}

TEST_CASE("settings from the environment")
{
    setenv("VULNFUSE_EMBEDDING_PROVIDER", "remote", 1);
    setenv("VULNFUSE_EMBEDDING_API_KEY", "k-123", 1);
    setenv("VULNFUSE_EMBEDDING_SEED", "9", 1);
    const auto s = provider_settings_from_env();
    CHECK(s.kind == "remote");
    CHECK(s.remote.api_key == "k-123");
    CHECK(s.local_seed == 9);
    CHECK_FALSE(s.remote.url.empty());
    unsetenv("VULNFUSE_EMBEDDING_PROVIDER");
    unsetenv("VULNFUSE_EMBEDDING_API_KEY");
    unsetenv("VULNFUSE_EMBEDDING_SEED");

    ProviderSettings bad;
    bad.kind = "telepathy";
    CHECK_THROWS_AS((void)make_provider(bad), InvalidArgument);
}

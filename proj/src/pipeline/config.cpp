// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/util.hpp>

#include <json.hpp>

namespace vulnfuse::pipeline
{
namespace
{
using nlohmann::json;

CompileMode parse_compile_mode(const std::string& s)
{
    if (s == "missing")
        return CompileMode::Missing;
    if (s == "always")
        return CompileMode::Always;
    if (s == "never")
        return CompileMode::Never;
    throw ConfigError{"compile_mode must be missing, always or never"};
}

template <typename T>
void read(const json& j, const char* key, T& out)
{
    if (const auto it = j.find(key); it != j.end())
        out = it->get<T>();
}
}  // namespace

std::string_view to_string(CompileMode m) noexcept
{
    switch (m)
    {
    case CompileMode::Missing:
        return "missing";
    case CompileMode::Always:
        return "always";
    case CompileMode::Never:
        return "never";
    }
    return "?";
}

void apply_seed(PipelineConfig& cfg, uint64_t seed)
{
    cfg.split_seed = seed;
    cfg.model.seed = seed;
    cfg.hyper.seed = seed;
}

std::string PipelineConfig::to_json() const
{
    json variant_names = json::array();
    for (const auto v : variants)
        variant_names.push_back(model::to_string(v));
    json j{
        {"manifest", manifest.string()},
        {"workspace", workspace.string()},
        {"compiler",
            {
                {"command", compiler.command},
                {"version_hint", compiler.version_hint},
                {"optimize", compiler.optimize},
            }},
        {"compile_mode", to_string(compile_mode)},
        {"embedding",
            {
                {"provider", embedding.kind},
                {"local_seed", embedding.local_seed},
                {"url", embedding.remote.url},
                {"model", embedding.remote.model},
                {"max_in_flight", embedding.remote.max_in_flight},
                {"batch_size", embedding.remote.batch_size},
                {"cache_file", embedding.cache_file.string()},
            }},
        {"model", json::parse(model.to_json())},
        {"training",
            {
                {"batch_size", hyper.batch_size},
                {"learning_rate", hyper.learning_rate},
                {"epochs", hyper.epochs},
                {"seed", hyper.seed},
            }},
        {"split", {{"test_fraction", test_fraction}, {"seed", split_seed}}},
        {"ablation",
            {
                {"variants", variant_names},
                {"epoch_budgets", epoch_budgets},
                {"averaging", vulnfuse::to_string(averaging)},
            }},
        {"workers", workers},
        {"failure_threshold", failure_threshold},
    };
    return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(std::string_view text)
{
    return from_json(text, PipelineConfig{});
}

std::string PipelineConfig::hash() const
{
    return sha256_hex(to_json());
}

PipelineConfig PipelineConfig::from_json(std::string_view text, PipelineConfig c)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::exception& e)
    {
        throw ConfigError{std::string{"config is not valid JSON: "} + e.what()};
    }
    if (!j.is_object())
        throw ConfigError{"config must be a JSON object"};

    try
    {
        for (const auto& [key, value] : j.items())
        {
            if (key == "manifest")
                c.manifest = value.get<std::string>();
            else if (key == "workspace")
                c.workspace = value.get<std::string>();
            else if (key == "compiler")
            {
                read(value, "command", c.compiler.command);
                read(value, "version_hint", c.compiler.version_hint);
                read(value, "optimize", c.compiler.optimize);
                if (c.compiler.command.empty())
                    throw ConfigError{"compiler.command must not be empty"};
            }
            else if (key == "compile_mode")
                c.compile_mode = parse_compile_mode(value.get<std::string>());
            else if (key == "embedding")
            {
                read(value, "provider", c.embedding.kind);
                read(value, "local_seed", c.embedding.local_seed);
                read(value, "url", c.embedding.remote.url);
                read(value, "model", c.embedding.remote.model);
                read(value, "max_in_flight", c.embedding.remote.max_in_flight);
                read(value, "batch_size", c.embedding.remote.batch_size);
                std::string cache = c.embedding.cache_file.string();
                read(value, "cache_file", cache);
                c.embedding.cache_file = cache;
                if (value.contains("api_key"))
                    throw ConfigError{
                        "put the embedding API key in the environment, not the config file"};
            }
            else if (key == "model")
            {
                // Layer the given keys over the current model settings.
                json merged = json::parse(c.model.to_json());
                merged.update(value);
                c.model = model::ModelVariantConfig::from_json(merged.dump());
            }
            else if (key == "training")
            {
                read(value, "batch_size", c.hyper.batch_size);
                read(value, "learning_rate", c.hyper.learning_rate);
                read(value, "epochs", c.hyper.epochs);
                read(value, "seed", c.hyper.seed);
            }
            else if (key == "split")
            {
                read(value, "test_fraction", c.test_fraction);
                read(value, "seed", c.split_seed);
            }
            else if (key == "ablation")
            {
                if (value.contains("variants"))
                {
                    c.variants.clear();
                    for (const auto& name : value.at("variants"))
                    {
                        const auto v = model::parse_variant(name.get<std::string>());
                        if (!v)
                            throw ConfigError{"unknown variant " + name.dump()};
                        c.variants.push_back(*v);
                    }
                }
                read(value, "epoch_budgets", c.epoch_budgets);
                if (value.contains("averaging"))
                {
                    const auto a = parse_averaging(value.at("averaging").get<std::string>());
                    if (!a)
                        throw ConfigError{"averaging must be weighted or macro"};
                    c.averaging = *a;
                }
            }
            else if (key == "workers")
                c.workers = value.get<unsigned>();
            else if (key == "failure_threshold")
                c.failure_threshold = value.get<double>();
            else
                throw ConfigError{"unknown config key " + key};
        }
    }
    catch (const json::exception& e)
    {
        throw ConfigError{std::string{"config has a field of the wrong type: "} + e.what()};
    }
    return c;
}
}  // namespace vulnfuse::pipeline

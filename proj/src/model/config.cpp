// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/model/config.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace vulnfuse::model
{
namespace
{
using nlohmann::json;

bool iequals(std::string_view a, std::string_view b) noexcept
{
    return std::ranges::equal(a, b, [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) ==
               std::tolower(static_cast<unsigned char>(y));
    });
}

void check(bool ok, const char* field, const char* rule)
{
    if (!ok)
        throw ConfigError{std::string{field} + " " + rule};
}
}  // namespace

std::string_view to_string(Variant v) noexcept
{
    switch (v)
    {
    case Variant::BERT:
        return "BERT";
    case Variant::BiLSTM:
        return "BiLSTM";
    case Variant::GNN:
        return "GNN";
    case Variant::M1:
        return "M1";
    case Variant::M2:
        return "M2";
    case Variant::M3:
        return "M3";
    case Variant::VulnSense:
        return "VulnSense";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view s) noexcept
{
    for (const auto v : all_variants)
    {
        if (iequals(s, to_string(v)))
            return v;
    }
    return std::nullopt;
}

std::string_view to_string(EncoderPreset p) noexcept
{
    return p == EncoderPreset::TinyTest ? "tiny-test" : "pretrained-12-layer";
}

std::optional<EncoderPreset> parse_encoder_preset(std::string_view s) noexcept
{
    if (iequals(s, "tiny-test") || iequals(s, "tiny"))
        return EncoderPreset::TinyTest;
    if (iequals(s, "pretrained-12-layer") || iequals(s, "pretrained"))
        return EncoderPreset::Pretrained12Layer;
    return std::nullopt;
}

FeatureKinds required_features(Variant v) noexcept
{
    switch (v)
    {
    case Variant::BERT:
        return {.text = true};
    case Variant::BiLSTM:
        return {.opcodes = true};
    case Variant::GNN:
        return {.graph = true};
    case Variant::M1:
        return {.text = true, .opcodes = true};
    case Variant::M2:
        return {.text = true, .graph = true};
    case Variant::M3:
        return {.opcodes = true, .graph = true};
    case Variant::VulnSense:
        return {.text = true, .opcodes = true, .graph = true};
    }
    return {};
}

int ModelVariantConfig::fusion_input_dim() const noexcept
{
    const auto f = required_features(variant);
    return (f.text ? d_bert_out : 0) + (f.opcodes ? d_lstm_out : 0) + (f.graph ? d_gnn_out : 0);
}

void ModelVariantConfig::validate() const
{
    check(d_bert_out > 0, "d_bert_out", "must be positive");
    check(d_lstm_out > 0, "d_lstm_out", "must be positive");
    check(d_gnn_out > 0, "d_gnn_out", "must be positive");
    check(lstm_units.first > 0 && lstm_units.second > 0, "lstm_units", "must be positive");
    check(opcode_embed_dim > 0, "opcode_embed_dim", "must be positive");
    check(lstm_dense_units > 0, "lstm_dense_units", "must be positive");
    check(max_opcode_len > 0, "max_opcode_len", "must be positive");
    check(gnn_hidden_channels > 0, "gnn_hidden_channels", "must be positive");
    check(gnn_dense_units.first > 0 && gnn_dense_units.second > 0, "gnn_dense_units",
        "must be positive");
    check(node_feature_dim > 0, "node_feature_dim", "must be positive");
    check(conv_filters > 0, "conv_filters", "must be positive");
    check(conv_kernel > 0, "conv_kernel", "must be positive");
    check(fusion_dense_units > 0, "fusion_dense_units", "must be positive");
    check(num_classes == 3, "num_classes", "must be 3");
    check(dropout >= 0.0f && dropout < 1.0f, "dropout", "must be in [0, 1)");
    check(std::isfinite(gnn_bottleneck_bias), "gnn_bottleneck_bias", "must be finite");
    check(fusion_input_dim() >= conv_kernel, "fusion input", "must be at least the kernel size");
    if (encoder_preset == EncoderPreset::Pretrained12Layer && required_features(variant).text)
        check(!encoder_checkpoint.empty(), "encoder_checkpoint",
            "is required for the pretrained preset");
}

std::string ModelVariantConfig::to_json() const
{
    json j{
        {"variant", to_string(variant)},
        {"d_bert_out", d_bert_out},
        {"d_lstm_out", d_lstm_out},
        {"d_gnn_out", d_gnn_out},
        {"lstm_units", {lstm_units.first, lstm_units.second}},
        {"opcode_embed_dim", opcode_embed_dim},
        {"lstm_dense_units", lstm_dense_units},
        {"max_opcode_len", max_opcode_len},
        {"gnn_hidden_channels", gnn_hidden_channels},
        {"gnn_dense_units", {gnn_dense_units.first, gnn_dense_units.second}},
        {"gnn_bottleneck_bias", gnn_bottleneck_bias},
        {"node_feature_dim", node_feature_dim},
        {"conv_filters", conv_filters},
        {"conv_kernel", conv_kernel},
        {"fusion_dense_units", fusion_dense_units},
        {"encoder_preset", to_string(encoder_preset)},
        {"encoder_checkpoint", encoder_checkpoint.string()},
        {"train_encoder", train_encoder ? json(*train_encoder) : json(nullptr)},
        {"num_classes", num_classes},
        {"dropout", dropout},
        {"seed", seed},
    };
    return j.dump(2);
}

ModelVariantConfig ModelVariantConfig::from_json(std::string_view text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::exception& e)
    {
        throw ConfigError{std::string{"model config is not valid JSON: "} + e.what()};
    }
    if (!j.is_object())
        throw ConfigError{"model config must be a JSON object"};

    ModelVariantConfig c;
    try
    {
        for (const auto& [key, value] : j.items())
        {
            if (key == "variant")
            {
                const auto v = parse_variant(value.get<std::string>());
                if (!v)
                    throw ConfigError{"unknown variant " + value.dump()};
                c.variant = *v;
            }
            else if (key == "encoder_preset")
            {
                const auto p = parse_encoder_preset(value.get<std::string>());
                if (!p)
                    throw ConfigError{"unknown encoder_preset " + value.dump()};
                c.encoder_preset = *p;
            }
            else if (key == "d_bert_out")
                c.d_bert_out = value.get<int>();
            else if (key == "d_lstm_out")
                c.d_lstm_out = value.get<int>();
            else if (key == "d_gnn_out")
                c.d_gnn_out = value.get<int>();
            else if (key == "lstm_units")
                c.lstm_units = {value.at(0).get<int>(), value.at(1).get<int>()};
            else if (key == "opcode_embed_dim")
                c.opcode_embed_dim = value.get<int>();
            else if (key == "lstm_dense_units")
                c.lstm_dense_units = value.get<int>();
            else if (key == "max_opcode_len")
                c.max_opcode_len = value.get<int>();
            else if (key == "gnn_hidden_channels")
                c.gnn_hidden_channels = value.get<int>();
            else if (key == "gnn_dense_units")
                c.gnn_dense_units = {value.at(0).get<int>(), value.at(1).get<int>()};
            else if (key == "gnn_bottleneck_bias")
                c.gnn_bottleneck_bias = value.get<float>();
            else if (key == "node_feature_dim")
                c.node_feature_dim = value.get<int>();
            else if (key == "conv_filters")
                c.conv_filters = value.get<int>();
            else if (key == "conv_kernel")
                c.conv_kernel = value.get<int>();
            else if (key == "fusion_dense_units")
                c.fusion_dense_units = value.get<int>();
            else if (key == "encoder_checkpoint")
                c.encoder_checkpoint = value.get<std::string>();
            else if (key == "train_encoder")
            {
                if (!value.is_null())
                    c.train_encoder = value.get<bool>();
            }
            else if (key == "num_classes")
                c.num_classes = value.get<int>();
            else if (key == "dropout")
                c.dropout = value.get<float>();
            else if (key == "seed")
                c.seed = value.get<uint64_t>();
            else
                throw ConfigError{"unknown model config key " + key};
        }
    }
    catch (const json::exception& e)
    {
        throw ConfigError{std::string{"model config has a field of the wrong type: "} + e.what()};
    }
    return c;
}
}  // namespace vulnfuse::model

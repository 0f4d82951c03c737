// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace vulnfuse::model
{
enum class Variant : uint8_t
{
    BERT,
    BiLSTM,
    GNN,
    M1,  ///< text + opcodes
    M2,  ///< text + graph
    M3,  ///< opcodes + graph
    VulnSense,
};

inline constexpr std::array all_variants{Variant::BERT, Variant::BiLSTM, Variant::GNN, Variant::M1,
    Variant::M2, Variant::M3, Variant::VulnSense};

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
/// Case-insensitive.
[[nodiscard]] std::optional<Variant> parse_variant(std::string_view s) noexcept;

enum class EncoderPreset : uint8_t
{
    Pretrained12Layer,
    TinyTest,
};

[[nodiscard]] std::string_view to_string(EncoderPreset p) noexcept;
[[nodiscard]] std::optional<EncoderPreset> parse_encoder_preset(std::string_view s) noexcept;

/// Which inputs a variant consumes.
struct FeatureKinds
{
    bool text = false;
    bool opcodes = false;
    bool graph = false;

    friend bool operator==(const FeatureKinds&, const FeatureKinds&) = default;
};

[[nodiscard]] FeatureKinds required_features(Variant v) noexcept;

struct ModelVariantConfig
{
    Variant variant = Variant::VulnSense;
    int d_bert_out = 66;
    int d_lstm_out = 64;
    int d_gnn_out = 64;
    std::pair<int, int> lstm_units{128, 64};
    int opcode_embed_dim = 200;
    /// Width of the per-timestep dense layer between the two recurrent layers.
    int lstm_dense_units = 128;
    int max_opcode_len = 200;
    int gnn_hidden_channels = 64;
    /// Units of the two dense layers after graph pooling.
    std::pair<int, int> gnn_dense_units{3, 64};
    /// Initial bias of the first dense layer after graph pooling.
    float gnn_bottleneck_bias = 0.05f;
    int node_feature_dim = 1536;
    int conv_filters = 64;
    int conv_kernel = 3;
    int fusion_dense_units = 32;
    EncoderPreset encoder_preset = EncoderPreset::TinyTest;
    /// Directory holding config.json, vocab.txt and weights.bin for the pretrained preset.
    std::filesystem::path encoder_checkpoint;
    /// Unset: full training for tiny-test, head-only for the pretrained preset.
    std::optional<bool> train_encoder;
    int num_classes = 3;
    float dropout = 0.03f;
    uint64_t seed = 42;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    [[nodiscard]] bool encoder_trainable() const noexcept
    {
        return train_encoder.value_or(encoder_preset == EncoderPreset::TinyTest);
    }

    /// Sum of the active branch output widths.
    [[nodiscard]] int fusion_input_dim() const noexcept;

    [[nodiscard]] std::string to_json() const;
    /// Missing keys keep their defaults; unknown keys are rejected.
    [[nodiscard]] static ModelVariantConfig from_json(std::string_view text);
};
}  // namespace vulnfuse::model

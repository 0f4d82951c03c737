// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/nn/layers.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vulnfuse::model
{
using TokenIds = std::vector<int32_t>;

/// Splits on whitespace and isolates ASCII punctuation; optionally lowercases ASCII.
[[nodiscard]] std::vector<std::string> basic_tokenize(std::string_view text, bool lowercase);

class Tokenizer
{
public:
    virtual ~Tokenizer() = default;

    [[nodiscard]] virtual int32_t cls_id() const noexcept = 0;
    [[nodiscard]] virtual int32_t sep_id() const noexcept = 0;
    [[nodiscard]] virtual int32_t pad_id() const noexcept = 0;
    [[nodiscard]] virtual size_t vocab_size() const noexcept = 0;

    /// Word pieces for `text` without special tokens.
    [[nodiscard]] virtual TokenIds tokenize(std::string_view text) const = 0;

    /// [CLS] pieces [SEP], truncated so the result has at most `max_tokens` ids.
    [[nodiscard]] TokenIds encode(std::string_view text, size_t max_tokens) const;
};

/// Vocabulary-free tokenizer for the from-scratch encoder: each word maps to a bucket
/// chosen by FNV-1a. Ids 0-3 are PAD, UNK, CLS, SEP.
class HashingTokenizer final : public Tokenizer
{
public:
    explicit HashingTokenizer(size_t vocab_size);

    [[nodiscard]] int32_t cls_id() const noexcept override { return 2; }
    [[nodiscard]] int32_t sep_id() const noexcept override { return 3; }
    [[nodiscard]] int32_t pad_id() const noexcept override { return 0; }
    [[nodiscard]] size_t vocab_size() const noexcept override { return vocab_size_; }
    [[nodiscard]] TokenIds tokenize(std::string_view text) const override;

private:
    size_t vocab_size_;
};

/// Greedy longest-match-first WordPiece over a vocab.txt (one token per line).
class WordPieceTokenizer final : public Tokenizer
{
public:
    WordPieceTokenizer(const std::filesystem::path& vocab_file, bool lowercase);

    [[nodiscard]] int32_t cls_id() const noexcept override { return cls_; }
    [[nodiscard]] int32_t sep_id() const noexcept override { return sep_; }
    [[nodiscard]] int32_t pad_id() const noexcept override { return pad_; }
    [[nodiscard]] size_t vocab_size() const noexcept override { return vocab_.size(); }
    [[nodiscard]] TokenIds tokenize(std::string_view text) const override;

private:
    std::unordered_map<std::string, int32_t> vocab_;
    bool lowercase_;
    int32_t pad_ = 0;
    int32_t unk_ = 0;
    int32_t cls_ = 0;
    int32_t sep_ = 0;
};

struct EncoderConfig
{
    int vocab_size = 8192;
    int hidden = 128;
    int layers = 2;
    int heads = 2;
    int intermediate = 512;
    int max_positions = 128;
    int type_vocab_size = 2;
    float layer_norm_eps = 1e-12f;
    float hidden_dropout = 0.1f;
    bool lowercase = true;

    [[nodiscard]] static EncoderConfig tiny_test();
    /// Reads a BERT-style config.json (hidden_size, num_hidden_layers, ...).
    [[nodiscard]] static EncoderConfig from_json_file(const std::filesystem::path& file);
};

/// Post-LN bidirectional transformer encoder with learned positions and a tanh pooler
/// over the first token.
class TextEncoder
{
public:
    TextEncoder(const EncoderConfig& cfg, std::mt19937_64& rng);

    /// The from-scratch preset, hashing tokenizer included.
    [[nodiscard]] static std::unique_ptr<TextEncoder> tiny(std::mt19937_64& rng);

    /// Loads config.json, vocab.txt and weights.bin from `dir`. Throws
    /// CheckpointUnavailable when any of them is missing or unreadable.
    [[nodiscard]] static std::unique_ptr<TextEncoder> load_pretrained(
        const std::filesystem::path& dir,
        std::mt19937_64& rng);

    /// Pooled representation, B x hidden. Sequences are right-padded to the longest one.
    [[nodiscard]] nn::Var forward(std::span<const TokenIds> batch,
        bool training,
        std::mt19937_64& rng) const;

    [[nodiscard]] TokenIds encode(std::string_view text) const
    {
        return tokenizer_->encode(text, size_t(cfg_.max_positions));
    }

    [[nodiscard]] const EncoderConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] nn::Index width() const noexcept { return cfg_.hidden; }
    void collect(const std::string& prefix, nn::NamedParams& out) const;

private:
    struct Layer
    {
        nn::Dense query, key, value, attn_out;
        nn::LayerNorm attn_norm;
        nn::Dense ffn_in, ffn_out;
        nn::LayerNorm ffn_norm;
    };

    EncoderConfig cfg_;
    std::unique_ptr<Tokenizer> tokenizer_;
    nn::Embedding word_;
    nn::Embedding position_;
    nn::Embedding token_type_;
    nn::LayerNorm embed_norm_;
    std::vector<Layer> layers_;
    nn::Dense pooler_;
};
}  // namespace vulnfuse::model

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/model/text_encoder.hpp>
#include <vulnfuse/nn/optim.hpp>
#include <vulnfuse/util.hpp>

#include <json.hpp>

namespace vulnfuse::model
{
using nn::Activation;
using nn::Index;
using nn::Var;

EncoderConfig EncoderConfig::tiny_test()
{
    return {};
}

EncoderConfig EncoderConfig::from_json_file(const std::filesystem::path& file)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(read_file(file));
    }
    catch (const std::exception& e)
    {
        throw CheckpointUnavailable{file.string() + ": " + e.what()};
    }
    EncoderConfig c;
    c.vocab_size = j.value("vocab_size", 30522);
    c.hidden = j.value("hidden_size", 768);
    c.layers = j.value("num_hidden_layers", 12);
    c.heads = j.value("num_attention_heads", 12);
    c.intermediate = j.value("intermediate_size", 3072);
    c.max_positions = j.value("max_position_embeddings", 512);
    c.type_vocab_size = j.value("type_vocab_size", 2);
    c.layer_norm_eps = j.value("layer_norm_eps", 1e-12f);
    c.hidden_dropout = j.value("hidden_dropout_prob", 0.1f);
    c.lowercase = j.value("do_lower_case", true);
    if (c.hidden <= 0 || c.heads <= 0 || c.hidden % c.heads != 0 || c.layers <= 0)
        throw CheckpointUnavailable{file.string() + ": inconsistent encoder dimensions"};
    return c;
}

TextEncoder::TextEncoder(const EncoderConfig& cfg, std::mt19937_64& rng)
    : cfg_{cfg},
      word_{cfg.vocab_size, cfg.hidden, nn::normal(cfg.vocab_size, cfg.hidden, 0.02f, rng)},
      position_{
          cfg.max_positions, cfg.hidden, nn::normal(cfg.max_positions, cfg.hidden, 0.02f, rng)},
      token_type_{
          cfg.type_vocab_size, cfg.hidden, nn::normal(cfg.type_vocab_size, cfg.hidden, 0.02f, rng)},
      embed_norm_{cfg.hidden, cfg.layer_norm_eps}
{
    if (cfg.hidden % cfg.heads != 0)
        throw ConfigError{"encoder hidden size must be divisible by the head count"};
    const auto dense = [&](Index in, Index out, Activation act) {
        nn::Dense d{in, out, act, rng};
        d.w.mutable_value() = nn::normal(in, out, 0.02f, rng);
        return d;
    };
    for (int i = 0; i < cfg.layers; ++i)
    {
        layers_.push_back(Layer{
            .query = dense(cfg.hidden, cfg.hidden, Activation::None),
            .key = dense(cfg.hidden, cfg.hidden, Activation::None),
            .value = dense(cfg.hidden, cfg.hidden, Activation::None),
            .attn_out = dense(cfg.hidden, cfg.hidden, Activation::None),
            .attn_norm = {cfg.hidden, cfg.layer_norm_eps},
            .ffn_in = dense(cfg.hidden, cfg.intermediate, Activation::Gelu),
            .ffn_out = dense(cfg.intermediate, cfg.hidden, Activation::None),
            .ffn_norm = {cfg.hidden, cfg.layer_norm_eps},
        });
    }
    pooler_ = dense(cfg.hidden, cfg.hidden, Activation::Tanh);
}

std::unique_ptr<TextEncoder> TextEncoder::tiny(std::mt19937_64& rng)
{
    auto enc = std::make_unique<TextEncoder>(EncoderConfig::tiny_test(), rng);
    enc->tokenizer_ = std::make_unique<HashingTokenizer>(size_t(enc->cfg_.vocab_size));
    return enc;
}

std::unique_ptr<TextEncoder> TextEncoder::load_pretrained(const std::filesystem::path& dir,
    std::mt19937_64& rng)
{
    for (const char* name : {"config.json", "vocab.txt", "weights.bin"})
    {
        if (!std::filesystem::is_regular_file(dir / name))
            throw CheckpointUnavailable{(dir / name).string() + " not found"};
    }
    const auto cfg = EncoderConfig::from_json_file(dir / "config.json");
    auto enc = std::make_unique<TextEncoder>(cfg, rng);
    enc->tokenizer_ = std::make_unique<WordPieceTokenizer>(dir / "vocab.txt", cfg.lowercase);
    if (enc->tokenizer_->vocab_size() != size_t(cfg.vocab_size))
        throw CheckpointUnavailable{dir.string() + ": vocab.txt size differs from config.json"};
    nn::NamedParams params;
    enc->collect("encoder", params);
    try
    {
        nn::load_weights(dir / "weights.bin", params);
    }
    catch (const CheckpointMismatch& e)
    {
        throw CheckpointUnavailable{e.what()};
    }
    return enc;
}

Var TextEncoder::forward(std::span<const TokenIds> batch, bool training, std::mt19937_64& rng) const
{
    const Index b_count = Index(batch.size());
    if (b_count == 0)
        throw InvalidArgument{"empty text batch"};
    Index time = 1;
    for (const auto& seq : batch)
        time = std::max(time, Index(seq.size()));
    if (time > cfg_.max_positions)
        throw DimMismatch{"token sequence longer than the encoder's position table"};

    std::vector<int32_t> ids(size_t(b_count * time), tokenizer_ ? tokenizer_->pad_id() : 0);
    std::vector<int32_t> positions(ids.size());
    std::vector<int32_t> lengths(static_cast<size_t>(b_count));
    for (Index b = 0; b < b_count; ++b)
    {
        const auto& seq = batch[size_t(b)];
        std::copy(seq.begin(), seq.end(), ids.begin() + b * time);
        for (Index t = 0; t < time; ++t)
            positions[size_t(b * time + t)] = int32_t(t);
        lengths[size_t(b)] = int32_t(std::max<size_t>(seq.size(), 1));
    }
    const std::vector<int32_t> types(ids.size(), 0);

    Var h = nn::add(nn::add(word_(ids), position_(positions)), token_type_(types));
    h = nn::dropout(embed_norm_(h), cfg_.hidden_dropout, rng, training);
    for (const auto& layer : layers_)
    {
        Var ctx = nn::self_attention(
            layer.query(h), layer.key(h), layer.value(h), b_count, time, cfg_.heads, lengths);
        Var attn = nn::dropout(layer.attn_out(ctx), cfg_.hidden_dropout, rng, training);
        h = layer.attn_norm(nn::add(h, attn));
        Var ffn = nn::dropout(layer.ffn_out(layer.ffn_in(h)), cfg_.hidden_dropout, rng, training);
        h = layer.ffn_norm(nn::add(h, ffn));
    }
    std::vector<Index> cls_rows(static_cast<size_t>(b_count));
    for (Index b = 0; b < b_count; ++b)
        cls_rows[size_t(b)] = b * time;
    return pooler_(nn::select_rows(h, std::move(cls_rows)));
}

void TextEncoder::collect(const std::string& prefix, nn::NamedParams& out) const
{
    word_.collect(prefix + ".embeddings.word", out);
    position_.collect(prefix + ".embeddings.position", out);
    token_type_.collect(prefix + ".embeddings.token_type", out);
    embed_norm_.collect(prefix + ".embeddings.norm", out);
    for (size_t i = 0; i < layers_.size(); ++i)
    {
        const auto p = prefix + ".layer" + std::to_string(i);
        const auto& l = layers_[i];
        l.query.collect(p + ".query", out);
        l.key.collect(p + ".key", out);
        l.value.collect(p + ".value", out);
        l.attn_out.collect(p + ".attn_out", out);
        l.attn_norm.collect(p + ".attn_norm", out);
        l.ffn_in.collect(p + ".ffn_in", out);
        l.ffn_out.collect(p + ".ffn_out", out);
        l.ffn_norm.collect(p + ".ffn_norm", out);
    }
    pooler_.collect(prefix + ".pooler", out);
}
}  // namespace vulnfuse::model

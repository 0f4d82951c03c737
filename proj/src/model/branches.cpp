// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/model/model.hpp>
#include <vulnfuse/util.hpp>

#include <numeric>

namespace vulnfuse::model
{
using nn::Activation;
using nn::Index;
using nn::Matrix;
using nn::Var;

void check_features(const Sample& s, const FeatureKinds& needs)
{
    const auto missing = [&](const char* kind) {
        throw MissingFeature{"record " + s.id + " lacks " + kind};
    };
    if (needs.text && !s.text)
        missing("text");
    if (needs.opcodes && !s.opcode_ids)
        missing("opcode_ids");
    if (needs.graph && !s.graph)
        missing("graph");
}

TextBranch::TextBranch(const ModelVariantConfig& cfg, std::mt19937_64& rng)
    : encoder_{cfg.encoder_preset == EncoderPreset::TinyTest
                   ? TextEncoder::tiny(rng)
                   : TextEncoder::load_pretrained(cfg.encoder_checkpoint, rng)},
      trainable_{cfg.encoder_trainable()},
      dropout_{cfg.dropout},
      head_{encoder_->width(), cfg.d_bert_out, Activation::Relu, rng}
{}

Matrix TextBranch::frozen_pooled(SampleBatch batch) const
{
    Matrix pooled(Index(batch.size()), encoder_->width());
    std::vector<std::string> keys(batch.size());
    std::vector<size_t> todo;
    {
        std::lock_guard lock{cache_mutex_};
        for (size_t i = 0; i < batch.size(); ++i)
        {
            keys[i] = sha256_hex(*batch[i]->text);
            if (const auto it = cache_.find(keys[i]); it != cache_.end())
                pooled.row(Index(i)) = it->second;
            else
                todo.push_back(i);
        }
    }
    if (todo.empty())
        return pooled;

    const nn::NoGradGuard no_grad;
    std::mt19937_64 unused_rng{0};
    std::vector<TokenIds> ids;
    for (const size_t i : todo)
        ids.push_back(encoder_->encode(*batch[i]->text));
    const Matrix fresh = encoder_->forward(ids, false, unused_rng).value();
    std::lock_guard lock{cache_mutex_};
    for (size_t k = 0; k < todo.size(); ++k)
    {
        pooled.row(Index(todo[k])) = fresh.row(Index(k));
        cache_.emplace(keys[todo[k]], fresh.row(Index(k)));
    }
    return pooled;
}

Var TextBranch::operator()(SampleBatch batch, bool training, std::mt19937_64& rng) const
{
    Var pooled;
    if (trainable_)
    {
        std::vector<TokenIds> ids;
        ids.reserve(batch.size());
        for (const auto* s : batch)
            ids.push_back(encoder_->encode(*s->text));
        pooled = encoder_->forward(ids, training, rng);
    }
    else
        pooled = nn::constant(frozen_pooled(batch));
    return head_(nn::dropout(pooled, dropout_, rng, training));
}

void TextBranch::collect(const std::string& prefix, nn::NamedParams& out) const
{
    if (trainable_)
        encoder_->collect(prefix + ".encoder", out);
    head_.collect(prefix + ".head", out);
}

OpcodeBranch::OpcodeBranch(const ModelVariantConfig& cfg,
    size_t embedding_rows,
    std::mt19937_64& rng)
    : max_len_{cfg.max_opcode_len},
      dropout_{cfg.dropout},
      embed_{Index(embedding_rows), cfg.opcode_embed_dim,
          nn::uniform(Index(embedding_rows), cfg.opcode_embed_dim, 0.05f, rng)},
      lstm1_{cfg.opcode_embed_dim, cfg.lstm_units.first, rng},
      mid_{2 * cfg.lstm_units.first, cfg.lstm_dense_units, Activation::None, rng},
      lstm2_{cfg.lstm_dense_units, cfg.lstm_units.second, rng},
      out_{2 * cfg.lstm_units.second, cfg.d_lstm_out, Activation::Relu, rng}
{}

Var OpcodeBranch::operator()(SampleBatch batch, bool training, std::mt19937_64& rng) const
{
    const Index b_count = Index(batch.size());
    std::vector<int32_t> ids(size_t(b_count * max_len_), evm::pad_id);
    for (Index b = 0; b < b_count; ++b)
    {
        const auto& seq = *batch[size_t(b)]->opcode_ids;
        const auto n = std::min<size_t>(seq.size(), size_t(max_len_));
        std::copy_n(seq.begin(), n, ids.begin() + b * max_len_);
    }
    Var h = lstm1_.sequence(embed_(ids), b_count, max_len_);
    h = nn::dropout(mid_(h), dropout_, rng, training);
    return out_(lstm2_.last(h, b_count, max_len_));
}

void OpcodeBranch::collect(const std::string& prefix, nn::NamedParams& out) const
{
    embed_.collect(prefix + ".embedding", out);
    lstm1_.collect(prefix + ".lstm1", out);
    mid_.collect(prefix + ".dense", out);
    lstm2_.collect(prefix + ".lstm2", out);
    out_.collect(prefix + ".out", out);
}

GraphBranch::GraphBranch(const ModelVariantConfig& cfg, std::mt19937_64& rng)
    : feature_dim_{cfg.node_feature_dim},
      conv1_{cfg.node_feature_dim, cfg.gnn_hidden_channels, Activation::Relu, rng},
      conv2_{cfg.gnn_hidden_channels, cfg.gnn_hidden_channels, Activation::Relu, rng},
      conv3_{cfg.gnn_hidden_channels, cfg.gnn_hidden_channels, Activation::None, rng},
      dense1_{cfg.gnn_hidden_channels, cfg.gnn_dense_units.first, Activation::Relu, rng},
      dense2_{cfg.gnn_dense_units.first, cfg.gnn_dense_units.second, Activation::Relu, rng}
{
    if (cfg.gnn_dense_units.second != cfg.d_gnn_out)
        throw ConfigError{"gnn_dense_units[1] must equal d_gnn_out"};
    dense1_.b.mutable_value().setConstant(cfg.gnn_bottleneck_bias);
}

Var GraphBranch::pooled(SampleBatch batch) const
{
    size_t total = 0;
    for (const auto* s : batch)
    {
        const auto& g = *s->graph;
        if (g.feature_dim != size_t(feature_dim_))
        {
            throw FeatureWidthMismatch{"record " + s->id + ": node features have width " +
                                       std::to_string(g.feature_dim) + ", expected " +
                                       std::to_string(feature_dim_)};
        }
        if (g.num_nodes == 0 || g.node_features.size() != g.num_nodes * g.feature_dim ||
            g.edge_src.size() != g.edge_dst.size())
            throw FeatureWidthMismatch{"record " + s->id + ": malformed graph tensors"};
        for (size_t e = 0; e < g.num_edges(); ++e)
        {
            if (g.edge_src[e] < 0 || size_t(g.edge_src[e]) >= g.num_nodes || g.edge_dst[e] < 0 ||
                size_t(g.edge_dst[e]) >= g.num_nodes)
                throw FeatureWidthMismatch{"record " + s->id + ": edge endpoint out of range"};
        }
        total += g.num_nodes;
    }

    Matrix x(Index(total), feature_dim_);
    std::vector<int32_t> src, dst, segment(total);
    int32_t offset = 0;
    for (size_t b = 0; b < batch.size(); ++b)
    {
        const auto& g = *batch[b]->graph;
        x.middleRows(offset, Index(g.num_nodes)) =
            Eigen::Map<const Matrix>(g.node_features.data(), Index(g.num_nodes), feature_dim_);
        for (size_t e = 0; e < g.num_edges(); ++e)
        {
            src.push_back(offset + g.edge_src[e]);
            dst.push_back(offset + g.edge_dst[e]);
        }
        std::fill_n(segment.begin() + offset, g.num_nodes, int32_t(b));
        offset += int32_t(g.num_nodes);
    }
    const auto adj = nn::SparseAdjacency::gcn_normalized(Index(total), src, dst);
    Var h = conv1_(nn::constant(std::move(x)), adj);
    h = conv2_(h, adj);
    h = conv3_(h, adj);
    return nn::segment_mean(h, segment, Index(batch.size()));
}

Var GraphBranch::operator()(SampleBatch batch) const
{
    return dense2_(dense1_(pooled(batch)));
}

void GraphBranch::collect(const std::string& prefix, nn::NamedParams& out) const
{
    conv1_.collect(prefix + ".conv1", out);
    conv2_.collect(prefix + ".conv2", out);
    conv3_.collect(prefix + ".conv3", out);
    dense1_.collect(prefix + ".dense1", out);
    dense2_.collect(prefix + ".dense2", out);
}

FusionHead::FusionHead(std::span<const int> active_dims,
    const ModelVariantConfig& cfg,
    std::mt19937_64& rng)
    : length_{std::accumulate(active_dims.begin(), active_dims.end(), Index{0})},
      kernel_{cfg.conv_kernel}
{
    if (active_dims.empty() || length_ < kernel_)
        throw DimMismatch{"fusion input length " + std::to_string(length_) +
                          " is shorter than the convolution kernel " + std::to_string(kernel_)};
    conv_ = nn::Dense{kernel_, cfg.conv_filters, Activation::Relu, rng};
    dense_ = nn::Dense{
        (length_ - kernel_ + 1) * cfg.conv_filters, cfg.fusion_dense_units, Activation::Relu, rng};
    logits_ = nn::Dense{cfg.fusion_dense_units, cfg.num_classes, Activation::None, rng};
}

Var FusionHead::operator()(std::span<const Var> branch_outputs) const
{
    Var x = branch_outputs.size() == 1 ? branch_outputs.front() : nn::concat_cols(branch_outputs);
    if (x.cols() != length_)
    {
        throw DimMismatch{"fusion head expects " + std::to_string(length_) +
                          " concatenated features, got " + std::to_string(x.cols())};
    }
    const Index batch = x.rows();
    Var feature_maps = conv_(nn::unfold1d(x, kernel_));
    Var flat = nn::reshape(feature_maps, batch, feature_maps.value().size() / batch);
    return logits_(dense_(flat));
}

void FusionHead::collect(const std::string& prefix, nn::NamedParams& out) const
{
    conv_.collect(prefix + ".conv", out);
    dense_.collect(prefix + ".dense", out);
    logits_.collect(prefix + ".logits", out);
}
}  // namespace vulnfuse::model

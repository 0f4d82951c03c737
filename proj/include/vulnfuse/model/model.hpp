// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/evm.hpp>
#include <vulnfuse/model/config.hpp>
#include <vulnfuse/model/text_encoder.hpp>

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vulnfuse::model
{
/// One contract's model inputs. Absent features stay disengaged.
struct Sample
{
    std::string id;
    std::optional<std::string> text;
    std::optional<std::vector<int32_t>> opcode_ids;
    std::optional<GraphTensors> graph;
    /// Class index, or -1 when unknown.
    int32_t label = -1;
};

using SampleBatch = std::span<const Sample* const>;

/// Throws MissingFeature naming the sample and the first absent kind `needs` lists.
void check_features(const Sample& s, const FeatureKinds& needs);

/// Clean source text -> d_bert_out. With a frozen encoder the pooled vectors are cached
/// per distinct text.
class TextBranch
{
public:
    TextBranch(const ModelVariantConfig& cfg, std::mt19937_64& rng);

    [[nodiscard]] nn::Var operator()(SampleBatch batch, bool training, std::mt19937_64& rng) const;
    void collect(const std::string& prefix, nn::NamedParams& out) const;
    [[nodiscard]] nn::Index pooled_width() const noexcept { return encoder_->width(); }
    [[nodiscard]] const TextEncoder& encoder() const noexcept { return *encoder_; }

private:
    [[nodiscard]] nn::Matrix frozen_pooled(SampleBatch batch) const;

    std::unique_ptr<TextEncoder> encoder_;
    bool trainable_;
    float dropout_;
    nn::Dense head_;
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, nn::RowVector> cache_;
};

/// Opcode id sequence -> d_lstm_out through two bidirectional recurrent layers.
class OpcodeBranch
{
public:
    OpcodeBranch(const ModelVariantConfig& cfg, size_t embedding_rows, std::mt19937_64& rng);

    [[nodiscard]] nn::Var operator()(SampleBatch batch, bool training, std::mt19937_64& rng) const;
    void collect(const std::string& prefix, nn::NamedParams& out) const;

private:
    nn::Index max_len_;
    float dropout_;
    nn::Embedding embed_;
    nn::BiLstm lstm1_;
    nn::Dense mid_;
    nn::BiLstm lstm2_;
    nn::Dense out_;
};

/// CFG node embeddings -> d_gnn_out: three graph convolutions, mean pooling, two dense layers.
class GraphBranch
{
public:
    GraphBranch(const ModelVariantConfig& cfg, std::mt19937_64& rng);

    [[nodiscard]] nn::Var operator()(SampleBatch batch) const;
    /// Graph-level mean of the last convolution, before the dense layers.
    [[nodiscard]] nn::Var pooled(SampleBatch batch) const;
    void collect(const std::string& prefix, nn::NamedParams& out) const;

private:
    nn::Index feature_dim_;
    nn::GcnConv conv1_, conv2_, conv3_;
    nn::Dense dense1_, dense2_;
};

/// Concatenated branch outputs -> class logits via a 1-D convolution stack.
class FusionHead
{
public:
    FusionHead(std::span<const int> active_dims,
        const ModelVariantConfig& cfg,
        std::mt19937_64& rng);

    [[nodiscard]] nn::Var operator()(std::span<const nn::Var> branch_outputs) const;
    [[nodiscard]] nn::Index input_length() const noexcept { return length_; }
    void collect(const std::string& prefix, nn::NamedParams& out) const;

private:
    nn::Index length_;
    nn::Index kernel_;
    nn::Dense conv_;
    nn::Dense dense_;
    nn::Dense logits_;
};

class Model
{
public:
    /// Throws ConfigError, EmptyVocab (opcode variants need a fitted vocabulary) and
    /// CheckpointUnavailable.
    Model(ModelVariantConfig cfg, evm::OpcodeVocab vocab);
    ~Model();
    Model(const Model&) = delete;
    Model& operator=(const Model&) = delete;

    /// Unnormalized class scores, B x 3.
    [[nodiscard]] nn::Var logits(SampleBatch batch, bool training);
    /// Softmax probabilities without recording gradients, B x 3.
    [[nodiscard]] nn::Matrix predict_proba(SampleBatch batch) const;

    /// Trainable tensors, named "<branch>.<layer>.<tensor>" with branch in
    /// {text, opcode, graph, head}.
    [[nodiscard]] const nn::NamedParams& parameters() const noexcept { return params_; }
    /// Every tensor that is saved, frozen encoder weights included.
    [[nodiscard]] nn::NamedParams state() const;

    [[nodiscard]] const ModelVariantConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const evm::OpcodeVocab& vocab() const noexcept { return vocab_; }
    [[nodiscard]] FeatureKinds required() const noexcept { return required_features(cfg_.variant); }
    [[nodiscard]] nn::Index fusion_input_length() const noexcept { return head_.input_length(); }

    /// Branch outputs before fusion, in text/opcode/graph order.
    [[nodiscard]] std::vector<nn::Var> branch_outputs(SampleBatch batch, bool training);

    /// Writes config.json, vocab.json and weights.bin into `dir`.
    void save(const std::filesystem::path& dir) const;
    /// Throws CheckpointMismatch when the directory is missing or inconsistent.
    [[nodiscard]] static std::unique_ptr<Model> load(const std::filesystem::path& dir);

private:
    [[nodiscard]] std::vector<nn::Var> branch_outputs_with(SampleBatch batch,
        bool training,
        std::mt19937_64& rng) const;

    ModelVariantConfig cfg_;
    evm::OpcodeVocab vocab_;
    std::mt19937_64 rng_;
    std::unique_ptr<TextBranch> text_;
    std::unique_ptr<OpcodeBranch> opcode_;
    std::unique_ptr<GraphBranch> graph_;
    FusionHead head_;
    nn::NamedParams params_;
};
}  // namespace vulnfuse::model

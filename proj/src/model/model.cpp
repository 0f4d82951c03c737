// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/model/model.hpp>
#include <vulnfuse/nn/optim.hpp>
#include <vulnfuse/util.hpp>

#include <json.hpp>

namespace vulnfuse::model
{
namespace
{
constexpr std::string_view checkpoint_format = "vulnfuse-model/1";

std::vector<int> active_dims(const ModelVariantConfig& cfg)
{
    const auto f = required_features(cfg.variant);
    std::vector<int> dims;
    if (f.text)
        dims.push_back(cfg.d_bert_out);
    if (f.opcodes)
        dims.push_back(cfg.d_lstm_out);
    if (f.graph)
        dims.push_back(cfg.d_gnn_out);
    return dims;
}

const ModelVariantConfig& validated(const ModelVariantConfig& cfg)
{
    cfg.validate();
    return cfg;
}
}  // namespace

Model::Model(ModelVariantConfig cfg, evm::OpcodeVocab vocab)
    : cfg_{validated(cfg)},
      vocab_{std::move(vocab)},
      rng_{cfg_.seed},
      text_{required().text ? std::make_unique<TextBranch>(cfg_, rng_) : nullptr},
      opcode_{required().opcodes
                  ? (vocab_.empty()
                            ? throw EmptyVocab{"opcode variants need a fitted vocabulary"}
                            : std::make_unique<OpcodeBranch>(cfg_, vocab_.embedding_rows(), rng_))
                  : nullptr},
      graph_{required().graph ? std::make_unique<GraphBranch>(cfg_, rng_) : nullptr},
      head_{active_dims(cfg_), cfg_, rng_}
{
    if (text_)
        text_->collect("text", params_);
    if (opcode_)
        opcode_->collect("opcode", params_);
    if (graph_)
        graph_->collect("graph", params_);
    head_.collect("head", params_);
}

Model::~Model() = default;

std::vector<nn::Var> Model::branch_outputs_with(SampleBatch batch,
    bool training,
    std::mt19937_64& rng) const
{
    if (batch.empty())
        throw InvalidArgument{"empty batch"};
    const auto needs = required();
    for (const auto* s : batch)
        check_features(*s, needs);
    std::vector<nn::Var> outs;
    if (text_)
        outs.push_back((*text_)(batch, training, rng));
    if (opcode_)
        outs.push_back((*opcode_)(batch, training, rng));
    if (graph_)
        outs.push_back((*graph_)(batch));
    return outs;
}

std::vector<nn::Var> Model::branch_outputs(SampleBatch batch, bool training)
{
    return branch_outputs_with(batch, training, rng_);
}

nn::Var Model::logits(SampleBatch batch, bool training)
{
    return head_(branch_outputs_with(batch, training, rng_));
}

nn::Matrix Model::predict_proba(SampleBatch batch) const
{
    const nn::NoGradGuard no_grad;
    std::mt19937_64 unused{0};
    return nn::softmax_rows(head_(branch_outputs_with(batch, false, unused))).value();
}

nn::NamedParams Model::state() const
{
    nn::NamedParams all = params_;
    // A frozen from-scratch encoder is not in params_ but still has to round-trip.
    if (text_ && !cfg_.encoder_trainable() && cfg_.encoder_preset == EncoderPreset::TinyTest)
        text_->encoder().collect("text.encoder", all);
    return all;
}

void Model::save(const std::filesystem::path& dir) const
{
    std::filesystem::create_directories(dir);
    nlohmann::json j{
        {"format", checkpoint_format},
        {"model", nlohmann::json::parse(cfg_.to_json())},
    };
    write_file(dir / "config.json", j.dump(2) + "\n");
    write_file(dir / "vocab.json", vocab_.to_json());
    nn::save_weights(dir / "weights.bin", state());
}

std::unique_ptr<Model> Model::load(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw CheckpointMismatch{dir.string() + ": checkpoint directory not found"};
    ModelVariantConfig cfg;
    evm::OpcodeVocab vocab;
    try
    {
        const auto j = nlohmann::json::parse(read_file(dir / "config.json"));
        if (j.value("format", "") != checkpoint_format)
            throw CheckpointMismatch{dir.string() + ": unsupported checkpoint format"};
        cfg = ModelVariantConfig::from_json(j.at("model").dump());
        vocab = evm::OpcodeVocab::from_json(read_file(dir / "vocab.json"));
    }
    catch (const CheckpointMismatch&)
    {
        throw;
    }
    catch (const std::exception& e)
    {
        throw CheckpointMismatch{dir.string() + ": " + e.what()};
    }
    auto m = std::make_unique<Model>(std::move(cfg), std::move(vocab));
    nn::load_weights(dir / "weights.bin", m->state());
    return m;
}
}  // namespace vulnfuse::model

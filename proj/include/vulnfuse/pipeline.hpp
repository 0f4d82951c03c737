// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/corpus.hpp>
#include <vulnfuse/embedding.hpp>
#include <vulnfuse/evm.hpp>
#include <vulnfuse/model/model.hpp>
#include <vulnfuse/train_eval.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

/// End-to-end plumbing behind the command-line tool. Every artifact lives under the
/// workspace:
///
///   features/<id>/{source.sol, runtime.hex, ops.txt, ids.bin, <id>.cfg.gv, graph.bin, meta.json}
///   split.json, vocab.json, failures.json, embeddings.cache
///   models/<variant>_e<epochs>_s<seed>/   reports/
namespace vulnfuse::pipeline
{
enum class CompileMode : uint8_t
{
    /// Compile only records without manifest bytecode.
    Missing,
    /// Always compile; manifest bytecode is ignored.
    Always,
    /// Never run the compiler.
    Never,
};

struct PipelineConfig
{
    std::filesystem::path manifest;
    std::filesystem::path workspace = "workspace";
    evm::CompilerConfig compiler;
    CompileMode compile_mode = CompileMode::Missing;
    ProviderSettings embedding;
    model::ModelVariantConfig model;
    TrainingHyper hyper;
    double test_fraction = 0.2;
    uint64_t split_seed = 42;
    std::vector<model::Variant> variants{model::all_variants.begin(), model::all_variants.end()};
    std::vector<int> epoch_budgets{10, 20, 30};
    Averaging averaging = Averaging::Weighted;
    unsigned workers = 1;
    /// `features` fails (exit 2) when more than this fraction of records fail.
    double failure_threshold = 0.10;

    /// Canonical JSON. Credentials are never included.
    [[nodiscard]] std::string to_json() const;
    /// Applies the keys present in `text` on top of `base`. Throws ConfigError.
    [[nodiscard]] static PipelineConfig from_json(std::string_view text, PipelineConfig base);
    [[nodiscard]] static PipelineConfig from_json(std::string_view text);
    /// SHA-256 of `to_json()`.
    [[nodiscard]] std::string hash() const;
};

/// Sets the split, model-initialization and shuffling seeds to one value.
void apply_seed(PipelineConfig& cfg, uint64_t seed);

[[nodiscard]] std::string_view to_string(CompileMode m) noexcept;

/// Embedding provider for `cfg`, cached in `<workspace>/embeddings.cache` unless a cache
/// file is configured.
[[nodiscard]] std::unique_ptr<EmbeddingProvider> open_provider(const PipelineConfig& cfg);

struct IngestSummary
{
    size_t records = 0;
    size_t with_bytecode = 0;
    ClassHistogram histogram{};
};

IngestSummary cmd_ingest(const PipelineConfig& cfg);

/// Writes comment-free, whitespace-normalized sources to `<workspace>/clean/<id>.sol`.
size_t cmd_clean(const PipelineConfig& cfg);

struct RecordFailure
{
    std::string id;
    std::string kind;
    std::string message;
};

struct FeatureReport
{
    size_t total = 0;
    size_t computed = 0;
    size_t skipped = 0;
    std::vector<RecordFailure> failures;
    size_t vocab_size = 0;
    size_t train_size = 0;
    size_t test_size = 0;

    [[nodiscard]] bool above_threshold(double threshold) const noexcept
    {
        return total > 0 && double(failures.size()) > threshold * double(total);
    }
};

/// Per-record artifacts, the stratified split and the opcode vocabulary (fit on the
/// training side only). Records whose inputs hash unchanged are not recomputed.
FeatureReport cmd_features(const PipelineConfig& cfg,
    const std::function<void(const std::string&)>& progress = {});

/// Reads the materialized features of `ids`; kinds not in `needs` are left out.
[[nodiscard]] std::vector<model::Sample> load_samples(const PipelineConfig& cfg,
    std::span<const std::string> ids,
    const model::FeatureKinds& needs);

[[nodiscard]] DatasetSplit load_split(const PipelineConfig& cfg);
[[nodiscard]] evm::OpcodeVocab load_vocab(const PipelineConfig& cfg);

struct TrainOutcome
{
    std::filesystem::path checkpoint;
    TrainResult result;
};

/// Trains `cfg.model.variant` for `cfg.hyper.epochs` on the training split and saves the
/// checkpoint, together with the resolved pipeline config.
TrainOutcome cmd_train(const PipelineConfig& cfg);

/// Evaluates a checkpoint on the test split and writes the report.
EvaluationReport cmd_eval(const PipelineConfig& cfg, const std::filesystem::path& checkpoint);

/// Runs the variant x budget grid and writes reports plus a provenance file.
AblationResult cmd_ablation(const PipelineConfig& cfg);

struct PredictOutcome
{
    Label label = Label::Clean;
    std::array<double, 3> probabilities{};
    std::string config_hash;
};

/// Classifies one contract. `bytecode_hex` overrides compilation when nonempty.
/// Throws CheckpointMismatch and FeatureDerivationFailed.
PredictOutcome cmd_predict(const PipelineConfig& cfg,
    const std::filesystem::path& checkpoint,
    const std::filesystem::path& contract,
    std::string_view bytecode_hex = {});
}  // namespace vulnfuse::pipeline

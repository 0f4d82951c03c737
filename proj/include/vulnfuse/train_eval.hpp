// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/model/model.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vulnfuse
{
struct TrainingHyper
{
    int batch_size = 32;
    float learning_rate = 1e-3f;
    int epochs = 10;
    uint64_t seed = 42;
};

struct EpochStats
{
    int epoch = 0;
    double loss = 0.0;
    double accuracy = 0.0;
    double seconds = 0.0;
};

struct TrainResult
{
    std::vector<EpochStats> history;
    double train_seconds = 0.0;
    uint64_t steps = 0;
};

/// Adam on softmax cross-entropy, reshuffling with a generator seeded from `hyper.seed`
/// every epoch. Throws MissingFeature before any update when a sample lacks an input.
TrainResult train(model::Model& model,
    std::span<const model::Sample> samples,
    const TrainingHyper& hyper);

/// rows = true class, cols = predicted class.
using Confusion = std::array<std::array<int64_t, 3>, 3>;

enum class Averaging : uint8_t
{
    Weighted,
    Macro,
};

[[nodiscard]] std::string_view to_string(Averaging a) noexcept;
[[nodiscard]] std::optional<Averaging> parse_averaging(std::string_view s) noexcept;

struct ClassMetrics
{
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int64_t support = 0;
};

struct Metrics
{
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::array<ClassMetrics, 3> per_class{};
};

/// Per-class ratios with 0/0 taken as 0, then averaged. Weighted recall is exactly the
/// accuracy. Throws EmptyTestSet for an all-zero matrix.
[[nodiscard]] Metrics compute_metrics(const Confusion& confusion, Averaging averaging);

struct EvaluationReport
{
    std::string variant;
    int epochs = 0;
    uint64_t seed = 0;
    uint64_t split_seed = 0;
    std::string averaging = "weighted";
    Metrics metrics;
    Confusion confusion{};
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
    size_t test_size = 0;
    std::vector<EpochStats> history;
    std::string config_hash;
    /// "ok" or "failed".
    std::string status = "ok";
    std::string error;

    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] static EvaluationReport from_json(std::string_view text);
};

struct Prediction
{
    int32_t label = 0;
    std::array<double, 3> probabilities{};
};

/// Predicts in batches of `batch_size` without recording gradients.
[[nodiscard]] std::vector<Prediction> predict(const model::Model& model,
    std::span<const model::Sample> samples,
    int batch_size = 32);

/// Confusion over argmax predictions; `predict_seconds` covers the whole test set.
/// Throws EmptyTestSet.
[[nodiscard]] EvaluationReport evaluate(const model::Model& model,
    std::span<const model::Sample> test,
    Averaging averaging = Averaging::Weighted,
    int batch_size = 32);

struct AblationPlan
{
    std::vector<model::Variant> variants{model::all_variants.begin(), model::all_variants.end()};
    std::vector<int> epoch_budgets{10, 20, 30};
    model::ModelVariantConfig base;
    TrainingHyper hyper;
    Averaging averaging = Averaging::Weighted;
    uint64_t split_seed = 0;
    std::string config_hash;
    /// Where reports are written; empty to skip writing.
    std::filesystem::path out_dir;
};

struct AblationResult
{
    std::vector<EvaluationReport> reports;
    std::string table;
    std::vector<std::filesystem::path> files;
};

/// Trains every (variant, budget) cell from scratch on the same split. A failing cell is
/// recorded with status "failed" and the grid continues.
AblationResult run_ablation(const AblationPlan& plan,
    const evm::OpcodeVocab& vocab,
    std::span<const model::Sample> train_set,
    std::span<const model::Sample> test_set);

/// Metric x budget rows, variant columns.
[[nodiscard]] std::string render_table(std::span<const EvaluationReport> reports);
[[nodiscard]] std::string render_csv(std::span<const EvaluationReport> reports);
/// Horizontal bar chart (SVG) of one value per label.
[[nodiscard]] std::string render_bar_chart(std::string_view title,
    std::string_view unit,
    std::span<const std::pair<std::string, double>> bars);

/// "<variant>_e<epochs>_s<seed>".
[[nodiscard]] std::string report_stem(std::string_view variant, int epochs, uint64_t seed);
}  // namespace vulnfuse

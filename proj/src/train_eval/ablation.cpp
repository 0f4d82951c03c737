// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/train_eval.hpp>
#include <vulnfuse/util.hpp>

namespace vulnfuse
{
AblationResult run_ablation(const AblationPlan& plan,
    const evm::OpcodeVocab& vocab,
    std::span<const model::Sample> train_set,
    std::span<const model::Sample> test_set)
{
    if (test_set.empty())
        throw EmptyTestSet{"ablation needs a nonempty test split"};
    if (plan.variants.empty() || plan.epoch_budgets.empty())
        throw InvalidArgument{"ablation needs at least one variant and one epoch budget"};

    AblationResult result;
    const auto write = [&](const std::string& name, std::string_view contents) {
        if (plan.out_dir.empty())
            return;
        const auto path = plan.out_dir / name;
        write_file(path, contents);
        result.files.push_back(path);
    };
    if (!plan.out_dir.empty())
        std::filesystem::create_directories(plan.out_dir);

    for (const auto variant : plan.variants)
    {
        for (const int budget : plan.epoch_budgets)
        {
            EvaluationReport report;
            report.variant = std::string{model::to_string(variant)};
            report.epochs = budget;
            report.seed = plan.hyper.seed;
            try
            {
                auto cfg = plan.base;
                cfg.variant = variant;
                model::Model m{cfg, vocab};
                auto hyper = plan.hyper;
                hyper.epochs = budget;
                const auto trained = train(m, train_set, hyper);
                report = evaluate(m, test_set, plan.averaging, plan.hyper.batch_size);
                report.epochs = budget;
                report.seed = plan.hyper.seed;
                report.train_seconds = trained.train_seconds;
                report.history = trained.history;
            }
            catch (const std::exception& e)
            {
                report.status = "failed";
                report.error = e.what();
                report.test_size = test_set.size();
            }
            report.split_seed = plan.split_seed;
            report.config_hash = plan.config_hash;
            write("report_" + report_stem(report.variant, budget, plan.hyper.seed) + ".json",
                report.to_json());
            result.reports.push_back(std::move(report));
        }
    }

    result.table = render_table(result.reports);
    const auto suffix = "_s" + std::to_string(plan.hyper.seed);
    write("ablation" + suffix + ".csv", render_csv(result.reports));
    write("table" + suffix + ".txt", result.table);

    std::vector<std::pair<std::string, double>> train_bars;
    std::vector<std::pair<std::string, double>> predict_bars;
    for (const auto& r : result.reports)
    {
        if (r.status != "ok")
            continue;
        const auto label = r.variant + " E" + std::to_string(r.epochs);
        train_bars.emplace_back(label, r.train_seconds);
        predict_bars.emplace_back(label, r.predict_seconds);
    }
    write("train_time" + suffix + ".svg", render_bar_chart("Training time", "s", train_bars));
    write("predict_time" + suffix + ".svg",
        render_bar_chart("Prediction time (" + std::to_string(test_set.size()) + " samples)", "s",
            predict_bars));
    return result;
}
}  // namespace vulnfuse

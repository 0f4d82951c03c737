// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/util.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

namespace
{
using namespace vulnfuse;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_partial = 2;
constexpr int exit_internal = 3;

struct Options
{
    std::string config_file;
    std::string workspace;
    std::string manifest;
    std::optional<uint64_t> seed;
    std::string provider;
    std::optional<unsigned> workers;
    bool json_output = false;

    std::string solc;
    std::string compile_mode;
    std::optional<double> threshold;

    std::string variant;
    std::optional<int> epochs;
    std::vector<std::string> variants;
    std::vector<int> epoch_budgets;
    std::string averaging;
    std::string checkpoint;
    std::string contract;
    std::string bytecode;
};

std::vector<std::string> split_words(const std::string& s)
{
    std::istringstream in{s};
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

model::Variant variant_or_throw(const std::string& name)
{
    const auto v = model::parse_variant(name);
    if (!v)
        throw ConfigError{"unknown variant '" + name + "'"};
    return *v;
}

/// Defaults, then the config file, then the environment, then flags.
pipeline::PipelineConfig resolve(const Options& o)
{
    pipeline::PipelineConfig cfg;
    if (!o.config_file.empty())
        cfg = pipeline::PipelineConfig::from_json(read_file(o.config_file), cfg);
    cfg.embedding = provider_settings_from_env(cfg.embedding);

    if (!o.workspace.empty())
        cfg.workspace = o.workspace;
    if (!o.manifest.empty())
        cfg.manifest = o.manifest;
    if (o.seed)
        pipeline::apply_seed(cfg, *o.seed);
    if (!o.provider.empty())
        cfg.embedding.kind = o.provider;
    if (o.workers)
        cfg.workers = *o.workers;
    if (!o.solc.empty())
        cfg.compiler.command = split_words(o.solc);
    if (!o.compile_mode.empty())
    {
        if (o.compile_mode == "missing")
            cfg.compile_mode = pipeline::CompileMode::Missing;
        else if (o.compile_mode == "always")
            cfg.compile_mode = pipeline::CompileMode::Always;
        else
            cfg.compile_mode = pipeline::CompileMode::Never;
    }
    if (o.threshold)
        cfg.failure_threshold = *o.threshold;
    if (!o.variant.empty())
        cfg.model.variant = variant_or_throw(o.variant);
    if (o.epochs)
        cfg.hyper.epochs = *o.epochs;
    if (!o.variants.empty())
    {
        cfg.variants.clear();
        for (const auto& v : o.variants)
            cfg.variants.push_back(variant_or_throw(v));
    }
    if (!o.epoch_budgets.empty())
        cfg.epoch_budgets = o.epoch_budgets;
    if (!o.averaging.empty())
        cfg.averaging = *parse_averaging(o.averaging);
    return cfg;
}

json histogram_json(const ClassHistogram& h)
{
    return {{"arithmetic", h[0]}, {"reentrancy", h[1]}, {"clean", h[2]}};
}

void print(const Options& o, const json& j, const std::string& text)
{
    if (o.json_output)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::filesystem::path default_checkpoint(const pipeline::PipelineConfig& cfg)
{
    return cfg.workspace / "models" /
           report_stem(model::to_string(cfg.model.variant), cfg.hyper.epochs, cfg.hyper.seed);
}

int run_ingest(const Options& o)
{
    const auto cfg = resolve(o);
    const auto s = pipeline::cmd_ingest(cfg);
    std::ostringstream text;
    text << s.records << " records (" << s.with_bytecode << " with bytecode): arithmetic "
         << s.histogram[0] << ", reentrancy " << s.histogram[1] << ", clean " << s.histogram[2]
         << "\n";
    print(o,
        {{"records", s.records}, {"with_bytecode", s.with_bytecode},
            {"histogram", histogram_json(s.histogram)}},
        text.str());
    return exit_ok;
}

int run_clean(const Options& o)
{
    const auto cfg = resolve(o);
    const auto n = pipeline::cmd_clean(cfg);
    print(o, {{"cleaned", n}, {"directory", (cfg.workspace / "clean").string()}},
        std::to_string(n) + " sources written to " + (cfg.workspace / "clean").string() + "\n");
    return exit_ok;
}

int run_features(const Options& o)
{
    const auto cfg = resolve(o);
    const auto r = pipeline::cmd_features(cfg, [&](const std::string& line) {
        if (!o.json_output)
            std::cerr << line << "\n";
    });
    json failures = json::array();
    std::ostringstream text;
    text << r.total << " records: " << r.computed << " computed, " << r.skipped << " unchanged, "
         << r.failures.size() << " failed\n";
    for (const auto& f : r.failures)
    {
        failures.push_back({{"id", f.id}, {"kind", f.kind}, {"message", f.message}});
        text << "  " << f.id << ": " << f.message << "\n";
    }
    text << "split: " << r.train_size << " train / " << r.test_size << " test, vocabulary "
         << r.vocab_size << "\n";
    const bool above = r.above_threshold(cfg.failure_threshold);
    print(o,
        {{"total", r.total}, {"computed", r.computed}, {"skipped", r.skipped},
            {"failures", failures}, {"vocab_size", r.vocab_size}, {"train_size", r.train_size},
            {"test_size", r.test_size}, {"above_threshold", above}},
        text.str());
    return above ? exit_partial : exit_ok;
}

int run_train(const Options& o)
{
    const auto cfg = resolve(o);
    const auto out = pipeline::cmd_train(cfg);
    const double loss = out.result.history.empty() ? 0.0 : out.result.history.back().loss;
    std::ostringstream text;
    text << model::to_string(cfg.model.variant) << ": " << out.result.steps << " steps in "
         << std::fixed << std::setprecision(2) << out.result.train_seconds << " s, final loss "
         << std::setprecision(4) << loss << "\ncheckpoint: " << out.checkpoint.string() << "\n";
    print(o,
        {{"checkpoint", out.checkpoint.string()}, {"steps", out.result.steps},
            {"train_seconds", out.result.train_seconds}, {"final_loss", loss}},
        text.str());
    return exit_ok;
}

int run_eval(const Options& o)
{
    const auto cfg = resolve(o);
    const auto checkpoint =
        o.checkpoint.empty() ? default_checkpoint(cfg) : std::filesystem::path{o.checkpoint};
    const auto r = pipeline::cmd_eval(cfg, checkpoint);
    std::ostringstream text;
    text << std::fixed << std::setprecision(4) << r.variant << " (" << r.epochs << " epochs, "
         << r.test_size << " test samples)\n"
         << "accuracy " << r.metrics.accuracy << "  precision " << r.metrics.precision
         << "  recall " << r.metrics.recall << "  f1 " << r.metrics.f1 << " (" << r.averaging
         << ")\n";
    print(o, json::parse(r.to_json()), text.str());
    return exit_ok;
}

int run_ablation(const Options& o)
{
    const auto cfg = resolve(o);
    const auto r = pipeline::cmd_ablation(cfg);
    size_t failed = 0;
    json cells = json::array();
    for (const auto& rep : r.reports)
    {
        failed += rep.status != "ok";
        cells.push_back({{"variant", rep.variant}, {"epochs", rep.epochs}, {"status", rep.status},
            {"accuracy", rep.metrics.accuracy}, {"f1", rep.metrics.f1}});
    }
    json files = json::array();
    for (const auto& f : r.files)
        files.push_back(f.string());
    print(o, {{"cells", cells}, {"failed", failed}, {"files", files}, {"config_hash", cfg.hash()}},
        r.table + "\n" + std::to_string(r.files.size()) + " files under " +
            (cfg.workspace / "reports").string() + "\n");
    return failed > 0 ? exit_partial : exit_ok;
}

int run_predict(const Options& o)
{
    const auto cfg = resolve(o);
    const auto checkpoint =
        o.checkpoint.empty() ? default_checkpoint(cfg) : std::filesystem::path{o.checkpoint};
    const auto p = pipeline::cmd_predict(cfg, checkpoint, o.contract, o.bytecode);
    const char* names[] = {"arithmetic", "reentrancy", "clean"};
    json probs;
    std::ostringstream text;
    text << to_string(p.label) << "\n" << std::fixed << std::setprecision(4);
    for (size_t c = 0; c < 3; ++c)
    {
        probs[names[c]] = p.probabilities[c];
        text << "  " << names[c] << " " << p.probabilities[c] << "\n";
    }
    print(o,
        {{"label", std::string{to_string(p.label)}}, {"probabilities", probs},
            {"config_hash", p.config_hash}},
        text.str());
    return exit_ok;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"vulnfuse: multimodal smart-contract vulnerability detection"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--config", o.config_file, "Pipeline config (JSON)")->check(CLI::ExistingFile);
    app.add_option("--workspace", o.workspace, "Workspace directory");
    app.add_option("--manifest", o.manifest, "Corpus manifest (JSON lines)");
    app.add_option("--seed", o.seed, "Split, initialization and shuffling seed");
    app.add_option("--provider", o.provider, "Embedding provider")
        ->check(CLI::IsMember({"remote", "local"}));
    app.add_option("--workers", o.workers, "Feature workers")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json_output, "Machine-readable output");

    auto* ingest = app.add_subcommand("ingest", "Validate the manifest and print class counts");
    auto* clean = app.add_subcommand("clean", "Write comment-free sources to the workspace");
    auto* features =
        app.add_subcommand("features", "Materialize per-record features and the split");
    features->add_option("--solc", o.solc, "Compiler command line");
    features->add_option("--compile", o.compile_mode, "When to compile")
        ->check(CLI::IsMember({"missing", "always", "never"}));
    features->add_option("--threshold", o.threshold, "Tolerated failure fraction")
        ->check(CLI::Range(0.0, 1.0));

    auto* train = app.add_subcommand("train", "Train one variant on the training split");
    train->add_option("--variant", o.variant, "Model variant");
    train->add_option("--epochs", o.epochs, "Epochs")->check(CLI::NonNegativeNumber);

    auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
    eval->add_option("--checkpoint", o.checkpoint, "Checkpoint directory");
    eval->add_option("--variant", o.variant, "Variant of the default checkpoint");
    eval->add_option("--epochs", o.epochs, "Epochs of the default checkpoint");
    eval->add_option("--averaging", o.averaging)->check(CLI::IsMember({"weighted", "macro"}));

    auto* ablation = app.add_subcommand("ablation", "Train and evaluate the variant x budget grid");
    ablation->add_option("--variants", o.variants, "Variants")->delimiter(',');
    ablation->add_option("--epochs", o.epoch_budgets, "Epoch budgets")->delimiter(',');
    ablation->add_option("--averaging", o.averaging)->check(CLI::IsMember({"weighted", "macro"}));

    auto* predict = app.add_subcommand("predict", "Classify one contract");
    predict->add_option("contract", o.contract, "Solidity source file")
        ->required()
        ->check(CLI::ExistingFile);
    predict->add_option("--checkpoint", o.checkpoint, "Checkpoint directory");
    predict->add_option("--bytecode", o.bytecode, "Runtime bytecode (hex), skips compilation");
    predict->add_option("--solc", o.solc, "Compiler command line");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*ingest)
            return run_ingest(o);
        if (*clean)
            return run_clean(o);
        if (*features)
            return run_features(o);
        if (*train)
            return run_train(o);
        if (*eval)
            return run_eval(o);
        if (*ablation)
            return run_ablation(o);
        if (*predict)
            return run_predict(o);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "vulnfuse: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "vulnfuse: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}

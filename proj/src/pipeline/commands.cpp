// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/error.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/solidity_prep.hpp>
#include <vulnfuse/util.hpp>

#include <json.hpp>

namespace vulnfuse::pipeline
{
namespace
{
using nlohmann::json;
namespace fs = std::filesystem;

json histogram_json(const ClassHistogram& h)
{
    return {{"arithmetic", h[0]}, {"reentrancy", h[1]}, {"clean", h[2]}};
}

ClassHistogram histogram_of(std::span<const model::Sample> samples)
{
    ClassHistogram h{};
    for (const auto& s : samples)
    {
        if (s.label >= 0 && s.label < 3)
            ++h[size_t(s.label)];
    }
    return h;
}

std::string checkpoint_hash(const fs::path& checkpoint)
{
    for (const char* name : {"pipeline.json", "config.json"})
    {
        if (fs::is_regular_file(checkpoint / name))
            return sha256_hex(read_file(checkpoint / name));
    }
    return {};
}

std::string try_compiler_version(const PipelineConfig& cfg)
{
    if (cfg.compile_mode == CompileMode::Never)
        return "disabled";
    try
    {
        return evm::compiler_version(cfg.compiler);
    }
    catch (const Error& e)
    {
        return std::string{"unavailable ("} + e.kind() + ")";
    }
}
}  // namespace

TrainOutcome cmd_train(const PipelineConfig& cfg)
{
    const auto split = load_split(cfg);
    const auto vocab = load_vocab(cfg);
    const auto needs = model::required_features(cfg.model.variant);
    const auto train_set = load_samples(cfg, split.train, needs);

    model::Model m{cfg.model, vocab};
    TrainOutcome out;
    out.result = train(m, train_set, cfg.hyper);
    out.checkpoint =
        cfg.workspace / "models" /
        report_stem(model::to_string(cfg.model.variant), cfg.hyper.epochs, cfg.hyper.seed);
    m.save(out.checkpoint);
    write_file(out.checkpoint / "pipeline.json", cfg.to_json());

    json hist = json::array();
    for (const auto& h : out.result.history)
    {
        hist.push_back({{"epoch", h.epoch}, {"loss", h.loss}, {"accuracy", h.accuracy},
            {"seconds", h.seconds}});
    }
    const json training{
        {"epochs", cfg.hyper.epochs},
        {"seed", cfg.hyper.seed},
        {"steps", out.result.steps},
        {"train_seconds", out.result.train_seconds},
        {"train_size", train_set.size()},
        {"history", hist},
        {"config_hash", cfg.hash()},
    };
    write_file(out.checkpoint / "training.json", training.dump(2) + "\n");
    return out;
}

EvaluationReport cmd_eval(const PipelineConfig& cfg, const fs::path& checkpoint)
{
    const auto m = model::Model::load(checkpoint);
    const auto split = load_split(cfg);
    const auto test_set = load_samples(cfg, split.test, m->required());
    for (const auto& s : test_set)
        model::check_features(s, m->required());

    auto report = evaluate(*m, test_set, cfg.averaging, cfg.hyper.batch_size);
    report.split_seed = split.seed;
    report.config_hash = checkpoint_hash(checkpoint);
    if (fs::is_regular_file(checkpoint / "training.json"))
    {
        const auto t = json::parse(read_file(checkpoint / "training.json"));
        report.epochs = t.value("epochs", 0);
        report.train_seconds = t.value("train_seconds", 0.0);
        for (const auto& h : t.value("history", json::array()))
        {
            report.history.push_back({h.at("epoch").get<int>(), h.at("loss").get<double>(),
                h.at("accuracy").get<double>(), h.at("seconds").get<double>()});
        }
    }
    const auto dir = cfg.workspace / "reports";
    fs::create_directories(dir);
    write_file(dir / ("eval_" + report_stem(report.variant, report.epochs, report.seed) + ".json"),
        report.to_json());
    return report;
}

AblationResult cmd_ablation(const PipelineConfig& cfg)
{
    const auto split = load_split(cfg);
    const auto vocab = load_vocab(cfg);
    model::FeatureKinds needs;
    for (const auto v : cfg.variants)
    {
        const auto f = model::required_features(v);
        needs.text = needs.text || f.text;
        needs.opcodes = needs.opcodes || f.opcodes;
        needs.graph = needs.graph || f.graph;
    }
    const auto train_set = load_samples(cfg, split.train, needs);
    const auto test_set = load_samples(cfg, split.test, needs);

    AblationPlan plan;
    plan.variants = cfg.variants;
    plan.epoch_budgets = cfg.epoch_budgets;
    plan.base = cfg.model;
    plan.hyper = cfg.hyper;
    plan.averaging = cfg.averaging;
    plan.split_seed = split.seed;
    plan.config_hash = cfg.hash();
    plan.out_dir = cfg.workspace / "reports";

    auto result = run_ablation(plan, vocab, train_set, test_set);

    const auto records = load_manifest(cfg.manifest);
    json failures = json::array();
    if (fs::is_regular_file(cfg.workspace / "failures.json"))
        failures = json::parse(read_file(cfg.workspace / "failures.json"));
    const json provenance{
        {"config_hash", plan.config_hash},
        {"config", json::parse(cfg.to_json())},
        {"seeds",
            {
                {"split", split.seed},
                {"model", cfg.model.seed},
                {"training", cfg.hyper.seed},
                {"local_embedding", cfg.embedding.local_seed},
            }},
        {"dataset",
            {
                {"manifest", cfg.manifest.string()},
                {"records", records.size()},
                {"histogram", histogram_json(class_histogram(records))},
                {"train", {{"size", train_set.size()},
                              {"histogram", histogram_json(histogram_of(train_set))}}},
                {"test", {{"size", test_set.size()},
                             {"histogram", histogram_json(histogram_of(test_set))}}},
                {"feature_failures", failures.size()},
            }},
        {"opcode_vocab_size", vocab.size()},
        {"compiler", try_compiler_version(cfg)},
        {"embedding_provider", open_provider(cfg)->identity()},
        {"encoder_preset", model::to_string(cfg.model.encoder_preset)},
        {"cells", result.reports.size()},
    };
    const auto file = plan.out_dir / ("provenance_s" + std::to_string(cfg.hyper.seed) + ".json");
    write_file(file, provenance.dump(2) + "\n");
    result.files.push_back(file);
    return result;
}

PredictOutcome cmd_predict(const PipelineConfig& cfg,
    const fs::path& checkpoint,
    const fs::path& contract,
    std::string_view bytecode_hex)
{
    const auto m = model::Model::load(checkpoint);
    const auto needs = m->required();

    std::string source;
    try
    {
        source = read_file(contract);
    }
    catch (const IoError& e)
    {
        throw FeatureDerivationFailed{e.what()};
    }

    model::Sample s;
    s.id = contract.filename().string();
    try
    {
        if (needs.text)
            s.text = clean_source(source).text;
        if (needs.opcodes || needs.graph)
        {
            std::string hex{bytecode_hex};
            if (hex.empty())
                hex = evm::compile_source(source, cfg.compiler).runtime;
            const auto instructions = evm::disassemble(hex);
            if (needs.opcodes)
            {
                s.opcode_ids = evm::tokenize_and_pad(evm::simplify_opcodes(instructions),
                    m->vocab(), size_t(m->config().max_opcode_len));
            }
            if (needs.graph)
            {
                auto provider = open_provider(cfg);
                s.graph = encode_graph(build_cfg(instructions), *provider);
            }
        }
    }
    catch (const FeatureDerivationFailed&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw FeatureDerivationFailed{contract.string() + ": " + e.what()};
    }

    const model::Sample* batch[] = {&s};
    const auto probs = m->predict_proba(batch);
    PredictOutcome out;
    int32_t best = 0;
    for (int32_t c = 0; c < 3; ++c)
    {
        out.probabilities[size_t(c)] = probs(0, c);
        if (probs(0, c) > probs(0, best))
            best = c;
    }
    out.label = Label(best);
    out.config_hash = checkpoint_hash(checkpoint);
    return out;
}
}  // namespace vulnfuse::pipeline

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/util.hpp>

#include <doctest.h>
#include <json.hpp>

#include <set>

using namespace vulnfuse;
using namespace vulnfuse::pipeline;

namespace
{
const std::filesystem::path smoke_dir = std::filesystem::path{VULNFUSE_SOURCE_DIR} / "corpus/smoke";

PipelineConfig smoke_config(const std::string& name)
{
    PipelineConfig cfg;
    cfg.manifest = smoke_dir / "manifest_precompiled.jsonl";
    cfg.workspace = std::filesystem::temp_directory_path() / ("vulnfuse_ws_" + name);
    std::filesystem::remove_all(cfg.workspace);
    cfg.compile_mode = CompileMode::Never;
    cfg.embedding.kind = "local";
    cfg.test_fraction = 0.2;
    cfg.model.max_opcode_len = 60;
    cfg.hyper.epochs = 1;
    cfg.hyper.batch_size = 8;
    return cfg;
}
}  // namespace

TEST_CASE("pipeline config JSON")
{
    PipelineConfig cfg;
    cfg.embedding.remote.api_key = "sk-never-serialized";
    cfg.hyper.epochs = 3;
    cfg.variants = {model::Variant::M1, model::Variant::GNN};
    const auto text = cfg.to_json();
    CHECK(text.find("sk-never-serialized") == std::string::npos);
    CHECK(text.find("api_key") == std::string::npos);

    const auto back = PipelineConfig::from_json(text);
    CHECK(back.to_json() == text);
    CHECK(back.hyper.epochs == 3);
    CHECK(back.variants == cfg.variants);
    CHECK(back.hash() == sha256_hex(text));
    CHECK(back.hash().size() == 64);

    CHECK_THROWS_AS(
        (void)PipelineConfig::from_json(R"({"embedding": {"api_key": "x"}})"), ConfigError);
    CHECK_THROWS_AS((void)PipelineConfig::from_json(R"({"api_key": "x"})"), ConfigError);
    CHECK_THROWS_AS((void)PipelineConfig::from_json(R"({"nonsense": 1})"), ConfigError);
    CHECK_THROWS_AS(
        (void)PipelineConfig::from_json(R"({"training": {"epochs": "ten"}})"), ConfigError);
    CHECK_THROWS_AS((void)PipelineConfig::from_json("not json"), ConfigError);

    // Keys layer over the base.
    auto base = PipelineConfig{};
    base.workers = 3;
    const auto layered = PipelineConfig::from_json(R"({"split": {"seed": 5}})", base);
    CHECK(layered.workers == 3);
    CHECK(layered.split_seed == 5);

    auto seeded = PipelineConfig{};
    apply_seed(seeded, 77);
    CHECK(seeded.split_seed == 77);
    CHECK(seeded.hyper.seed == 77);
    CHECK(seeded.model.seed == 77);
}

TEST_CASE("ingest, clean and features on the bundled corpus")
{
    auto cfg = smoke_config("features");
    const auto ingest = cmd_ingest(cfg);
    CHECK(ingest.records == 30);
    CHECK(ingest.with_bytecode == 30);
    CHECK(ingest.histogram == ClassHistogram{10, 10, 10});

    CHECK(cmd_clean(cfg) == 30);
    const auto cleaned = read_file(cfg.workspace / "clean" / "ari_timelock.sol");
    CHECK(cleaned.find("//") == std::string::npos);

    std::vector<std::string> progress;
    const auto report =
        cmd_features(cfg, [&](const std::string& line) { progress.push_back(line); });
    CHECK(report.total == 30);
    CHECK(report.computed == 30);
    CHECK(report.skipped == 0);
    CHECK(report.failures.empty());
    CHECK(progress.size() == 30);
    CHECK(report.train_size + report.test_size == 30);
    CHECK(report.test_size == 6);
    CHECK(report.vocab_size > 10);

    const auto dir = cfg.workspace / "features" / "ari_timelock";
    for (const char* f : {"source.sol", "runtime.hex", "ops.txt", "ids.bin", "ari_timelock.cfg.gv",
             "graph.bin", "meta.json"})
    {
        INFO(f);
        CHECK(std::filesystem::is_regular_file(dir / f));
    }
    CHECK(read_file(dir / "ari_timelock.cfg.gv").starts_with("digraph"));
    CHECK(std::filesystem::is_regular_file(cfg.workspace / "split.json"));
    CHECK(std::filesystem::is_regular_file(cfg.workspace / "vocab.json"));
    CHECK(std::filesystem::is_regular_file(cfg.workspace / "embeddings.cache"));

    const auto split = load_split(cfg);
    std::set<std::string> seen(split.train.begin(), split.train.end());
    for (const auto& id : split.test)
        CHECK(seen.insert(id).second);
    CHECK(seen.size() == 30);

    const auto samples = load_samples(cfg, split.test, model::FeatureKinds{true, true, true});
    REQUIRE(samples.size() == split.test.size());
    for (const auto& s : samples)
    {
        CHECK(s.text);
        REQUIRE(s.opcode_ids);
        CHECK(s.opcode_ids->size() == 60);
        REQUIRE(s.graph);
        CHECK(s.graph->feature_dim == 1536);
        CHECK(s.label >= 0);
    }
    const auto graph_only = load_samples(cfg, split.test, model::FeatureKinds{false, false, true});
    CHECK_FALSE(graph_only[0].text);
    CHECK_FALSE(graph_only[0].opcode_ids);

    // Unchanged inputs are not recomputed.
    const auto again = cmd_features(cfg);
    CHECK(again.computed == 0);
    CHECK(again.skipped == 30);
    CHECK(load_split(cfg).test == split.test);
    std::filesystem::remove_all(cfg.workspace);
}

TEST_CASE("failing records are reported and counted against the threshold")
{
    auto cfg = smoke_config("failures");
    std::filesystem::create_directories(cfg.workspace);
    // Six records with bytecode, three without it while compilation is disabled.
    std::string lines;
    const auto records = load_manifest(smoke_dir / "manifest_precompiled.jsonl");
    const size_t picks[] = {0, 1, 10, 11, 20, 21, 2, 12, 22};
    for (size_t i = 0; i < 9; ++i)
    {
        const auto& r = records[picks[i]];
        nlohmann::json j{
            {"id", r.id}, {"source_path", r.source_path.string()}, {"label", to_string(r.label)}};
        if (i < 6)
            j["bytecode"] = *r.bytecode;
        else
            j["id"] = r.id + "_nobin";
        lines += j.dump() + "\n";
    }
    cfg.manifest = cfg.workspace / "m.jsonl";
    write_file(cfg.manifest, lines);
    cfg.test_fraction = 0.34;

    const auto report = cmd_features(cfg);
    CHECK(report.total == 9);
    REQUIRE(report.failures.size() == 3);
    CHECK(report.failures[0].kind == "FeatureDerivationFailed");
    CHECK(report.above_threshold(0.10));
    CHECK_FALSE(report.above_threshold(0.5));
    const auto failures = nlohmann::json::parse(read_file(cfg.workspace / "failures.json"));
    CHECK(failures.size() == 3);
    CHECK(report.train_size + report.test_size == 6);
    std::filesystem::remove_all(cfg.workspace);
}

TEST_CASE("train, evaluate and predict")
{
    auto cfg = smoke_config("train");
    cfg.model.variant = model::Variant::GNN;
    (void)cmd_features(cfg);

    const auto trained = cmd_train(cfg);
    CHECK(trained.result.history.size() == 1);
    CHECK(std::filesystem::is_regular_file(trained.checkpoint / "weights.bin"));
    CHECK(std::filesystem::is_regular_file(trained.checkpoint / "pipeline.json"));

    const auto report = cmd_eval(cfg, trained.checkpoint);
    CHECK(report.status == "ok");
    CHECK(report.test_size == 6);
    CHECK(report.variant == "GNN");
    int64_t sum = 0;
    for (const auto& row : report.confusion)
        for (const auto x : row)
            sum += x;
    CHECK(sum == 6);
    CHECK(std::filesystem::is_regular_file(cfg.workspace / "reports" / "eval_GNN_e1_s42.json"));

    const auto records = load_manifest(cfg.manifest);
    const auto& rec = records.front();
    const auto p = cmd_predict(cfg, trained.checkpoint, rec.source_path, *rec.bytecode);
    CHECK(std::abs(p.probabilities[0] + p.probabilities[1] + p.probabilities[2] - 1.0) <= 1e-5);
    CHECK_FALSE(p.config_hash.empty());

    CHECK_THROWS_AS(
        (void)cmd_predict(cfg, cfg.workspace / "no_such_model", rec.source_path, *rec.bytecode),
        CheckpointMismatch);
    auto never = cfg;
    CHECK_THROWS_AS(
        (void)cmd_predict(never, trained.checkpoint, rec.source_path), FeatureDerivationFailed);
    std::filesystem::remove_all(cfg.workspace);
}

TEST_CASE("ablation over the smoke corpus")
{
    auto cfg = smoke_config("ablation");
    cfg.variants = {model::Variant::GNN, model::Variant::M3};
    cfg.epoch_budgets = {1};
    (void)cmd_features(cfg);
    const auto result = cmd_ablation(cfg);
    REQUIRE(result.reports.size() == 2);
    for (const auto& r : result.reports)
    {
        CHECK(r.status == "ok");
        CHECK(r.config_hash == cfg.hash());
        CHECK(r.split_seed == cfg.split_seed);
    }
    CHECK(std::filesystem::is_regular_file(cfg.workspace / "reports" / "table_s42.txt"));
    std::filesystem::remove_all(cfg.workspace);
}

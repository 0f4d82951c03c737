// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/error.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/solidity_prep.hpp>
#include <vulnfuse/util.hpp>

#include <json.hpp>

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace vulnfuse::pipeline
{
namespace
{
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int feature_format = 1;
constexpr const char* stage_artifacts[] = {"source.sol", "runtime.hex", "ops.txt", "graph.bin"};

fs::path feature_dir(const PipelineConfig& cfg, std::string_view id)
{
    return cfg.workspace / "features" / std::string{id};
}

std::string strip_0x(std::string hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.erase(0, 2);
    for (auto& c : hex)
        c = char(std::tolower(static_cast<unsigned char>(c)));
    return hex;
}

std::string input_hash(const PipelineConfig& cfg,
    const ContractRecord& rec,
    const std::string& source,
    const std::string& provider_identity)
{
    json j{
        {"format", feature_format},
        {"source", sha256_hex(source)},
        {"bytecode", rec.bytecode ? *rec.bytecode : ""},
        {"compile_mode", to_string(cfg.compile_mode)},
        {"embedding", provider_identity},
    };
    if (cfg.compile_mode != CompileMode::Never)
    {
        j["compiler"] = {{"command", cfg.compiler.command},
            {"version_hint", cfg.compiler.version_hint}, {"optimize", cfg.compiler.optimize}};
    }
    return sha256_hex(j.dump());
}

/// Runtime bytecode for `rec`, compiling when the mode asks for it.
std::pair<std::string, std::string> resolve_bytecode(const PipelineConfig& cfg,
    const ContractRecord& rec,
    const std::string& source)
{
    const bool have = rec.bytecode && !rec.bytecode->empty();
    if (have && cfg.compile_mode != CompileMode::Always)
        return {strip_0x(*rec.bytecode), "manifest"};
    if (cfg.compile_mode == CompileMode::Never)
        throw FeatureDerivationFailed{"no bytecode in the manifest and compilation is disabled"};
    auto compiled = evm::compile_source(source, cfg.compiler);
    return {strip_0x(std::move(compiled.runtime)), "compiler:" + compiled.name};
}

std::string join_lines(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines)
    {
        out += l;
        out += '\n';
    }
    return out;
}

evm::OpcodeSequence read_ops(const fs::path& file)
{
    evm::OpcodeSequence seq;
    std::istringstream in{read_file(file)};
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty())
            seq.mnemonics.push_back(line);
    }
    return seq;
}

bool up_to_date(const fs::path& dir, const std::string& hash)
{
    const auto meta_file = dir / "meta.json";
    if (!fs::is_regular_file(meta_file))
        return false;
    for (const char* name : stage_artifacts)
    {
        if (!fs::is_regular_file(dir / name))
            return false;
    }
    try
    {
        return json::parse(read_file(meta_file)).value("input_hash", "") == hash;
    }
    catch (const std::exception&)
    {
        return false;
    }
}

/// Stage one: everything that does not depend on the opcode vocabulary.
void materialize(const PipelineConfig& cfg,
    const ContractRecord& rec,
    const std::string& source,
    const std::string& hash,
    EmbeddingProvider& provider)
{
    const auto dir = feature_dir(cfg, rec.id);
    fs::create_directories(dir);
    fs::remove(dir / "meta.json");

    const auto clean = clean_source(source);
    write_file(dir / "source.sol", clean.text);

    auto [bytecode, origin] = resolve_bytecode(cfg, rec, source);
    const auto code = evm::parse_hex(bytecode);
    write_file(dir / "runtime.hex", bytecode + "\n");

    const auto instructions = evm::disassemble(code);
    const auto ops = evm::simplify_opcodes(instructions);
    write_file(dir / "ops.txt", join_lines(ops.mnemonics));

    const auto graph = build_cfg(instructions);
    write_file(dir / (rec.id + ".cfg.gv"), emit_dot(graph));
    const auto tensors = encode_graph(graph, provider);
    write_file(dir / "graph.bin", serialize_graph(tensors));

    const json meta{
        {"id", rec.id},
        {"label", to_string(rec.label)},
        {"input_hash", hash},
        {"bytecode_origin", origin},
        {"original_len", clean.original_len},
        {"cleaned_len", clean.cleaned_len},
        {"code_bytes", code.size()},
        {"instructions", instructions.size()},
        {"blocks", graph.blocks.size()},
        {"edges", graph.edges.size()},
        {"unresolved_jumps", graph.unresolved_jumps.size()},
        {"embedding", provider.identity()},
    };
    write_file(dir / "meta.json", meta.dump(2) + "\n");
}

void write_if_changed(const fs::path& file, std::string_view contents)
{
    if (fs::is_regular_file(file) && read_file(file) == contents)
        return;
    write_file(file, contents);
}

std::vector<ContractRecord> load_records(const PipelineConfig& cfg)
{
    if (cfg.manifest.empty())
        throw ConfigError{"no manifest configured"};
    return load_manifest(cfg.manifest);
}
}  // namespace

std::unique_ptr<EmbeddingProvider> open_provider(const PipelineConfig& cfg)
{
    auto settings = cfg.embedding;
    if (settings.cache_file.empty())
    {
        fs::create_directories(cfg.workspace);
        settings.cache_file = cfg.workspace / "embeddings.cache";
    }
    return make_provider(settings);
}

FeatureReport cmd_features(const PipelineConfig& cfg,
    const std::function<void(const std::string&)>& progress)
{
    const auto records = load_records(cfg);
    auto provider = open_provider(cfg);
    const auto identity = provider->identity();

    FeatureReport report;
    report.total = records.size();
    std::vector<char> ok(records.size(), 0);
    std::mutex mutex;
    std::atomic<size_t> next{0};

    const auto work = [&] {
        for (size_t i = next++; i < records.size(); i = next++)
        {
            const auto& rec = records[i];
            bool skipped = false;
            std::optional<RecordFailure> failure;
            try
            {
                const auto source = rec.read_source();
                const auto hash = input_hash(cfg, rec, source, identity);
                skipped = up_to_date(feature_dir(cfg, rec.id), hash);
                if (!skipped)
                    materialize(cfg, rec, source, hash, *provider);
            }
            catch (const Error& e)
            {
                failure = RecordFailure{rec.id, e.kind(), e.what()};
            }
            catch (const std::exception& e)
            {
                failure = RecordFailure{rec.id, "InternalError", e.what()};
            }
            std::lock_guard lock{mutex};
            if (failure)
                report.failures.push_back(*failure);
            else
            {
                ok[i] = 1;
                ++(skipped ? report.skipped : report.computed);
            }
            if (progress)
                progress(rec.id + (failure ? ": failed" : skipped ? ": unchanged" : ": done"));
        }
    };
    const unsigned workers =
        std::max(1u, std::min<unsigned>(cfg.workers, unsigned(records.size())));
    if (workers == 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    std::ranges::sort(report.failures, {}, &RecordFailure::id);
    json failures = json::array();
    for (const auto& f : report.failures)
        failures.push_back({{"id", f.id}, {"kind", f.kind}, {"message", f.message}});
    write_file(cfg.workspace / "failures.json", failures.dump(2) + "\n");

    std::vector<ContractRecord> good;
    for (size_t i = 0; i < records.size(); ++i)
    {
        if (ok[i])
            good.push_back(records[i]);
    }
    if (good.empty())
        return report;

    const auto split = stratified_split(good, cfg.test_fraction, cfg.split_seed);
    const json split_json{{"seed", split.seed}, {"test_fraction", split.test_fraction},
        {"train", split.train}, {"test", split.test}};
    write_if_changed(cfg.workspace / "split.json", split_json.dump(2) + "\n");
    report.train_size = split.train.size();
    report.test_size = split.test.size();

    std::vector<evm::OpcodeSequence> train_ops;
    for (const auto& id : split.train)
        train_ops.push_back(read_ops(feature_dir(cfg, id) / "ops.txt"));
    const auto vocab = evm::OpcodeVocab::fit(train_ops);
    write_if_changed(cfg.workspace / "vocab.json", vocab.to_json());
    report.vocab_size = vocab.size();

    for (const auto& rec : good)
    {
        const auto dir = feature_dir(cfg, rec.id);
        const auto ids = evm::tokenize_and_pad(
            read_ops(dir / "ops.txt"), vocab, size_t(cfg.model.max_opcode_len));
        write_if_changed(dir / "ids.bin", evm::encode_ids(ids));
    }
    return report;
}

DatasetSplit load_split(const PipelineConfig& cfg)
{
    const auto file = cfg.workspace / "split.json";
    if (!fs::is_regular_file(file))
        throw MissingFeature{file.string() + " not found; run the features command first"};
    const auto j = json::parse(read_file(file));
    DatasetSplit s;
    s.seed = j.at("seed").get<uint64_t>();
    s.test_fraction = j.at("test_fraction").get<double>();
    s.train = j.at("train").get<std::vector<std::string>>();
    s.test = j.at("test").get<std::vector<std::string>>();
    return s;
}

evm::OpcodeVocab load_vocab(const PipelineConfig& cfg)
{
    const auto file = cfg.workspace / "vocab.json";
    if (!fs::is_regular_file(file))
        throw MissingFeature{file.string() + " not found; run the features command first"};
    return evm::OpcodeVocab::from_json(read_file(file));
}

std::vector<model::Sample> load_samples(const PipelineConfig& cfg,
    std::span<const std::string> ids,
    const model::FeatureKinds& needs)
{
    std::unordered_map<std::string, Label> labels;
    for (const auto& r : load_records(cfg))
        labels.emplace(r.id, r.label);

    std::vector<model::Sample> out;
    out.reserve(ids.size());
    for (const auto& id : ids)
    {
        model::Sample s;
        s.id = id;
        if (const auto it = labels.find(id); it != labels.end())
            s.label = int32_t(it->second);
        const auto dir = feature_dir(cfg, id);
        if (needs.text && fs::is_regular_file(dir / "source.sol"))
            s.text = read_file(dir / "source.sol");
        if (needs.opcodes && fs::is_regular_file(dir / "ids.bin"))
            s.opcode_ids = evm::decode_ids(read_file(dir / "ids.bin"));
        if (needs.graph && fs::is_regular_file(dir / "graph.bin"))
            s.graph = deserialize_graph(read_file(dir / "graph.bin"));
        out.push_back(std::move(s));
    }
    return out;
}

IngestSummary cmd_ingest(const PipelineConfig& cfg)
{
    const auto records = load_records(cfg);
    IngestSummary s;
    s.records = records.size();
    s.histogram = class_histogram(records);
    json entries = json::array();
    for (const auto& r : records)
    {
        if (r.bytecode && !r.bytecode->empty())
            ++s.with_bytecode;
        (void)r.read_source();
        entries.push_back(
            {{"id", r.id}, {"label", to_string(r.label)}, {"source_path", r.source_path.string()},
                {"provenance", to_string(r.provenance)}, {"has_bytecode", r.bytecode.has_value()}});
    }
    const json summary{
        {"manifest", cfg.manifest.string()},
        {"records", s.records},
        {"with_bytecode", s.with_bytecode},
        {"histogram", {{"arithmetic", s.histogram[0]}, {"reentrancy", s.histogram[1]},
                          {"clean", s.histogram[2]}}},
        {"entries", entries},
    };
    fs::create_directories(cfg.workspace);
    write_file(cfg.workspace / "ingest.json", summary.dump(2) + "\n");
    return s;
}

size_t cmd_clean(const PipelineConfig& cfg)
{
    const auto records = load_records(cfg);
    const auto dir = cfg.workspace / "clean";
    fs::create_directories(dir);
    for (const auto& r : records)
        write_if_changed(dir / (r.id + ".sol"), clean_source(r.read_source()).text);
    return records.size();
}
}  // namespace vulnfuse::pipeline

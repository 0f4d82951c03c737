// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/embedding.hpp>

#include <support/cfg_checks.hpp>

#include <doctest.h>

#include <random>

using namespace vulnfuse;

namespace
{
ControlFlowGraph cfg_of(std::string_view hex)
{
    return build_cfg(evm::disassemble(hex));
}

EmbeddingProvider local_provider()
{
    return EmbeddingProvider{std::make_unique<LocalEmbeddingBackend>(42)};
}

size_t count(std::string_view haystack, std::string_view needle)
{
    size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos;
        pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}
}  // namespace

TEST_CASE("empty program")
{
    const auto cfg = build_cfg({});
    CHECK(cfg.blocks.empty());
    CHECK(cfg.edges.empty());
    std::string dot = emit_dot(cfg);
    std::erase_if(dot, [](char c) { return c == ' ' || c == '\n'; });
    CHECK(dot == "digraphcfg{}");
}

TEST_CASE("static jump over a STOP")
{
    // PUSH1 0x04, JUMP | STOP | JUMPDEST, STOP
    const auto cfg = cfg_of("600456005b00");
    REQUIRE(cfg.blocks.size() == 3);
    CHECK(cfg.blocks[0].terminator == Terminator::Jump);
    CHECK(cfg.blocks[1].terminator == Terminator::Stop);
    CHECK(cfg.blocks[1].start_offset == 3);
    CHECK(cfg.blocks[2].start_offset == 4);
    CHECK(cfg.blocks[2].terminator == Terminator::Stop);
    REQUIRE(cfg.edges.size() == 1);
    CHECK(cfg.edges[0] == Edge{0, 2, EdgeKind::Jump});
    CHECK(cfg.unresolved_jumps.empty());

    const auto dot = emit_dot(cfg);
    CHECK(count(dot, "[shape=box") == 3);
    CHECK(count(dot, "->") == 1);
    CHECK(dot.find("b0 -> b2 [kind=jump") != std::string::npos);
    CHECK(emit_dot(cfg) == dot);
}

TEST_CASE("dynamic JUMPI target is unresolved but keeps its fallthrough")
{
    // PUSH1 0x01, CALLDATALOAD, JUMPI | JUMPDEST, STOP
    const auto cfg = cfg_of("600135575b00");
    REQUIRE(cfg.blocks.size() == 2);
    CHECK(cfg.blocks[0].terminator == Terminator::JumpI);
    CHECK(cfg.unresolved_jumps == std::vector<uint32_t>{0});
    REQUIRE(cfg.edges.size() == 1);
    CHECK(cfg.edges[0] == Edge{0, 1, EdgeKind::BranchFalse});
}

TEST_CASE("resolved JUMPI has both branches")
{
    // PUSH1 1, PUSH1 0x08, JUMPI | PUSH1 0, STOP | JUMPDEST(8), STOP ; plus fallthrough into
    // JUMPDEST
    const auto cfg = cfg_of(
        "6001600857600000"
        "5b00");
    REQUIRE(cfg.blocks.size() == 3);
    CHECK(cfg.edges ==
          std::vector<Edge>{{0, 1, EdgeKind::BranchFalse}, {0, 2, EdgeKind::BranchTrue}});
    CHECK(test::cfg_violation(evm::disassemble("6001600857600000"
                                               "5b00"),
        cfg)
            .empty());
}

TEST_CASE("jump into a non-JUMPDEST offset is unresolved")
{
    // PUSH1 0x03, JUMP, ADD (offset 3, not a JUMPDEST)
    const auto cfg = cfg_of("60035601");
    CHECK(cfg.edges.empty());
    CHECK(cfg.unresolved_jumps == std::vector<uint32_t>{0});
}

TEST_CASE("fallthrough into a JUMPDEST block")
{
    const auto cfg = cfg_of(
        "01"
        "5b"
        "00");
    REQUIRE(cfg.blocks.size() == 2);
    CHECK(cfg.blocks[0].terminator == Terminator::FallThrough);
    CHECK(cfg.edges == std::vector<Edge>{{0, 1, EdgeKind::FallThrough}});
}

TEST_CASE("undefined opcodes terminate a block")
{
    const auto cfg = cfg_of("01fe02");
    REQUIRE(cfg.blocks.size() == 2);
    CHECK(cfg.blocks[0].terminator == Terminator::Invalid);
    CHECK(cfg.edges.empty());
}

TEST_CASE("random programs keep the structural invariants")
{
    std::mt19937_64 rng{77};
    for (int trial = 0; trial < 2000; ++trial)
    {
        std::vector<uint8_t> code(rng() % 513);
        for (auto& b : code)
        {
            // Bias toward control-flow bytes so jumps and JUMPDESTs are common.
            static constexpr uint8_t hot[] = {0x56, 0x57, 0x5b, 0x60, 0x61, 0x00, 0xfd};
            b = rng() % 4 == 0 ? hot[rng() % std::size(hot)] : uint8_t(rng());
        }
        const auto ins = evm::disassemble(code);
        const auto cfg = build_cfg(ins);
        INFO("trial " << trial);
        CHECK(test::cfg_violation(ins, cfg) == "");
    }
}

TEST_CASE("graph encoding")
{
    auto provider = local_provider();
    const auto cfg = cfg_of("600456005b00");
    const auto g = encode_graph(cfg, provider);
    CHECK(g.num_nodes == 3);
    CHECK(g.feature_dim == 1536);
    CHECK(g.node_features.size() == 3 * 1536);
    CHECK(g.num_edges() == 1);
    CHECK(g.edge_src == std::vector<int32_t>{0});
    CHECK(g.edge_dst == std::vector<int32_t>{2});

    // The node text is the simplified mnemonic list behind the start offset.
    CHECK(block_text(cfg.blocks[0]) == "0 PUSH1 JUMP");
    const auto expected = LocalEmbeddingBackend::embed("0 PUSH1 JUMP", 42);
    CHECK(std::equal(expected.begin(), expected.end(), g.row(0).begin()));

    auto other = local_provider();
    CHECK(encode_graph(cfg_of("600456005b00"), other) == g);

    const auto empty = encode_graph(ControlFlowGraph{}, provider);
    CHECK(empty.num_nodes == 1);
    CHECK(empty.num_edges() == 0);
    const auto sentinel = LocalEmbeddingBackend::embed(empty_cfg_text, 42);
    CHECK(std::equal(sentinel.begin(), sentinel.end(), empty.row(0).begin()));
}

TEST_CASE("graph blobs round-trip")
{
    auto provider = local_provider();
    const auto g = encode_graph(cfg_of("6001600857600000"
                                       "5b00"),
        provider);
    const auto blob = serialize_graph(g);
    CHECK(deserialize_graph(blob) == g);
    CHECK_THROWS_AS((void)deserialize_graph(blob.substr(0, blob.size() - 1)), InvalidArgument);
    CHECK_THROWS_AS((void)deserialize_graph("nope"), InvalidArgument);
}

TEST_CASE("edge text")
{
    const auto cfg = cfg_of("600456005b00");
    CHECK(edge_text(cfg, cfg.edges[0]) == "0 -> 4 jump");
}

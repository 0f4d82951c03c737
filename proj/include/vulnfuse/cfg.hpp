// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/evm.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vulnfuse
{
class EmbeddingProvider;

enum class Terminator : uint8_t
{
    Jump,
    JumpI,
    Stop,
    Return,
    Revert,
    SelfDestruct,
    Invalid,
    FallThrough,
};

enum class EdgeKind : uint8_t
{
    Jump,
    BranchTrue,
    BranchFalse,
    FallThrough,
};

[[nodiscard]] std::string_view to_string(Terminator t) noexcept;
[[nodiscard]] std::string_view to_string(EdgeKind k) noexcept;

struct BasicBlock
{
    uint32_t id = 0;
    uint32_t start_offset = 0;
    std::vector<evm::Instruction> instructions;
    Terminator terminator = Terminator::FallThrough;
};

struct Edge
{
    uint32_t src = 0;
    uint32_t dst = 0;
    EdgeKind kind = EdgeKind::FallThrough;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ControlFlowGraph
{
    std::vector<BasicBlock> blocks;
    /// Sorted by (src, dst, kind).
    std::vector<Edge> edges;
    /// Blocks ending in JUMP/JUMPI whose target could not be resolved statically.
    std::vector<uint32_t> unresolved_jumps;
};

/// Splits the linear sweep into basic blocks and resolves jump targets from an immediately
/// preceding PUSH. A resolved target must be the start of a JUMPDEST block.
[[nodiscard]] ControlFlowGraph build_cfg(std::span<const evm::Instruction> instructions);

/// Graphviz digraph: one box per block labelled with its start offset and mnemonics, edges
/// carrying a `kind` attribute. Deterministic for a given graph.
[[nodiscard]] std::string emit_dot(const ControlFlowGraph& cfg);

/// Text fed to the embedding provider for a block: "<offset> <simplified mnemonics...>".
[[nodiscard]] std::string block_text(const BasicBlock& block);

/// "<src offset> -> <dst offset> <kind>". Recorded only; the model consumes node features.
[[nodiscard]] std::string edge_text(const ControlFlowGraph& cfg, const Edge& edge);

inline constexpr std::string_view empty_cfg_text = "EMPTY_CFG";

/// Node features (N x dim, row-major) plus a directed edge list.
struct GraphTensors
{
    size_t num_nodes = 0;
    size_t feature_dim = 0;
    std::vector<float> node_features;
    std::vector<int32_t> edge_src;
    std::vector<int32_t> edge_dst;

    [[nodiscard]] size_t num_edges() const noexcept { return edge_src.size(); }
    [[nodiscard]] std::span<const float> row(size_t i) const noexcept
    {
        return {node_features.data() + i * feature_dim, feature_dim};
    }

    friend bool operator==(const GraphTensors&, const GraphTensors&) = default;
};

/// Embeds every block's text; an empty graph becomes one node embedded from "EMPTY_CFG".
/// Provider errors surface as ProviderFailure naming the block.
[[nodiscard]] GraphTensors encode_graph(const ControlFlowGraph& cfg, EmbeddingProvider& provider);

/// Binary layout: "VFGT", u32 version, u32 N, u32 dim, u32 E, N*dim f32, E i32 src, E i32 dst.
[[nodiscard]] std::string serialize_graph(const GraphTensors& g);
[[nodiscard]] GraphTensors deserialize_graph(std::string_view bytes);
}  // namespace vulnfuse

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/embedding.hpp>
#include <vulnfuse/error.hpp>

#include <algorithm>
#include <bit>
#include <cstring>
#include <optional>
#include <unordered_map>

namespace vulnfuse
{
namespace
{
std::optional<Terminator> terminator_of(uint8_t opcode) noexcept
{
    switch (opcode)
    {
    case evm::OP_JUMP:
        return Terminator::Jump;
    case evm::OP_JUMPI:
        return Terminator::JumpI;
    case evm::OP_STOP:
        return Terminator::Stop;
    case evm::OP_RETURN:
        return Terminator::Return;
    case evm::OP_REVERT:
        return Terminator::Revert;
    case evm::OP_SELFDESTRUCT:
        return Terminator::SelfDestruct;
    default:
        if (!evm::is_defined(opcode))
            return Terminator::Invalid;
        return std::nullopt;
    }
}

/// Target pushed by the instruction right before the block's final jump, if static.
std::optional<uint64_t> static_jump_target(const BasicBlock& block) noexcept
{
    const auto& ins = block.instructions;
    if (ins.size() < 2)
        return std::nullopt;
    const auto& push = ins[ins.size() - 2];
    const bool is_push = push.opcode == 0x5f || evm::push_size(push.opcode) > 0;
    if (!is_push || push.truncated())
        return std::nullopt;
    uint64_t value = 0;
    for (const auto b : push.operand)
    {
        if (value >> 56 != 0)
            return std::nullopt;
        value = value << 8 | b;
    }
    return value;
}

void put_u32(std::string& out, uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(std::string_view in, size_t& pos)
{
    if (pos + 4 > in.size())
        throw InvalidArgument{"graph blob truncated"};
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= uint32_t(static_cast<uint8_t>(in[pos + size_t(i)])) << (8 * i);
    pos += 4;
    return v;
}
}  // namespace

std::string_view to_string(Terminator t) noexcept
{
    switch (t)
    {
    case Terminator::Jump:
        return "jump";
    case Terminator::JumpI:
        return "jumpi";
    case Terminator::Stop:
        return "stop";
    case Terminator::Return:
        return "return";
    case Terminator::Revert:
        return "revert";
    case Terminator::SelfDestruct:
        return "selfdestruct";
    case Terminator::Invalid:
        return "invalid";
    case Terminator::FallThrough:
        return "fallthrough";
    }
    return "fallthrough";
}

std::string_view to_string(EdgeKind k) noexcept
{
    switch (k)
    {
    case EdgeKind::Jump:
        return "jump";
    case EdgeKind::BranchTrue:
        return "branch_true";
    case EdgeKind::BranchFalse:
        return "branch_false";
    case EdgeKind::FallThrough:
        return "fallthrough";
    }
    return "fallthrough";
}

ControlFlowGraph build_cfg(std::span<const evm::Instruction> instructions)
{
    ControlFlowGraph cfg;

    BasicBlock current;
    const auto flush = [&](Terminator t) {
        current.id = static_cast<uint32_t>(cfg.blocks.size());
        current.terminator = t;
        cfg.blocks.push_back(std::move(current));
        current = BasicBlock{};
    };

    for (const auto& ins : instructions)
    {
        if (ins.opcode == evm::OP_JUMPDEST && !current.instructions.empty())
            flush(Terminator::FallThrough);
        if (current.instructions.empty())
            current.start_offset = ins.offset;
        current.instructions.push_back(ins);
        if (const auto t = terminator_of(ins.opcode))
            flush(*t);
    }
    if (!current.instructions.empty())
        flush(Terminator::FallThrough);

    std::unordered_map<uint64_t, uint32_t> jumpdest_blocks;
    for (const auto& b : cfg.blocks)
    {
        if (b.instructions.front().opcode == evm::OP_JUMPDEST)
            jumpdest_blocks.emplace(b.start_offset, b.id);
    }

    for (const auto& b : cfg.blocks)
    {
        const bool has_next = b.id + 1 < cfg.blocks.size();
        switch (b.terminator)
        {
        case Terminator::Jump:
        case Terminator::JumpI:
        {
            const auto kind =
                b.terminator == Terminator::Jump ? EdgeKind::Jump : EdgeKind::BranchTrue;
            const auto target = static_jump_target(b);
            const auto it = target ? jumpdest_blocks.find(*target) : jumpdest_blocks.end();
            if (it != jumpdest_blocks.end())
                cfg.edges.push_back({b.id, it->second, kind});
            else
                cfg.unresolved_jumps.push_back(b.id);
            if (b.terminator == Terminator::JumpI && has_next)
                cfg.edges.push_back({b.id, b.id + 1, EdgeKind::BranchFalse});
            break;
        }
        case Terminator::FallThrough:
            if (has_next)
                cfg.edges.push_back({b.id, b.id + 1, EdgeKind::FallThrough});
            break;
        default:
            break;
        }
    }
    std::ranges::sort(cfg.edges);
    return cfg;
}

std::string emit_dot(const ControlFlowGraph& cfg)
{
    std::string out = "digraph cfg {\n";
    std::vector<bool> unresolved(cfg.blocks.size(), false);
    for (const auto id : cfg.unresolved_jumps)
        unresolved[id] = true;

    for (const auto& b : cfg.blocks)
    {
        out +=
            "  b" + std::to_string(b.id) + " [shape=box label=\"" + std::to_string(b.start_offset);
        for (const auto& ins : b.instructions)
        {
            out += "\\n";
            out += ins.mnemonic();
        }
        out += "\"";
        if (unresolved[b.id])
            out += " unresolved=true";
        out += "];\n";
    }
    for (const auto& e : cfg.edges)
    {
        const auto kind = to_string(e.kind);
        out += "  b" + std::to_string(e.src) + " -> b" + std::to_string(e.dst) +
               " [kind=" + std::string{kind} + " label=\"" + std::string{kind} + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string block_text(const BasicBlock& block)
{
    std::string text = std::to_string(block.start_offset);
    for (const auto& ins : block.instructions)
    {
        text.push_back(' ');
        text += evm::simplified_mnemonic(ins.opcode);
    }
    return text;
}

std::string edge_text(const ControlFlowGraph& cfg, const Edge& edge)
{
    return std::to_string(cfg.blocks.at(edge.src).start_offset) + " -> " +
           std::to_string(cfg.blocks.at(edge.dst).start_offset) + " " +
           std::string{to_string(edge.kind)};
}

GraphTensors encode_graph(const ControlFlowGraph& cfg, EmbeddingProvider& provider)
{
    std::vector<std::string> texts;
    if (cfg.blocks.empty())
        texts.emplace_back(empty_cfg_text);
    for (const auto& b : cfg.blocks)
        texts.push_back(block_text(b));

    std::vector<EmbeddingVector> vectors;
    try
    {
        vectors = provider.embed_batch(texts);
    }
    catch (const BatchEmbeddingError& e)
    {
        const auto block = cfg.blocks.empty() ? std::string{"<empty>"} : std::to_string(e.index());
        throw ProviderFailure{"block " + block + ": " + e.what()};
    }

    GraphTensors g;
    g.num_nodes = texts.size();
    g.feature_dim = embedding_dim;
    g.node_features.reserve(g.num_nodes * embedding_dim);
    for (const auto& v : vectors)
        g.node_features.insert(g.node_features.end(), v.begin(), v.end());
    for (const auto& e : cfg.edges)
    {
        g.edge_src.push_back(static_cast<int32_t>(e.src));
        g.edge_dst.push_back(static_cast<int32_t>(e.dst));
    }
    return g;
}

std::string serialize_graph(const GraphTensors& g)
{
    std::string out = "VFGT";
    put_u32(out, 1);
    put_u32(out, static_cast<uint32_t>(g.num_nodes));
    put_u32(out, static_cast<uint32_t>(g.feature_dim));
    put_u32(out, static_cast<uint32_t>(g.num_edges()));
    const auto header = out.size();
    out.resize(header + g.node_features.size() * 4 + g.num_edges() * 8);
    static_assert(std::endian::native == std::endian::little, "graph blobs are little-endian");
    std::memcpy(out.data() + header, g.node_features.data(), g.node_features.size() * 4);
    auto* p = out.data() + header + g.node_features.size() * 4;
    std::memcpy(p, g.edge_src.data(), g.num_edges() * 4);
    std::memcpy(p + g.num_edges() * 4, g.edge_dst.data(), g.num_edges() * 4);
    return out;
}

GraphTensors deserialize_graph(std::string_view bytes)
{
    if (!bytes.starts_with("VFGT"))
        throw InvalidArgument{"not a graph blob"};
    size_t pos = 4;
    if (get_u32(bytes, pos) != 1)
        throw InvalidArgument{"unsupported graph blob version"};
    GraphTensors g;
    g.num_nodes = get_u32(bytes, pos);
    g.feature_dim = get_u32(bytes, pos);
    const size_t num_edges = get_u32(bytes, pos);
    const size_t need = g.num_nodes * g.feature_dim * 4 + num_edges * 8;
    if (bytes.size() - pos != need)
        throw InvalidArgument{"graph blob size mismatch"};
    g.node_features.resize(g.num_nodes * g.feature_dim);
    g.edge_src.resize(num_edges);
    g.edge_dst.resize(num_edges);
    std::memcpy(g.node_features.data(), bytes.data() + pos, g.node_features.size() * 4);
    pos += g.node_features.size() * 4;
    std::memcpy(g.edge_src.data(), bytes.data() + pos, num_edges * 4);
    std::memcpy(g.edge_dst.data(), bytes.data() + pos + num_edges * 4, num_edges * 4);
    for (size_t i = 0; i < num_edges; ++i)
    {
        if (g.edge_src[i] < 0 || size_t(g.edge_src[i]) >= g.num_nodes || g.edge_dst[i] < 0 ||
            size_t(g.edge_dst[i]) >= g.num_nodes)
            throw InvalidArgument{"graph blob edge index out of range"};
    }
    return g;
}
}  // namespace vulnfuse

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/evm.hpp>

#include <algorithm>
#include <cstdio>

namespace vulnfuse::evm
{
namespace
{
int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
}  // namespace

std::vector<uint8_t> parse_hex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    if (hex.size() % 2 != 0)
        throw OddHexLength{"hex string has " + std::to_string(hex.size()) + " digits"};

    std::vector<uint8_t> bytes(hex.size() / 2);
    for (size_t i = 0; i < bytes.size(); ++i)
    {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw NonHexCharacter{"at position " + std::to_string(hi < 0 ? 2 * i : 2 * i + 1)};
        bytes[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return bytes;
}

std::vector<Instruction> disassemble(std::span<const uint8_t> code)
{
    std::vector<Instruction> out;
    out.reserve(code.size());
    for (size_t pc = 0; pc < code.size();)
    {
        Instruction ins;
        ins.offset = static_cast<uint32_t>(pc);
        ins.opcode = code[pc];
        const size_t want = push_size(ins.opcode);
        const size_t have = std::min(want, code.size() - pc - 1);
        ins.operand.assign(code.begin() + long(pc) + 1, code.begin() + long(pc + 1 + have));
        pc += 1 + have;
        out.push_back(std::move(ins));
    }
    return out;
}

std::vector<Instruction> disassemble(std::string_view hex)
{
    return disassemble(parse_hex(hex));
}

std::string format_listing(std::span<const Instruction> instructions)
{
    std::string out;
    for (const auto& ins : instructions)
    {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%u: ", ins.offset);
        out += buf;
        out += ins.mnemonic();
        if (push_size(ins.opcode) > 0)
        {
            out += " 0x";
            for (const auto b : ins.operand)
            {
                std::snprintf(buf, sizeof(buf), "%02x", b);
                out += buf;
            }
            if (ins.truncated())
                out += " (truncated)";
        }
        out.push_back('\n');
    }
    return out;
}

OpcodeSequence simplify_opcodes(std::span<const Instruction> instructions)
{
    OpcodeSequence seq;
    seq.mnemonics.reserve(instructions.size());
    for (const auto& ins : instructions)
        seq.mnemonics.emplace_back(simplified_mnemonic(ins.opcode));
    return seq;
}
}  // namespace vulnfuse::evm

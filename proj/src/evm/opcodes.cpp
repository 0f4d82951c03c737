// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/evm.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace vulnfuse::evm
{
namespace
{
struct OpcodeTable
{
    std::array<std::string, 256> names;
    std::array<std::string, 256> simplified;
    std::array<bool, 256> defined{};

    OpcodeTable()
    {
        const auto set = [this](unsigned op, std::string name) {
            names[op] = std::move(name);
            defined[op] = true;
        };

        static constexpr const char* arithmetic[] = {"STOP", "ADD", "MUL", "SUB", "DIV", "SDIV",
            "MOD", "SMOD", "ADDMOD", "MULMOD", "EXP", "SIGNEXTEND"};
        for (unsigned i = 0; i < std::size(arithmetic); ++i)
            set(0x00 + i, arithmetic[i]);

        static constexpr const char* logic[] = {"LT", "GT", "SLT", "SGT", "EQ", "ISZERO", "AND",
            "OR", "XOR", "NOT", "BYTE", "SHL", "SHR", "SAR"};
        for (unsigned i = 0; i < std::size(logic); ++i)
            set(0x10 + i, logic[i]);

        set(0x20, "KECCAK256");

        static constexpr const char* environment[] = {"ADDRESS", "BALANCE", "ORIGIN", "CALLER",
            "CALLVALUE", "CALLDATALOAD", "CALLDATASIZE", "CALLDATACOPY", "CODESIZE", "CODECOPY",
            "GASPRICE", "EXTCODESIZE", "EXTCODECOPY", "RETURNDATASIZE", "RETURNDATACOPY",
            "EXTCODEHASH"};
        for (unsigned i = 0; i < std::size(environment); ++i)
            set(0x30 + i, environment[i]);

        static constexpr const char* block[] = {"BLOCKHASH", "COINBASE", "TIMESTAMP", "NUMBER",
            "PREVRANDAO", "GASLIMIT", "CHAINID", "SELFBALANCE", "BASEFEE", "BLOBHASH",
            "BLOBBASEFEE"};
        for (unsigned i = 0; i < std::size(block); ++i)
            set(0x40 + i, block[i]);

        static constexpr const char* flow[] = {"POP", "MLOAD", "MSTORE", "MSTORE8", "SLOAD",
            "SSTORE", "JUMP", "JUMPI", "PC", "MSIZE", "GAS", "JUMPDEST", "TLOAD", "TSTORE", "MCOPY",
            "PUSH0"};
        for (unsigned i = 0; i < std::size(flow); ++i)
            set(0x50 + i, flow[i]);

        for (unsigned n = 1; n <= 32; ++n)
            set(0x5f + n, "PUSH" + std::to_string(n));
        for (unsigned n = 1; n <= 16; ++n)
        {
            set(0x7f + n, "DUP" + std::to_string(n));
            set(0x8f + n, "SWAP" + std::to_string(n));
        }
        for (unsigned n = 0; n <= 4; ++n)
            set(0xa0 + n, "LOG" + std::to_string(n));

        set(0xf0, "CREATE");
        set(0xf1, "CALL");
        set(0xf2, "CALLCODE");
        set(0xf3, "RETURN");
        set(0xf4, "DELEGATECALL");
        set(0xf5, "CREATE2");
        set(0xfa, "STATICCALL");
        set(0xfd, "REVERT");
        set(0xff, "SELFDESTRUCT");

        for (unsigned op = 0; op < 256; ++op)
        {
            if (!defined[op])
            {
                char buf[16];
                std::snprintf(buf, sizeof(buf), "INVALID_0x%02X", op);
                names[op] = buf;
            }
            simplified[op] = names[op];
        }
        for (unsigned op = 0x80; op <= 0x8f; ++op)
            simplified[op] = "DUP";
        for (unsigned op = 0x90; op <= 0x9f; ++op)
            simplified[op] = "SWAP";
        for (unsigned op = 0x64; op <= 0x7f; ++op)  // PUSH5..PUSH32
            simplified[op] = "PUSH";
        for (unsigned op = 0xa1; op <= 0xa4; ++op)  // LOG1..LOG4
            simplified[op] = "LOG";
    }
};

const OpcodeTable& table()
{
    static const OpcodeTable t;
    return t;
}
}  // namespace

std::string_view mnemonic(uint8_t opcode) noexcept
{
    return table().names[opcode];
}

bool is_defined(uint8_t opcode) noexcept
{
    return table().defined[opcode];
}

std::string_view simplified_mnemonic(uint8_t opcode) noexcept
{
    return table().simplified[opcode];
}

std::string_view functional_group(uint8_t opcode) noexcept
{
    if (!is_defined(opcode))
        return "invalid";
    switch (opcode >> 4)
    {
    case 0x0:
        return "stop_arithmetic";
    case 0x1:
        return "comparison_bitwise";
    case 0x2:
        return "hashing";
    case 0x3:
        return "environment";
    case 0x4:
        return "block";
    case 0x5:
        return opcode == 0x5f ? "push" : "stack_memory_storage_flow";
    case 0x6:
    case 0x7:
        return "push";
    case 0x8:
        return "duplication";
    case 0x9:
        return "exchange";
    case 0xa:
        return "logging";
    default:
        return "system";
    }
}
}  // namespace vulnfuse::evm

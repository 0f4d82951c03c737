// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string_view>

// Reference EVM opcode names (Cancun) and their simplified forms, written out literally
// so tests do not depend on the library's own table.
namespace vulnfuse::test
{
inline constexpr std::array<std::string_view, 256> reference_mnemonics = {
    // 0x00
    "STOP",
    "ADD",
    "MUL",
    "SUB",
    "DIV",
    "SDIV",
    "MOD",
    "SMOD",
    "ADDMOD",
    "MULMOD",
    "EXP",
    "SIGNEXTEND",
    "INVALID_0x0C",
    "INVALID_0x0D",
    "INVALID_0x0E",
    "INVALID_0x0F",
    // 0x10
    "LT",
    "GT",
    "SLT",
    "SGT",
    "EQ",
    "ISZERO",
    "AND",
    "OR",
    "XOR",
    "NOT",
    "BYTE",
    "SHL",
    "SHR",
    "SAR",
    "INVALID_0x1E",
    "INVALID_0x1F",
    // 0x20
    "KECCAK256",
    "INVALID_0x21",
    "INVALID_0x22",
    "INVALID_0x23",
    "INVALID_0x24",
    "INVALID_0x25",
    "INVALID_0x26",
    "INVALID_0x27",
    "INVALID_0x28",
    "INVALID_0x29",
    "INVALID_0x2A",
    "INVALID_0x2B",
    "INVALID_0x2C",
    "INVALID_0x2D",
    "INVALID_0x2E",
    "INVALID_0x2F",
    // 0x30
    "ADDRESS",
    "BALANCE",
    "ORIGIN",
    "CALLER",
    "CALLVALUE",
    "CALLDATALOAD",
    "CALLDATASIZE",
    "CALLDATACOPY",
    "CODESIZE",
    "CODECOPY",
    "GASPRICE",
    "EXTCODESIZE",
    "EXTCODECOPY",
    "RETURNDATASIZE",
    "RETURNDATACOPY",
    "EXTCODEHASH",
    // 0x40
    "BLOCKHASH",
    "COINBASE",
    "TIMESTAMP",
    "NUMBER",
    "PREVRANDAO",
    "GASLIMIT",
    "CHAINID",
    "SELFBALANCE",
    "BASEFEE",
    "BLOBHASH",
    "BLOBBASEFEE",
    "INVALID_0x4B",
    "INVALID_0x4C",
    "INVALID_0x4D",
    "INVALID_0x4E",
    "INVALID_0x4F",
    // 0x50
    "POP",
    "MLOAD",
    "MSTORE",
    "MSTORE8",
    "SLOAD",
    "SSTORE",
    "JUMP",
    "JUMPI",
    "PC",
    "MSIZE",
    "GAS",
    "JUMPDEST",
    "TLOAD",
    "TSTORE",
    "MCOPY",
    "PUSH0",
    // 0x60
    "PUSH1",
    "PUSH2",
    "PUSH3",
    "PUSH4",
    "PUSH5",
    "PUSH6",
    "PUSH7",
    "PUSH8",
    "PUSH9",
    "PUSH10",
    "PUSH11",
    "PUSH12",
    "PUSH13",
    "PUSH14",
    "PUSH15",
    "PUSH16",
    // 0x70
    "PUSH17",
    "PUSH18",
    "PUSH19",
    "PUSH20",
    "PUSH21",
    "PUSH22",
    "PUSH23",
    "PUSH24",
    "PUSH25",
    "PUSH26",
    "PUSH27",
    "PUSH28",
    "PUSH29",
    "PUSH30",
    "PUSH31",
    "PUSH32",
    // 0x80
    "DUP1",
    "DUP2",
    "DUP3",
    "DUP4",
    "DUP5",
    "DUP6",
    "DUP7",
    "DUP8",
    "DUP9",
    "DUP10",
    "DUP11",
    "DUP12",
    "DUP13",
    "DUP14",
    "DUP15",
    "DUP16",
    // 0x90
    "SWAP1",
    "SWAP2",
    "SWAP3",
    "SWAP4",
    "SWAP5",
    "SWAP6",
    "SWAP7",
    "SWAP8",
    "SWAP9",
    "SWAP10",
    "SWAP11",
    "SWAP12",
    "SWAP13",
    "SWAP14",
    "SWAP15",
    "SWAP16",
    // 0xA0
    "LOG0",
    "LOG1",
    "LOG2",
    "LOG3",
    "LOG4",
    "INVALID_0xA5",
    "INVALID_0xA6",
    "INVALID_0xA7",
    "INVALID_0xA8",
    "INVALID_0xA9",
    "INVALID_0xAA",
    "INVALID_0xAB",
    "INVALID_0xAC",
    "INVALID_0xAD",
    "INVALID_0xAE",
    "INVALID_0xAF",
    // 0xB0
    "INVALID_0xB0",
    "INVALID_0xB1",
    "INVALID_0xB2",
    "INVALID_0xB3",
    "INVALID_0xB4",
    "INVALID_0xB5",
    "INVALID_0xB6",
    "INVALID_0xB7",
    "INVALID_0xB8",
    "INVALID_0xB9",
    "INVALID_0xBA",
    "INVALID_0xBB",
    "INVALID_0xBC",
    "INVALID_0xBD",
    "INVALID_0xBE",
    "INVALID_0xBF",
    // 0xC0
    "INVALID_0xC0",
    "INVALID_0xC1",
    "INVALID_0xC2",
    "INVALID_0xC3",
    "INVALID_0xC4",
    "INVALID_0xC5",
    "INVALID_0xC6",
    "INVALID_0xC7",
    "INVALID_0xC8",
    "INVALID_0xC9",
    "INVALID_0xCA",
    "INVALID_0xCB",
    "INVALID_0xCC",
    "INVALID_0xCD",
    "INVALID_0xCE",
    "INVALID_0xCF",
    // 0xD0
    "INVALID_0xD0",
    "INVALID_0xD1",
    "INVALID_0xD2",
    "INVALID_0xD3",
    "INVALID_0xD4",
    "INVALID_0xD5",
    "INVALID_0xD6",
    "INVALID_0xD7",
    "INVALID_0xD8",
    "INVALID_0xD9",
    "INVALID_0xDA",
    "INVALID_0xDB",
    "INVALID_0xDC",
    "INVALID_0xDD",
    "INVALID_0xDE",
    "INVALID_0xDF",
    // 0xE0
    "INVALID_0xE0",
    "INVALID_0xE1",
    "INVALID_0xE2",
    "INVALID_0xE3",
    "INVALID_0xE4",
    "INVALID_0xE5",
    "INVALID_0xE6",
    "INVALID_0xE7",
    "INVALID_0xE8",
    "INVALID_0xE9",
    "INVALID_0xEA",
    "INVALID_0xEB",
    "INVALID_0xEC",
    "INVALID_0xED",
    "INVALID_0xEE",
    "INVALID_0xEF",
    // 0xF0
    "CREATE",
    "CALL",
    "CALLCODE",
    "RETURN",
    "DELEGATECALL",
    "CREATE2",
    "INVALID_0xF6",
    "INVALID_0xF7",
    "INVALID_0xF8",
    "INVALID_0xF9",
    "STATICCALL",
    "INVALID_0xFB",
    "INVALID_0xFC",
    "REVERT",
    "INVALID_0xFE",
    "SELFDESTRUCT",
};

inline constexpr std::array<std::string_view, 256> reference_simplified = {
    // 0x00
    "STOP",
    "ADD",
    "MUL",
    "SUB",
    "DIV",
    "SDIV",
    "MOD",
    "SMOD",
    "ADDMOD",
    "MULMOD",
    "EXP",
    "SIGNEXTEND",
    "INVALID_0x0C",
    "INVALID_0x0D",
    "INVALID_0x0E",
    "INVALID_0x0F",
    // 0x10
    "LT",
    "GT",
    "SLT",
    "SGT",
    "EQ",
    "ISZERO",
    "AND",
    "OR",
    "XOR",
    "NOT",
    "BYTE",
    "SHL",
    "SHR",
    "SAR",
    "INVALID_0x1E",
    "INVALID_0x1F",
    // 0x20
    "KECCAK256",
    "INVALID_0x21",
    "INVALID_0x22",
    "INVALID_0x23",
    "INVALID_0x24",
    "INVALID_0x25",
    "INVALID_0x26",
    "INVALID_0x27",
    "INVALID_0x28",
    "INVALID_0x29",
    "INVALID_0x2A",
    "INVALID_0x2B",
    "INVALID_0x2C",
    "INVALID_0x2D",
    "INVALID_0x2E",
    "INVALID_0x2F",
    // 0x30
    "ADDRESS",
    "BALANCE",
    "ORIGIN",
    "CALLER",
    "CALLVALUE",
    "CALLDATALOAD",
    "CALLDATASIZE",
    "CALLDATACOPY",
    "CODESIZE",
    "CODECOPY",
    "GASPRICE",
    "EXTCODESIZE",
    "EXTCODECOPY",
    "RETURNDATASIZE",
    "RETURNDATACOPY",
    "EXTCODEHASH",
    // 0x40
    "BLOCKHASH",
    "COINBASE",
    "TIMESTAMP",
    "NUMBER",
    "PREVRANDAO",
    "GASLIMIT",
    "CHAINID",
    "SELFBALANCE",
    "BASEFEE",
    "BLOBHASH",
    "BLOBBASEFEE",
    "INVALID_0x4B",
    "INVALID_0x4C",
    "INVALID_0x4D",
    "INVALID_0x4E",
    "INVALID_0x4F",
    // 0x50
    "POP",
    "MLOAD",
    "MSTORE",
    "MSTORE8",
    "SLOAD",
    "SSTORE",
    "JUMP",
    "JUMPI",
    "PC",
    "MSIZE",
    "GAS",
    "JUMPDEST",
    "TLOAD",
    "TSTORE",
    "MCOPY",
    "PUSH0",
    // 0x60
    "PUSH1",
    "PUSH2",
    "PUSH3",
    "PUSH4",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    // 0x70
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    "PUSH",
    // 0x80
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    "DUP",
    // 0x90
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    "SWAP",
    // 0xA0
    "LOG0",
    "LOG",
    "LOG",
    "LOG",
    "LOG",
    "INVALID_0xA5",
    "INVALID_0xA6",
    "INVALID_0xA7",
    "INVALID_0xA8",
    "INVALID_0xA9",
    "INVALID_0xAA",
    "INVALID_0xAB",
    "INVALID_0xAC",
    "INVALID_0xAD",
    "INVALID_0xAE",
    "INVALID_0xAF",
    // 0xB0
    "INVALID_0xB0",
    "INVALID_0xB1",
    "INVALID_0xB2",
    "INVALID_0xB3",
    "INVALID_0xB4",
    "INVALID_0xB5",
    "INVALID_0xB6",
    "INVALID_0xB7",
    "INVALID_0xB8",
    "INVALID_0xB9",
    "INVALID_0xBA",
    "INVALID_0xBB",
    "INVALID_0xBC",
    "INVALID_0xBD",
    "INVALID_0xBE",
    "INVALID_0xBF",
    // 0xC0
    "INVALID_0xC0",
    "INVALID_0xC1",
    "INVALID_0xC2",
    "INVALID_0xC3",
    "INVALID_0xC4",
    "INVALID_0xC5",
    "INVALID_0xC6",
    "INVALID_0xC7",
    "INVALID_0xC8",
    "INVALID_0xC9",
    "INVALID_0xCA",
    "INVALID_0xCB",
    "INVALID_0xCC",
    "INVALID_0xCD",
    "INVALID_0xCE",
    "INVALID_0xCF",
    // 0xD0
    "INVALID_0xD0",
    "INVALID_0xD1",
    "INVALID_0xD2",
    "INVALID_0xD3",
    "INVALID_0xD4",
    "INVALID_0xD5",
    "INVALID_0xD6",
    "INVALID_0xD7",
    "INVALID_0xD8",
    "INVALID_0xD9",
    "INVALID_0xDA",
    "INVALID_0xDB",
    "INVALID_0xDC",
    "INVALID_0xDD",
    "INVALID_0xDE",
    "INVALID_0xDF",
    // 0xE0
    "INVALID_0xE0",
    "INVALID_0xE1",
    "INVALID_0xE2",
    "INVALID_0xE3",
    "INVALID_0xE4",
    "INVALID_0xE5",
    "INVALID_0xE6",
    "INVALID_0xE7",
    "INVALID_0xE8",
    "INVALID_0xE9",
    "INVALID_0xEA",
    "INVALID_0xEB",
    "INVALID_0xEC",
    "INVALID_0xED",
    "INVALID_0xEE",
    "INVALID_0xEF",
    // 0xF0
    "CREATE",
    "CALL",
    "CALLCODE",
    "RETURN",
    "DELEGATECALL",
    "CREATE2",
    "INVALID_0xF6",
    "INVALID_0xF7",
    "INVALID_0xF8",
    "INVALID_0xF9",
    "STATICCALL",
    "INVALID_0xFB",
    "INVALID_0xFC",
    "REVERT",
    "INVALID_0xFE",
    "SELFDESTRUCT",
};
}  // namespace vulnfuse::test

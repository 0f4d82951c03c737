// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vulnfuse::evm
{
inline constexpr uint8_t OP_STOP = 0x00;
inline constexpr uint8_t OP_JUMP = 0x56;
inline constexpr uint8_t OP_JUMPI = 0x57;
inline constexpr uint8_t OP_JUMPDEST = 0x5b;
inline constexpr uint8_t OP_PUSH1 = 0x60;
inline constexpr uint8_t OP_PUSH32 = 0x7f;
inline constexpr uint8_t OP_RETURN = 0xf3;
inline constexpr uint8_t OP_REVERT = 0xfd;
inline constexpr uint8_t OP_INVALID = 0xfe;
inline constexpr uint8_t OP_SELFDESTRUCT = 0xff;

/// Canonical mnemonic, or "INVALID_0xXX" for bytes with no assigned instruction
/// (including the designated invalid opcode 0xFE).
[[nodiscard]] std::string_view mnemonic(uint8_t opcode) noexcept;

/// True when the byte has an assigned (non-invalid) instruction.
[[nodiscard]] bool is_defined(uint8_t opcode) noexcept;

/// Number of immediate bytes: n for PUSHn, else 0.
[[nodiscard]] constexpr unsigned push_size(uint8_t opcode) noexcept
{
    return opcode >= OP_PUSH1 && opcode <= OP_PUSH32 ? unsigned(opcode - OP_PUSH1 + 1) : 0;
}

/// Instruction-set section the opcode belongs to (e.g. "arithmetic", "push", "system").
/// Annotation only; nothing downstream consumes it.
[[nodiscard]] std::string_view functional_group(uint8_t opcode) noexcept;

struct Instruction
{
    uint32_t offset = 0;
    uint8_t opcode = 0;
    /// Immediate bytes for PUSHn. Shorter than n only when the code ends mid-operand.
    std::vector<uint8_t> operand;

    [[nodiscard]] std::string_view mnemonic() const noexcept { return evm::mnemonic(opcode); }
    [[nodiscard]] bool truncated() const noexcept { return operand.size() < push_size(opcode); }
    [[nodiscard]] uint32_t size() const noexcept { return 1 + uint32_t(operand.size()); }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Decodes hex (optional "0x" prefix, either case) into bytes.
/// Throws OddHexLength or NonHexCharacter.
[[nodiscard]] std::vector<uint8_t> parse_hex(std::string_view hex);

/// Linear sweep from offset 0. Total: every byte string disassembles.
[[nodiscard]] std::vector<Instruction> disassemble(std::span<const uint8_t> code);
[[nodiscard]] std::vector<Instruction> disassemble(std::string_view hex);

/// Human-readable listing, one "offset: MNEMONIC [0xoperand]" line per instruction.
[[nodiscard]] std::string format_listing(std::span<const Instruction> instructions);

struct OpcodeSequence
{
    std::vector<std::string> mnemonics;
};

/// Collapses numbered families: DUP1-16 to DUP, SWAP1-16 to SWAP, PUSH5-32 to PUSH,
/// LOG1-4 to LOG. PUSH1-4, PUSH0 and LOG0 keep their names. Operands are dropped.
[[nodiscard]] std::string_view simplified_mnemonic(uint8_t opcode) noexcept;
[[nodiscard]] OpcodeSequence simplify_opcodes(std::span<const Instruction> instructions);

inline constexpr size_t default_max_len = 200;
inline constexpr int32_t pad_id = 0;

/// Mnemonic vocabulary. Known mnemonics map to 1..size(); `unk_id()` = size() + 1.
class OpcodeVocab
{
public:
    OpcodeVocab() = default;

    /// Ids ordered by descending frequency, ties broken alphabetically.
    [[nodiscard]] static OpcodeVocab fit(std::span<const OpcodeSequence> sequences);
    [[nodiscard]] static OpcodeVocab from_mnemonics(std::vector<std::string> in_id_order);

    [[nodiscard]] size_t size() const noexcept { return by_id_.size(); }
    [[nodiscard]] bool empty() const noexcept { return by_id_.empty(); }
    [[nodiscard]] int32_t unk_id() const noexcept { return int32_t(by_id_.size()) + 1; }
    /// Rows an embedding table needs: pad + known + unk.
    [[nodiscard]] size_t embedding_rows() const noexcept { return by_id_.size() + 2; }
    [[nodiscard]] int32_t id(std::string_view mnemonic) const noexcept;
    [[nodiscard]] const std::vector<std::string>& mnemonics() const noexcept { return by_id_; }

    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] static OpcodeVocab from_json(std::string_view text);

private:
    std::vector<std::string> by_id_;
    std::map<std::string, int32_t, std::less<>> ids_;
};

/// Maps mnemonics to ids, keeps the first `max_len` tokens and right-pads with pad_id.
/// Throws EmptyVocab.
[[nodiscard]] std::vector<int32_t> tokenize_and_pad(const OpcodeSequence& seq,
    const OpcodeVocab& vocab,
    size_t max_len = default_max_len);

/// `ids.bin` layout: little-endian int32 per id.
[[nodiscard]] std::string encode_ids(std::span<const int32_t> ids);
[[nodiscard]] std::vector<int32_t> decode_ids(std::string_view bytes);

struct CompilerConfig
{
    /// Executable and leading arguments, e.g. {"solc"} or {"node", "solc-combined-json.js"}.
    std::vector<std::string> command{"solc"};
    /// Exported to the child as SOLC_VERSION (honoured by version-manager shims).
    std::string version_hint;
    bool optimize = false;
};

struct CompiledContract
{
    std::string name;
    std::string creation;
    std::string runtime;
};

/// Compiles `source` with `--combined-json bin,bin-runtime` and returns the contract with
/// the largest runtime code. Throws CompilerNotFound, CompileError or VersionUnresolvable.
[[nodiscard]] CompiledContract compile_source(std::string_view source, const CompilerConfig& cfg);

/// Output of `<compiler> --version`, parsed to "major.minor.patch".
[[nodiscard]] std::string compiler_version(const CompilerConfig& cfg);

/// Checks a semver triple against a `pragma solidity` constraint (e.g. "^0.8.0",
/// ">=0.4.22 <0.6.0", "0.4.24 || ^0.5.0").
[[nodiscard]] bool version_satisfies(std::string_view version, std::string_view constraint);

/// The constraint text of the first `pragma solidity ...;` directive, if any.
[[nodiscard]] std::string find_version_pragma(std::string_view source);

/// Parses a combined-json document into its contracts.
[[nodiscard]] std::vector<CompiledContract> parse_combined_json(std::string_view json_text);
}  // namespace vulnfuse::evm

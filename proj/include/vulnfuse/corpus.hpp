// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vulnfuse
{
enum class Label : uint8_t
{
    Arithmetic = 0,
    Reentrancy = 1,
    Clean = 2,
};

inline constexpr size_t num_labels = 3;

enum class Provenance : uint8_t
{
    Curated,
    SolidiFI,
    Wild,
    Local,
};

[[nodiscard]] std::string_view to_string(Label label) noexcept;
[[nodiscard]] std::string_view to_string(Provenance provenance) noexcept;

/// Case-insensitive; nullopt for anything outside the three classes.
[[nodiscard]] std::optional<Label> parse_label(std::string_view s) noexcept;
[[nodiscard]] std::optional<Provenance> parse_provenance(std::string_view s) noexcept;

/// One labeled contract from the manifest.
struct ContractRecord
{
    std::string id;
    std::filesystem::path source_path;
    /// Empty until loaded; see `read_source`.
    std::string source_text;
    Label label = Label::Clean;
    /// Lowercase runtime bytecode hex without "0x", when the manifest carries it.
    std::optional<std::string> bytecode;
    Provenance provenance = Provenance::Local;

    /// `source_text` when populated, otherwise the file contents.
    [[nodiscard]] std::string read_source() const;
};

using ClassHistogram = std::array<size_t, num_labels>;

[[nodiscard]] ClassHistogram class_histogram(std::span<const ContractRecord> records) noexcept;

/// Parses a JSONL manifest. Relative `source_path`s resolve against the manifest's directory.
/// Blank lines are ignored.
[[nodiscard]] std::vector<ContractRecord> load_manifest(const std::filesystem::path& path);

/// Same as `load_manifest` but from in-memory text.
[[nodiscard]] std::vector<ContractRecord> parse_manifest(std::string_view text,
    const std::filesystem::path& base_dir);

struct DatasetSplit
{
    std::vector<std::string> train;
    std::vector<std::string> test;
    uint64_t seed = 0;
    double test_fraction = 0.2;
};

/// Label-stratified train/test partition. Per-class test counts are the largest-remainder
/// apportionment of round(test_fraction * N), clamped so each class keeps at least one
/// record on each side. Both id lists come back sorted.
[[nodiscard]] DatasetSplit stratified_split(std::span<const ContractRecord> records,
    double test_fraction,
    uint64_t seed);

/// Returns the records named by `ids`, in that order.
[[nodiscard]] std::vector<ContractRecord> select(std::span<const ContractRecord> records,
    std::span<const std::string> ids);
}  // namespace vulnfuse

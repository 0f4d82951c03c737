// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace vulnfuse
{
/// 64-bit FNV-1a. Stable across platforms; used where a fixed, documented hash is required.
[[nodiscard]] constexpr uint64_t fnv1a64(std::string_view data) noexcept
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data)
    {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Lowercase hex SHA-256 digest.
[[nodiscard]] std::string sha256_hex(std::string_view data);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename, so readers never observe a partial file.
void write_file(const std::filesystem::path& path, std::string_view contents);

[[nodiscard]] std::string to_hex(std::string_view bytes);
}  // namespace vulnfuse

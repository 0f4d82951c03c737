// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/evm.hpp>

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

namespace vulnfuse::test
{
inline std::optional<std::filesystem::path> find_in_path(const std::string& exe)
{
    const char* path = std::getenv("PATH");
    if (path == nullptr)
        return std::nullopt;
    std::stringstream dirs{path};
    for (std::string dir; std::getline(dirs, dir, ':');)
    {
        const auto candidate = std::filesystem::path{dir} / exe;
        if (std::filesystem::is_regular_file(candidate))
            return candidate;
    }
    return std::nullopt;
}

/// A Solidity compiler usable by the tests: VULNFUSE_SOLC if set, then a native solc,
/// then the solcjs adapter under tools/.
inline std::optional<evm::CompilerConfig> test_compiler()
{
    evm::CompilerConfig cfg;
    if (const char* env = std::getenv("VULNFUSE_SOLC"); env != nullptr && *env != '\0')
    {
        cfg.command = {env};
        return cfg;
    }
    if (find_in_path("solc"))
    {
        cfg.command = {"solc"};
        return cfg;
    }
    const std::filesystem::path tools = std::filesystem::path{VULNFUSE_SOURCE_DIR} / "tools";
    if (find_in_path("node") && std::filesystem::is_directory(tools / "node_modules/solc"))
    {
        cfg.command = {"node", (tools / "solc-combined-json.js").string()};
        return cfg;
    }
    return std::nullopt;
}
}  // namespace vulnfuse::test

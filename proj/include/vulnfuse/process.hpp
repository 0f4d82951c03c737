// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vulnfuse
{
struct ProcessResult
{
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs `argv` (PATH lookup on argv[0]) with extra environment entries, capturing both
/// output streams. Returns nullopt when the executable cannot be started.
[[nodiscard]] std::optional<ProcessResult> run_process(const std::vector<std::string>& argv,
    const std::vector<std::pair<std::string, std::string>>& extra_env = {});
}  // namespace vulnfuse

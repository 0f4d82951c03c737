// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace vulnfuse
{
struct NormalizeOptions
{
    /// Collapse runs of spaces/tabs between tokens to a single space. Indentation is kept.
    bool collapse_interior_spaces = true;
};

struct CleanSource
{
    std::string text;
    /// Lengths in Unicode code points.
    size_t original_len = 0;
    size_t cleaned_len = 0;
};

/// Removes `//` and `/* */` comments. Quoted string literals (with backslash escapes) are
/// copied verbatim; an unterminated block comment runs to end of input.
[[nodiscard]] std::string strip_comments(std::string_view source);

/// CRLF to LF, trailing whitespace stripped, blank-line runs collapsed to one blank line,
/// and (optionally) interior space runs outside string literals collapsed.
[[nodiscard]] std::string normalize_whitespace(std::string_view source,
    const NormalizeOptions& options = {});

[[nodiscard]] CleanSource clean_source(std::string_view source,
    const NormalizeOptions& options = {});

[[nodiscard]] size_t count_code_points(std::string_view utf8) noexcept;
}  // namespace vulnfuse

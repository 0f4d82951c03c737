// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/solidity_prep.hpp>

#include <vector>

namespace vulnfuse
{
namespace
{
enum class ScanState
{
    code,
    line_comment,
    block_comment,
    dq_string,
    sq_string,
};

constexpr bool is_blank(char c) noexcept
{
    return c == ' ' || c == '\t';
}

std::string normalize_line(std::string_view line, bool collapse)
{
    while (!line.empty() && (is_blank(line.back()) || line.back() == '\r'))
        line.remove_suffix(1);

    std::string out;
    out.reserve(line.size());
    size_t i = 0;
    while (i < line.size() && is_blank(line[i]))
        out.push_back(line[i++]);

    char quote = 0;
    while (i < line.size())
    {
        const char c = line[i];
        if (quote != 0)
        {
            out.push_back(c);
            if (c == '\\' && i + 1 < line.size())
                out.push_back(line[++i]);
            else if (c == quote)
                quote = 0;
            ++i;
            continue;
        }
        if (c == '"' || c == '\'')
            quote = c;
        if (collapse && is_blank(c))
        {
            out.push_back(' ');
            while (i < line.size() && is_blank(line[i]))
                ++i;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}
}  // namespace

std::string strip_comments(std::string_view source)
{
    std::string out;
    out.reserve(source.size());
    auto state = ScanState::code;
    for (size_t i = 0; i < source.size(); ++i)
    {
        const char c = source[i];
        const char next = i + 1 < source.size() ? source[i + 1] : '\0';
        switch (state)
        {
        case ScanState::code:
            if (c == '/' && next == '/')
            {
                state = ScanState::line_comment;
                ++i;
            }
            else if (c == '/' && next == '*')
            {
                state = ScanState::block_comment;
                ++i;
            }
            else
            {
                if (c == '"')
                    state = ScanState::dq_string;
                else if (c == '\'')
                    state = ScanState::sq_string;
                out.push_back(c);
            }
            break;
        case ScanState::line_comment:
            if (c == '\n')
            {
                // Keep the newline (and a preceding CR) so line structure survives.
                if (i > 0 && source[i - 1] == '\r')
                    out.push_back('\r');
                out.push_back(c);
                state = ScanState::code;
            }
            break;
        case ScanState::block_comment:
            if (c == '*' && next == '/')
            {
                state = ScanState::code;
                ++i;
            }
            break;
        case ScanState::dq_string:
        case ScanState::sq_string:
            out.push_back(c);
            if (c == '\\' && i + 1 < source.size() && next != '\n')
            {
                out.push_back(next);
                ++i;
            }
            else if ((c == '"' && state == ScanState::dq_string) ||
                     (c == '\'' && state == ScanState::sq_string) || c == '\n')
            {
                // String literals cannot span lines; a newline ends an unterminated one.
                state = ScanState::code;
            }
            break;
        }
    }
    return out;
}

std::string normalize_whitespace(std::string_view source, const NormalizeOptions& options)
{
    std::vector<std::string> lines;
    for (size_t pos = 0;;)
    {
        const auto eol = source.find('\n', pos);
        if (eol == std::string_view::npos)
        {
            lines.push_back(normalize_line(source.substr(pos), options.collapse_interior_spaces));
            break;
        }
        lines.push_back(
            normalize_line(source.substr(pos, eol - pos), options.collapse_interior_spaces));
        pos = eol + 1;
    }

    std::string out;
    out.reserve(source.size());
    bool previous_blank = false;
    for (size_t i = 0; i < lines.size(); ++i)
    {
        const bool blank = lines[i].empty();
        const bool last = i + 1 == lines.size();
        if (blank && previous_blank && !last)
            continue;
        out += lines[i];
        if (!last)
            out.push_back('\n');
        previous_blank = blank;
    }
    return out;
}

CleanSource clean_source(std::string_view source, const NormalizeOptions& options)
{
    CleanSource result;
    result.text = normalize_whitespace(strip_comments(source), options);
    result.original_len = count_code_points(source);
    result.cleaned_len = count_code_points(result.text);
    return result;
}

size_t count_code_points(std::string_view utf8) noexcept
{
    size_t n = 0;
    for (const char c : utf8)
        n += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    return n;
}
}  // namespace vulnfuse

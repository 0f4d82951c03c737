// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/model/text_encoder.hpp>
#include <vulnfuse/util.hpp>

#include <cctype>
#include <sstream>

namespace vulnfuse::model
{
std::vector<std::string> basic_tokenize(std::string_view text, bool lowercase)
{
    std::vector<std::string> out;
    std::string word;
    const auto flush = [&] {
        if (!word.empty())
            out.push_back(std::exchange(word, {}));
    };
    for (const char ch : text)
    {
        const auto u = static_cast<unsigned char>(ch);
        if (std::isspace(u) || u < 0x20)
            flush();
        else if (u < 0x80 && std::ispunct(u))
        {
            flush();
            out.emplace_back(1, ch);
        }
        else
            word += lowercase && u < 0x80 ? char(std::tolower(u)) : ch;
    }
    flush();
    return out;
}

TokenIds Tokenizer::encode(std::string_view text, size_t max_tokens) const
{
    if (max_tokens < 2)
        throw InvalidArgument{"max_tokens must leave room for [CLS] and [SEP]"};
    TokenIds pieces = tokenize(text);
    if (pieces.size() > max_tokens - 2)
        pieces.resize(max_tokens - 2);
    TokenIds ids;
    ids.reserve(pieces.size() + 2);
    ids.push_back(cls_id());
    ids.insert(ids.end(), pieces.begin(), pieces.end());
    ids.push_back(sep_id());
    return ids;
}

HashingTokenizer::HashingTokenizer(size_t vocab_size) : vocab_size_{vocab_size}
{
    if (vocab_size < 5)
        throw ConfigError{"hashing tokenizer needs more than 4 buckets"};
}

TokenIds HashingTokenizer::tokenize(std::string_view text) const
{
    TokenIds ids;
    for (const auto& w : basic_tokenize(text, true))
        ids.push_back(int32_t(4 + fnv1a64(w) % (vocab_size_ - 4)));
    return ids;
}

WordPieceTokenizer::WordPieceTokenizer(const std::filesystem::path& vocab_file, bool lowercase)
    : lowercase_{lowercase}
{
    std::istringstream in{read_file(vocab_file)};
    std::string line;
    int32_t id = 0;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        vocab_.emplace(line, id++);
    }
    const auto special = [&](const char* tok) {
        const auto it = vocab_.find(tok);
        if (it == vocab_.end())
            throw CheckpointUnavailable{vocab_file.string() + " lacks " + tok};
        return it->second;
    };
    pad_ = special("[PAD]");
    unk_ = special("[UNK]");
    cls_ = special("[CLS]");
    sep_ = special("[SEP]");
}

TokenIds WordPieceTokenizer::tokenize(std::string_view text) const
{
    constexpr size_t max_word_chars = 100;
    TokenIds ids;
    std::string candidate;
    for (const auto& word : basic_tokenize(text, lowercase_))
    {
        if (word.size() > max_word_chars)
        {
            ids.push_back(unk_);
            continue;
        }
        TokenIds pieces;
        size_t start = 0;
        bool bad = false;
        while (start < word.size())
        {
            size_t end = word.size();
            int32_t found = -1;
            for (; end > start; --end)
            {
                candidate.assign(start > 0 ? "##" : "");
                candidate.append(word, start, end - start);
                if (const auto it = vocab_.find(candidate); it != vocab_.end())
                {
                    found = it->second;
                    break;
                }
            }
            if (found < 0)
            {
                bad = true;
                break;
            }
            pieces.push_back(found);
            start = end;
        }
        if (bad)
            ids.push_back(unk_);
        else
            ids.insert(ids.end(), pieces.begin(), pieces.end());
    }
    return ids;
}
}  // namespace vulnfuse::model

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/evm.hpp>

#include <algorithm>
#include <json.hpp>
#include <unordered_map>

namespace vulnfuse::evm
{
OpcodeVocab OpcodeVocab::fit(std::span<const OpcodeSequence> sequences)
{
    std::unordered_map<std::string, size_t> counts;
    for (const auto& seq : sequences)
        for (const auto& m : seq.mnemonics)
            ++counts[m];

    std::vector<std::pair<std::string, size_t>> ranked(counts.begin(), counts.end());
    std::ranges::sort(ranked, [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    std::vector<std::string> names;
    names.reserve(ranked.size());
    for (auto& [name, count] : ranked)
        names.push_back(std::move(name));
    return from_mnemonics(std::move(names));
}

OpcodeVocab OpcodeVocab::from_mnemonics(std::vector<std::string> in_id_order)
{
    OpcodeVocab v;
    v.by_id_ = std::move(in_id_order);
    for (size_t i = 0; i < v.by_id_.size(); ++i)
    {
        if (!v.ids_.emplace(v.by_id_[i], int32_t(i) + 1).second)
            throw InvalidArgument{"duplicate mnemonic '" + v.by_id_[i] + "' in vocabulary"};
    }
    return v;
}

int32_t OpcodeVocab::id(std::string_view mnemonic) const noexcept
{
    const auto it = ids_.find(mnemonic);
    return it != ids_.end() ? it->second : unk_id();
}

std::string OpcodeVocab::to_json() const
{
    return nlohmann::json{{"format", "vulnfuse-opcode-vocab/1"}, {"mnemonics", by_id_}}.dump(1);
}

OpcodeVocab OpcodeVocab::from_json(std::string_view text)
{
    const auto j = nlohmann::json::parse(text);
    return from_mnemonics(j.at("mnemonics").get<std::vector<std::string>>());
}

std::vector<int32_t> tokenize_and_pad(const OpcodeSequence& seq,
    const OpcodeVocab& vocab,
    size_t max_len)
{
    if (vocab.empty())
        throw EmptyVocab{"opcode vocabulary has no entries"};
    if (max_len == 0)
        throw InvalidArgument{"max_len must be at least 1"};

    std::vector<int32_t> ids(max_len, pad_id);
    const auto n = std::min(max_len, seq.mnemonics.size());
    for (size_t i = 0; i < n; ++i)
        ids[i] = vocab.id(seq.mnemonics[i]);
    return ids;
}

std::string encode_ids(std::span<const int32_t> ids)
{
    std::string out(ids.size() * 4, '\0');
    for (size_t i = 0; i < ids.size(); ++i)
    {
        const auto v = static_cast<uint32_t>(ids[i]);
        for (size_t b = 0; b < 4; ++b)
            out[4 * i + b] = static_cast<char>((v >> (8 * b)) & 0xff);
    }
    return out;
}

std::vector<int32_t> decode_ids(std::string_view bytes)
{
    if (bytes.size() % 4 != 0)
        throw InvalidArgument{"ids blob length is not a multiple of 4"};
    std::vector<int32_t> ids(bytes.size() / 4);
    for (size_t i = 0; i < ids.size(); ++i)
    {
        uint32_t v = 0;
        for (size_t b = 0; b < 4; ++b)
            v |= uint32_t(static_cast<uint8_t>(bytes[4 * i + b])) << (8 * b);
        ids[i] = static_cast<int32_t>(v);
    }
    return ids;
}
}  // namespace vulnfuse::evm

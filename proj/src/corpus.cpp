// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/corpus.hpp>
#include <vulnfuse/error.hpp>
#include <vulnfuse/util.hpp>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace vulnfuse
{
namespace
{
std::string lowercase(std::string_view s)
{
    std::string out{s};
    std::ranges::transform(
        out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_hex_digit(char c) noexcept
{
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
}
}  // namespace

std::string_view to_string(Label label) noexcept
{
    switch (label)
    {
    case Label::Arithmetic:
        return "arithmetic";
    case Label::Reentrancy:
        return "reentrancy";
    case Label::Clean:
        return "clean";
    }
    return "clean";
}

std::string_view to_string(Provenance provenance) noexcept
{
    switch (provenance)
    {
    case Provenance::Curated:
        return "curated";
    case Provenance::SolidiFI:
        return "solidifi";
    case Provenance::Wild:
        return "wild";
    case Provenance::Local:
        return "local";
    }
    return "local";
}

std::optional<Label> parse_label(std::string_view s) noexcept
{
    const auto l = lowercase(s);
    if (l == "arithmetic")
        return Label::Arithmetic;
    if (l == "reentrancy")
        return Label::Reentrancy;
    if (l == "clean")
        return Label::Clean;
    return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view s) noexcept
{
    const auto l = lowercase(s);
    if (l == "curated")
        return Provenance::Curated;
    if (l == "solidifi")
        return Provenance::SolidiFI;
    if (l == "wild")
        return Provenance::Wild;
    if (l == "local")
        return Provenance::Local;
    return std::nullopt;
}

std::string ContractRecord::read_source() const
{
    if (!source_text.empty())
        return source_text;
    return read_file(source_path);
}

ClassHistogram class_histogram(std::span<const ContractRecord> records) noexcept
{
    ClassHistogram h{};
    for (const auto& r : records)
        ++h[static_cast<size_t>(r.label)];
    return h;
}

std::vector<ContractRecord> parse_manifest(std::string_view text,
    const std::filesystem::path& base_dir)
{
    using nlohmann::json;

    std::vector<ContractRecord> records;
    std::unordered_set<std::string> seen;
    size_t line_no = 0;
    for (size_t pos = 0; pos < text.size();)
    {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos)
            continue;

        const auto where = "line " + std::to_string(line_no);
        json obj;
        try
        {
            obj = json::parse(line);
        }
        catch (const json::parse_error& e)
        {
            throw MalformedManifest{where + ": " + e.what()};
        }
        if (!obj.is_object())
            throw MalformedManifest{where + ": expected a JSON object"};

        const auto get_string = [&](const char* key, bool required) -> std::optional<std::string> {
            const auto it = obj.find(key);
            if (it == obj.end() || it->is_null())
            {
                if (required)
                    throw MalformedManifest{where + ": missing field '" + key + "'"};
                return std::nullopt;
            }
            if (!it->is_string())
                throw MalformedManifest{where + ": field '" + key + "' must be a string"};
            return it->get<std::string>();
        };

        ContractRecord rec;
        rec.id = *get_string("id", true);
        if (rec.id.empty())
            throw MalformedManifest{where + ": empty id"};
        // Ids name feature directories.
        if (rec.id == "." || rec.id == ".." ||
            rec.id.find_first_of(std::string_view{"/\\\0", 3}) != std::string::npos)
            throw MalformedManifest{where + ": id '" + rec.id + "' is not a valid file name"};

        const auto label_str = *get_string("label", true);
        const auto label = parse_label(label_str);
        if (!label)
            throw UnknownLabel{where + ": '" + label_str + "'"};
        rec.label = *label;

        std::filesystem::path source{*get_string("source_path", true)};
        rec.source_path = source.is_absolute() ? source : base_dir / source;

        const auto prov_str = get_string("provenance", false).value_or("local");
        const auto prov = parse_provenance(prov_str);
        if (!prov)
            throw MalformedManifest{where + ": unknown provenance '" + prov_str + "'"};
        rec.provenance = *prov;

        if (auto code = get_string("bytecode", false); code && !code->empty())
        {
            auto hex = lowercase(*code);
            if (hex.starts_with("0x"))
                hex.erase(0, 2);
            if (hex.size() % 2 != 0)
                throw MalformedManifest{where + ": bytecode has odd length"};
            if (!std::ranges::all_of(hex, is_hex_digit))
                throw MalformedManifest{where + ": bytecode is not hex"};
            rec.bytecode = std::move(hex);
        }

        if (!seen.insert(rec.id).second)
            throw DuplicateId{where + ": '" + rec.id + "'"};
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ContractRecord> load_manifest(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    return parse_manifest(text, path.parent_path());
}

DatasetSplit stratified_split(std::span<const ContractRecord> records,
    double test_fraction,
    uint64_t seed)
{
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw InvalidArgument{"test_fraction must lie in (0, 1)"};

    std::array<std::vector<std::string>, num_labels> by_class;
    for (const auto& r : records)
        by_class[static_cast<size_t>(r.label)].push_back(r.id);
    for (size_t c = 0; c < num_labels; ++c)
    {
        if (by_class[c].size() < 2)
            throw ClassTooSmall{"class '" + std::string{to_string(static_cast<Label>(c))} +
                                "' has " + std::to_string(by_class[c].size()) +
                                " record(s); need at least 2"};
        std::ranges::sort(by_class[c]);
    }

    // Largest-remainder apportionment of the total test size across classes.
    const auto total = records.size();
    const auto test_total = static_cast<size_t>(std::llround(test_fraction * double(total)));
    std::array<size_t, num_labels> quota{};
    std::array<double, num_labels> remainder{};
    size_t assigned = 0;
    for (size_t c = 0; c < num_labels; ++c)
    {
        const double exact = test_fraction * double(by_class[c].size());
        quota[c] = static_cast<size_t>(std::floor(exact));
        remainder[c] = exact - double(quota[c]);
        assigned += quota[c];
    }
    std::array<size_t, num_labels> order{0, 1, 2};
    std::ranges::stable_sort(
        order, [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
    for (size_t i = 0; assigned < test_total && i < num_labels; ++i, ++assigned)
        ++quota[order[i]];
    for (size_t c = 0; c < num_labels; ++c)
        quota[c] = std::clamp<size_t>(quota[c], 1, by_class[c].size() - 1);

    // Fisher-Yates with an explicitly specified engine so splits are stable across toolchains.
    std::mt19937_64 rng{seed};
    DatasetSplit split;
    split.seed = seed;
    split.test_fraction = test_fraction;
    for (size_t c = 0; c < num_labels; ++c)
    {
        auto& ids = by_class[c];
        for (size_t i = ids.size() - 1; i > 0; --i)
            std::swap(ids[i], ids[rng() % (i + 1)]);
        split.test.insert(split.test.end(), ids.begin(), ids.begin() + long(quota[c]));
        split.train.insert(split.train.end(), ids.begin() + long(quota[c]), ids.end());
    }
    std::ranges::sort(split.train);
    std::ranges::sort(split.test);
    return split;
}

std::vector<ContractRecord> select(std::span<const ContractRecord> records,
    std::span<const std::string> ids)
{
    std::unordered_map<std::string_view, const ContractRecord*> index;
    for (const auto& r : records)
        index.emplace(r.id, &r);
    std::vector<ContractRecord> out;
    out.reserve(ids.size());
    for (const auto& id : ids)
    {
        const auto it = index.find(id);
        if (it == index.end())
            throw InvalidArgument{"unknown record id '" + id + "'"};
        out.push_back(*it->second);
    }
    return out;
}
}  // namespace vulnfuse

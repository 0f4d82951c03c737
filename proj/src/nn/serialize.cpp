// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/nn/optim.hpp>
#include <vulnfuse/util.hpp>

#include <bit>
#include <cstring>
#include <unordered_map>

namespace vulnfuse::nn
{
namespace
{
static_assert(std::endian::native == std::endian::little, "weight blobs are little-endian");

constexpr char magic[4] = {'V', 'F', 'W', 'T'};
constexpr uint32_t format_version = 1;

void put_u32(std::string& out, uint32_t v)
{
    out.append(reinterpret_cast<const char*>(&v), sizeof v);
}

class Reader
{
public:
    Reader(std::string_view data, const std::filesystem::path& file) : data_{data}, file_{file} {}

    void take(void* dst, size_t n)
    {
        if (data_.size() - pos_ < n)
            throw CheckpointMismatch{file_.string() + ": truncated weight file"};
        std::memcpy(dst, data_.data() + pos_, n);
        pos_ += n;
    }

    uint32_t u32()
    {
        uint32_t v = 0;
        take(&v, sizeof v);
        return v;
    }

    [[nodiscard]] bool done() const noexcept { return pos_ == data_.size(); }

private:
    std::string_view data_;
    const std::filesystem::path& file_;
    size_t pos_ = 0;
};
}  // namespace

void save_weights(const std::filesystem::path& file, const NamedParams& params)
{
    std::string out{magic, sizeof magic};
    put_u32(out, format_version);
    put_u32(out, uint32_t(params.size()));
    for (const auto& [name, p] : params)
    {
        put_u32(out, uint32_t(name.size()));
        out += name;
        put_u32(out, uint32_t(p.rows()));
        put_u32(out, uint32_t(p.cols()));
        out.append(reinterpret_cast<const char*>(p.value().data()),
            size_t(p.value().size()) * sizeof(float));
    }
    write_file(file, out);
}

void load_weights(const std::filesystem::path& file, const NamedParams& params, bool allow_extra)
{
    std::string data;
    try
    {
        data = read_file(file);
    }
    catch (const IoError&)
    {
        throw CheckpointMismatch{file.string() + ": weight file missing"};
    }
    Reader in{data, file};
    char head[4];
    in.take(head, sizeof head);
    if (std::memcmp(head, magic, sizeof magic) != 0)
        throw CheckpointMismatch{file.string() + ": not a weight file"};
    if (const auto v = in.u32(); v != format_version)
        throw CheckpointMismatch{
            file.string() + ": unsupported weight format " + std::to_string(v)};

    std::unordered_map<std::string, Var> wanted;
    for (const auto& [name, p] : params)
        wanted.emplace(name, p);

    const uint32_t count = in.u32();
    for (uint32_t i = 0; i < count; ++i)
    {
        std::string name(in.u32(), '\0');
        in.take(name.data(), name.size());
        const uint32_t rows = in.u32();
        const uint32_t cols = in.u32();
        Matrix value(rows, cols);
        in.take(value.data(), size_t(value.size()) * sizeof(float));

        const auto it = wanted.find(name);
        if (it == wanted.end())
        {
            if (allow_extra)
                continue;
            throw CheckpointMismatch{file.string() + ": unexpected tensor " + name};
        }
        Var target = it->second;
        if (target.rows() != rows || target.cols() != cols)
        {
            throw CheckpointMismatch{file.string() + ": tensor " + name + " has shape " +
                                     std::to_string(rows) + "x" + std::to_string(cols) +
                                     ", model expects " + std::to_string(target.rows()) + "x" +
                                     std::to_string(target.cols())};
        }
        target.mutable_value() = std::move(value);
        wanted.erase(it);
    }
    if (!in.done())
        throw CheckpointMismatch{file.string() + ": trailing bytes"};
    for (const auto& [name, p] : params)
    {
        if (wanted.contains(name))
            throw CheckpointMismatch{file.string() + ": tensor " + name + " missing"};
    }
}
}  // namespace vulnfuse::nn

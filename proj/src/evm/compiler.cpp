// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/evm.hpp>
#include <vulnfuse/process.hpp>
#include <vulnfuse/util.hpp>

#include <unistd.h>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>

namespace vulnfuse::evm
{
namespace
{
using Semver = std::array<long, 3>;

struct PartialVersion
{
    Semver v{0, 0, 0};
    int parts = 0;  // 0 means wildcard
};

PartialVersion parse_partial(std::string_view s)
{
    PartialVersion pv;
    size_t pos = 0;
    while (pos <= s.size() && pv.parts < 3)
    {
        const auto dot = std::min(s.find('.', pos), s.size());
        const auto piece = s.substr(pos, dot - pos);
        if (piece.empty() || piece == "x" || piece == "X" || piece == "*")
            break;
        long value = 0;
        for (const char c : piece)
        {
            if (c < '0' || c > '9')
                throw VersionUnresolvable{"bad version '" + std::string{s} + "'"};
            value = value * 10 + (c - '0');
        }
        pv.v[size_t(pv.parts++)] = value;
        pos = dot + 1;
    }
    return pv;
}

Semver bump(const PartialVersion& pv)
{
    // Smallest version above every completion of a partial version.
    Semver up = pv.v;
    const auto idx = size_t(pv.parts - 1);
    ++up[idx];
    for (size_t i = idx + 1; i < 3; ++i)
        up[i] = 0;
    return up;
}

bool satisfies_comparator(const Semver& v, std::string_view comp)
{
    std::string_view op;
    for (const std::string_view candidate : {">=", "<=", "^", "~", ">", "<", "="})
    {
        if (comp.starts_with(candidate))
        {
            op = candidate;
            break;
        }
    }
    const auto pv = parse_partial(comp.substr(op.size()));
    if (pv.parts == 0)
        return true;
    const auto& want = pv.v;

    if (op == "^")
    {
        PartialVersion upper = pv;
        if (want[0] > 0 || pv.parts == 1)
            upper.parts = 1;
        else if (want[1] > 0 || pv.parts == 2)
            upper.parts = 2;
        else
            upper.parts = 3;
        return v >= want && v < bump(upper);
    }
    if (op == "~")
    {
        PartialVersion upper = pv;
        upper.parts = std::min(pv.parts, 2);
        return v >= want && v < bump(upper);
    }
    if (op == ">=")
        return v >= want;
    if (op == "<")
        return v < want;
    if (op == ">")
        return pv.parts == 3 ? v > want : v >= bump(pv);
    if (op == "<=")
        return pv.parts == 3 ? v <= want : v < bump(pv);
    // "=" or bare: exact when complete, otherwise the whole partial range.
    return pv.parts == 3 ? v == want : (v >= want && v < bump(pv));
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string{s}};
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

bool satisfies_range(const Semver& v, std::string_view range)
{
    auto tokens = split_ws(range);
    // Hyphen range "A - B".
    if (tokens.size() == 3 && tokens[1] == "-")
        return satisfies_comparator(v, ">=" + tokens[0]) &&
               satisfies_comparator(v, "<=" + tokens[2]);

    // Re-attach operators written with a space before the version (">= 0.4.22").
    std::vector<std::string> comparators;
    for (size_t i = 0; i < tokens.size(); ++i)
    {
        if (tokens[i].find_first_of("0123456789xX*") == std::string::npos && i + 1 < tokens.size())
        {
            comparators.push_back(tokens[i] + tokens[i + 1]);
            ++i;
        }
        else
            comparators.push_back(tokens[i]);
    }
    for (const auto& c : comparators)
        if (!satisfies_comparator(v, c))
            return false;
    return true;
}

class TempSourceFile
{
public:
    explicit TempSourceFile(std::string_view contents)
    {
        auto pattern = (std::filesystem::temp_directory_path() / "vulnfuse-XXXXXX.sol").string();
        const int fd = ::mkstemps(pattern.data(), 4);
        if (fd < 0)
            throw IoError{"cannot create temporary source file"};
        ::close(fd);
        path_ = pattern;
        write_file(path_, contents);
    }
    ~TempSourceFile()
    {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempSourceFile(const TempSourceFile&) = delete;
    TempSourceFile& operator=(const TempSourceFile&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

std::vector<std::pair<std::string, std::string>> child_env(const CompilerConfig& cfg)
{
    if (cfg.version_hint.empty())
        return {};
    return {{"SOLC_VERSION", cfg.version_hint}};
}
}  // namespace

bool version_satisfies(std::string_view version, std::string_view constraint)
{
    const auto pv = parse_partial(version);
    if (pv.parts != 3)
        throw VersionUnresolvable{"compiler version '" + std::string{version} + "' is incomplete"};

    std::string_view rest = constraint;
    while (true)
    {
        const auto bar = rest.find("||");
        if (satisfies_range(pv.v, rest.substr(0, bar)))
            return true;
        if (bar == std::string_view::npos)
            return false;
        rest.remove_prefix(bar + 2);
    }
}

std::string find_version_pragma(std::string_view source)
{
    static const std::regex pragma_re{R"(pragma\s+solidity\s+([^;]+);)"};
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(source.begin(), source.end(), m, pragma_re))
        return {};
    auto text = m[1].str();
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    return first == std::string::npos ? std::string{} : text.substr(first, last - first + 1);
}

std::vector<CompiledContract> parse_combined_json(std::string_view json_text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw CompileError{std::string{"compiler output is not JSON: "} + e.what()};
    }
    std::vector<CompiledContract> out;
    const auto contracts = doc.find("contracts");
    if (contracts == doc.end() || !contracts->is_object())
        throw CompileError{"compiler output has no 'contracts' object"};
    for (const auto& [key, value] : contracts->items())
    {
        CompiledContract c;
        const auto colon = key.rfind(':');
        c.name = colon == std::string::npos ? key : key.substr(colon + 1);
        c.creation = value.value("bin", "");
        c.runtime = value.value("bin-runtime", "");
        out.push_back(std::move(c));
    }
    return out;
}

std::string compiler_version(const CompilerConfig& cfg)
{
    auto argv = cfg.command;
    argv.emplace_back("--version");
    const auto result = run_process(argv, child_env(cfg));
    if (!result)
        throw CompilerNotFound{cfg.command.empty() ? "<empty command>" : cfg.command.front()};
    static const std::regex version_re{R"((\d+)\.(\d+)\.(\d+))"};
    std::smatch m;
    const auto text = result->out + result->err;
    if (result->exit_code != 0 || !std::regex_search(text, m, version_re))
        throw CompilerNotFound{"cannot determine version of " + cfg.command.front()};
    return m[0].str();
}

namespace
{
/// One `--version` probe per distinct command line and version hint.
std::string cached_version(const CompilerConfig& cfg)
{
    static std::mutex mutex;
    static std::map<std::pair<std::vector<std::string>, std::string>, std::string> versions;
    auto key = std::pair{cfg.command, cfg.version_hint};
    {
        std::lock_guard lock{mutex};
        if (const auto it = versions.find(key); it != versions.end())
            return it->second;
    }
    auto version = compiler_version(cfg);
    std::lock_guard lock{mutex};
    versions.emplace(std::move(key), version);
    return version;
}
}  // namespace

CompiledContract compile_source(std::string_view source, const CompilerConfig& cfg)
{
    if (cfg.command.empty())
        throw CompilerNotFound{"no compiler command configured"};

    const auto version = cached_version(cfg);
    if (const auto pragma = find_version_pragma(source); !pragma.empty())
    {
        if (!version_satisfies(version, pragma))
            throw VersionUnresolvable{
                "pragma '" + pragma + "' is not satisfied by compiler " + version};
    }

    TempSourceFile file{source};
    auto argv = cfg.command;
    argv.insert(argv.end(), {"--combined-json", "bin,bin-runtime"});
    if (cfg.optimize)
        argv.emplace_back("--optimize");
    argv.push_back(file.path().string());

    const auto result = run_process(argv, child_env(cfg));
    if (!result)
        throw CompilerNotFound{cfg.command.front()};
    if (result->exit_code != 0)
        throw CompileError{result->err.empty() ? result->out : result->err};

    auto contracts = parse_combined_json(result->out);
    const CompiledContract* best = nullptr;
    for (const auto& c : contracts)
    {
        if (best == nullptr || c.runtime.size() >= best->runtime.size())
            best = &c;
    }
    if (best == nullptr || best->runtime.empty())
        throw CompileError{"compiler produced no runtime bytecode"};
    return *best;
}
}  // namespace vulnfuse::evm

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/evm.hpp>

#include <support/compiler.hpp>
#include <support/evm_reference.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace vulnfuse;
using namespace vulnfuse::evm;

TEST_CASE("disassembles a push-push-add program")
{
    const auto ins = disassemble("6001600201");
    REQUIRE(ins.size() == 3);
    CHECK(ins[0].mnemonic() == "PUSH1");
    CHECK(ins[0].offset == 0);
    CHECK(ins[0].operand == std::vector<uint8_t>{0x01});
    CHECK(ins[1].mnemonic() == "PUSH1");
    CHECK(ins[1].offset == 2);
    CHECK(ins[1].operand == std::vector<uint8_t>{0x02});
    CHECK(ins[2].mnemonic() == "ADD");
    CHECK(ins[2].offset == 4);
    CHECK(ins[2].operand.empty());
}

TEST_CASE("edge cases of the linear sweep")
{
    CHECK(disassemble("").empty());
    const auto fe = disassemble("fe");
    REQUIRE(fe.size() == 1);
    CHECK(fe[0].mnemonic() == "INVALID_0xFE");
    CHECK(disassemble("0x0c")[0].mnemonic() == "INVALID_0x0C");
    CHECK(disassemble("5F")[0].mnemonic() == "PUSH0");

    const auto trunc = disassemble("61ab");
    REQUIRE(trunc.size() == 1);
    CHECK(trunc[0].truncated());
    CHECK(trunc[0].operand == std::vector<uint8_t>{0xab});
    CHECK(trunc[0].size() == 2);

    CHECK_THROWS_AS((void)disassemble("abc"), OddHexLength);
    CHECK_THROWS_AS((void)disassemble("zz"), NonHexCharacter);
}

TEST_CASE("listing format")
{
    const auto text = format_listing(disassemble("6001600201"));
    CHECK(text.find("PUSH1 0x01") != std::string::npos);
    CHECK(text.find("ADD") != std::string::npos);
}

TEST_CASE("mnemonic table matches the reference")
{
    for (unsigned op = 0; op < 256; ++op)
    {
        INFO("opcode " << op);
        CHECK(mnemonic(uint8_t(op)) == test::reference_mnemonics[op]);
        CHECK(simplified_mnemonic(uint8_t(op)) == test::reference_simplified[op]);
    }
}

TEST_CASE("opcode simplification")
{
    const auto seq =
        simplify_opcodes(disassemble("82"
                                     "9f"
                                     "7f" +
                                     std::string(64, '1') + "a2"));
    CHECK(seq.mnemonics == std::vector<std::string>{"DUP", "SWAP", "PUSH", "LOG"});
    const auto keep =
        simplify_opcodes(disassemble("6001"
                                     "6301020304"
                                     "a0"));
    CHECK(keep.mnemonics == std::vector<std::string>{"PUSH1", "PUSH4", "LOG0"});
    const auto id =
        simplify_opcodes(disassemble("01"
                                     "52"
                                     "5b"));
    CHECK(id.mnemonics == std::vector<std::string>{"ADD", "MSTORE", "JUMPDEST"});

    // Idempotent on the name level.
    for (unsigned op = 0; op < 256; ++op)
    {
        const auto s = simplified_mnemonic(uint8_t(op));
        for (unsigned other = 0; other < 256; ++other)
        {
            if (mnemonic(uint8_t(other)) == s)
                CHECK(simplified_mnemonic(uint8_t(other)) == s);
        }
    }
}

TEST_CASE("functional groups cover every defined opcode")
{
    std::set<std::string_view> groups;
    for (unsigned op = 0; op < 256; ++op)
    {
        const auto g = functional_group(uint8_t(op));
        CHECK_FALSE(g.empty());
        if (is_defined(uint8_t(op)))
            groups.insert(g);
        else
            CHECK(g == "invalid");
    }
    CHECK(groups.size() == 11);
}

TEST_CASE("disassembler totality on random bytes")
{
    std::mt19937_64 rng{2024};
    for (int trial = 0; trial < 2000; ++trial)
    {
        std::vector<uint8_t> code(rng() % 513);
        for (auto& b : code)
            b = uint8_t(rng());
        const auto ins = disassemble(code);
        size_t consumed = 0;
        uint32_t prev = 0;
        for (size_t i = 0; i < ins.size(); ++i)
        {
            if (i > 0)
                CHECK(ins[i].offset > prev);
            CHECK(ins[i].offset == consumed);
            if (i + 1 < ins.size())
                CHECK(ins[i].operand.size() == push_size(ins[i].opcode));
            prev = ins[i].offset;
            consumed += ins[i].size();
        }
        CHECK(consumed == code.size());
    }
}

TEST_CASE("tokenize and pad")
{
    const auto vocab = OpcodeVocab::from_mnemonics({"PUSH1", "ADD", "MSTORE"});
    CHECK(vocab.id("PUSH1") == 1);
    CHECK(vocab.id("MSTORE") == 3);
    CHECK(vocab.unk_id() == 4);
    CHECK(vocab.id("SSTORE") == 4);

    OpcodeSequence five{{"PUSH1", "PUSH1", "ADD", "SSTORE", "MSTORE"}};
    const auto ids = tokenize_and_pad(five, vocab);
    REQUIRE(ids.size() == 200);
    CHECK(
        std::vector<int32_t>(ids.begin(), ids.begin() + 5) == std::vector<int32_t>{1, 1, 2, 4, 3});
    CHECK(std::count(ids.begin() + 5, ids.end(), 0) == 195);

    OpcodeSequence long_seq;
    std::mt19937_64 rng{3};
    const char* names[] = {"PUSH1", "ADD", "MSTORE", "CALL"};
    for (int i = 0; i < 350; ++i)
        long_seq.mnemonics.emplace_back(names[rng() % 4]);
    const auto trunc = tokenize_and_pad(long_seq, vocab);
    REQUIRE(trunc.size() == 200);
    for (size_t i = 0; i < 200; ++i)
        CHECK(trunc[i] == vocab.id(long_seq.mnemonics[i]));

    OpcodeSequence exact{std::vector<std::string>(200, "ADD")};
    const auto e = tokenize_and_pad(exact, vocab);
    CHECK(std::count(e.begin(), e.end(), 2) == 200);

    for (size_t n = 0; n <= 1000; ++n)
    {
        OpcodeSequence s{std::vector<std::string>(n, "CALL")};
        const auto out = tokenize_and_pad(s, vocab);
        CHECK(out.size() == 200);
        for (const auto id : out)
            CHECK(id <= int32_t(vocab.size()) + 1);
    }

    CHECK_THROWS_AS((void)tokenize_and_pad(five, OpcodeVocab{}), EmptyVocab);
}

TEST_CASE("vocabulary fitting and serialization")
{
    const std::vector<OpcodeSequence> seqs{
        {{"B", "A", "A", "C"}},
        {{"B", "A", "D"}},
    };
    const auto v = OpcodeVocab::fit(seqs);
    // A:3, B:2, then C and D tie at 1 and sort alphabetically.
    CHECK(v.mnemonics() == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(v.embedding_rows() == 6);
    const auto back = OpcodeVocab::from_json(v.to_json());
    CHECK(back.mnemonics() == v.mnemonics());
    CHECK_THROWS_AS((void)OpcodeVocab::from_mnemonics({"A", "A"}), InvalidArgument);
}

TEST_CASE("ids blob is little-endian int32")
{
    const std::vector<int32_t> ids{1, 256, 0, 70000};
    const auto blob = encode_ids(ids);
    REQUIRE(blob.size() == 16);
    CHECK(uint8_t(blob[4]) == 0x00);
    CHECK(uint8_t(blob[5]) == 0x01);
    CHECK(decode_ids(blob) == ids);
    CHECK_THROWS_AS((void)decode_ids("abc"), InvalidArgument);
}

TEST_CASE("version constraints")
{
    CHECK(version_satisfies("0.8.26", "^0.8.0"));
    CHECK_FALSE(version_satisfies("0.9.0", "^0.8.0"));
    CHECK_FALSE(version_satisfies("0.4.26", "^0.5.0"));
    CHECK(version_satisfies("0.4.26", ">=0.4.22 <0.6.0"));
    CHECK(version_satisfies("0.5.1", ">= 0.4.22 < 0.6.0"));
    CHECK_FALSE(version_satisfies("0.6.0", ">=0.4.22 <0.6.0"));
    CHECK(version_satisfies("0.7.6", "0.7.6"));
    CHECK(version_satisfies("0.7.6", "~0.7.1"));
    CHECK_FALSE(version_satisfies("0.8.0", "~0.7.1"));
    CHECK(version_satisfies("0.8.3", "^0.4.0 || ^0.8.0"));
    CHECK(version_satisfies("0.5.3", "0.5.0 - 0.5.9"));
    CHECK_THROWS_AS((void)version_satisfies("0.8", "^0.8.0"), VersionUnresolvable);

    CHECK(find_version_pragma("// x\npragma solidity ^0.8.0;\ncontract C {}") == "^0.8.0");
    CHECK(find_version_pragma("contract C {}").empty());
}

TEST_CASE("combined json parsing")
{
    const auto cs = parse_combined_json(
        R"({"contracts":{"a.sol:A":{"bin":"6080","bin-runtime":"6001"},"a.sol:I":{"bin":"","bin-runtime":""}},"version":"0.8.26"})");
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].name == "A");
    CHECK(cs[0].runtime == "6001");
    CHECK_THROWS_AS((void)parse_combined_json("not json"), CompileError);
}

TEST_CASE("compiler errors without a compiler")
{
    CompilerConfig missing;
    missing.command = {"/nonexistent/solc-binary"};
    CHECK_THROWS_AS((void)compile_source("contract C {}", missing), CompilerNotFound);
}

TEST_CASE("compiles through the configured compiler")
{
    const auto cfg = test::test_compiler();
    if (!cfg)
    {
        MESSAGE("no Solidity compiler available; compile tests skipped");
        return;
    }
    const auto c = compile_source("pragma solidity ^0.8.0;\ncontract C {}\n", *cfg);
    CHECK_FALSE(c.runtime.empty());
    CHECK_FALSE(c.creation.empty());
    CHECK(c.creation.size() > c.runtime.size());
    CHECK_NOTHROW((void)disassemble(c.runtime));

    try
    {
        (void)compile_source("pragma solidity ^0.8.0;\ncontract C { uint x = ; }\n", *cfg);
        FAIL("expected CompileError");
    }
    catch (const CompileError& e)
    {
        CHECK(std::string{e.what()}.find("rror") != std::string::npos);
    }
    CHECK_THROWS_AS((void)compile_source("pragma solidity ^0.4.0;\ncontract C {}\n", *cfg),
        VersionUnresolvable);
}

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vulnfuse
{
/// Base of every error raised by the library. `kind()` is the stable name used in
/// failure reports and by the Python bindings.
class Error : public std::runtime_error
{
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_{std::move(kind)}
    {}

    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define VULNFUSE_DEFINE_ERROR(Name)                                          \
    class Name : public Error                                                \
    {                                                                        \
    public:                                                                  \
        explicit Name(const std::string& message) : Error{#Name, message} {} \
    }

// corpus
VULNFUSE_DEFINE_ERROR(MalformedManifest);
VULNFUSE_DEFINE_ERROR(UnknownLabel);
VULNFUSE_DEFINE_ERROR(DuplicateId);
VULNFUSE_DEFINE_ERROR(ClassTooSmall);
VULNFUSE_DEFINE_ERROR(InvalidArgument);

// evm_pipeline
VULNFUSE_DEFINE_ERROR(CompilerNotFound);
VULNFUSE_DEFINE_ERROR(CompileError);
VULNFUSE_DEFINE_ERROR(VersionUnresolvable);
VULNFUSE_DEFINE_ERROR(OddHexLength);
VULNFUSE_DEFINE_ERROR(NonHexCharacter);
VULNFUSE_DEFINE_ERROR(EmptyVocab);

// embeddings
VULNFUSE_DEFINE_ERROR(ProviderFailure);
VULNFUSE_DEFINE_ERROR(AuthFailure);
VULNFUSE_DEFINE_ERROR(RemoteUnavailable);

// models
VULNFUSE_DEFINE_ERROR(CheckpointUnavailable);
VULNFUSE_DEFINE_ERROR(FeatureWidthMismatch);
VULNFUSE_DEFINE_ERROR(DimMismatch);
VULNFUSE_DEFINE_ERROR(ConfigError);

// training / evaluation / cli
VULNFUSE_DEFINE_ERROR(MissingFeature);
VULNFUSE_DEFINE_ERROR(EmptyTestSet);
VULNFUSE_DEFINE_ERROR(FeatureDerivationFailed);
VULNFUSE_DEFINE_ERROR(CheckpointMismatch);
VULNFUSE_DEFINE_ERROR(IoError);

#undef VULNFUSE_DEFINE_ERROR
}  // namespace vulnfuse

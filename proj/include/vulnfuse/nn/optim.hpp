// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/nn/layers.hpp>

#include <cstdint>
#include <filesystem>

namespace vulnfuse::nn
{
struct AdamOptions
{
    float learning_rate = 1e-3f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float epsilon = 1e-7f;
};

/// Adam with bias correction. Parameters without a gradient in a step are left alone.
class Adam
{
public:
    Adam(NamedParams params, AdamOptions opts = {});

    void zero_grad();
    void step();
    [[nodiscard]] uint64_t steps() const noexcept { return t_; }

private:
    NamedParams params_;
    AdamOptions opts_;
    std::vector<Matrix> m_;
    std::vector<Matrix> v_;
    uint64_t t_ = 0;
};

/// Writes the named tensors as a little-endian "VFWT" blob.
void save_weights(const std::filesystem::path& file, const NamedParams& params);

/// Loads into existing tensors; every name must be present with the same shape.
/// Throws CheckpointMismatch otherwise. Extra tensors in the file are an error unless
/// `allow_extra` is set.
void load_weights(const std::filesystem::path& file,
    const NamedParams& params,
    bool allow_extra = false);
}  // namespace vulnfuse::nn

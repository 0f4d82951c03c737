// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/nn/tensor.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace vulnfuse::nn
{
using Index = Eigen::Index;

[[nodiscard]] Var matmul(const Var& a, const Var& b);

/// x * w + bias (bias is 1 x out and may be a null Var).
[[nodiscard]] Var linear(const Var& x, const Var& w, const Var& bias);

[[nodiscard]] Var add(const Var& a, const Var& b);
/// Adds the 1 x d `row` to every row of x.
[[nodiscard]] Var add_row(const Var& x, const Var& row);
[[nodiscard]] Var mul(const Var& a, const Var& b);
[[nodiscard]] Var scale(const Var& a, float factor);
[[nodiscard]] Var sum(const Var& a);

[[nodiscard]] Var relu(const Var& x);
[[nodiscard]] Var tanh(const Var& x);
[[nodiscard]] Var sigmoid(const Var& x);
/// Exact (erf) GELU.
[[nodiscard]] Var gelu(const Var& x);

/// Row-wise normalization with learned 1 x d gain and shift.
[[nodiscard]] Var layer_norm(const Var& x, const Var& gamma, const Var& beta, float eps);

/// Gathers table rows; gradients scatter-add back into the table.
[[nodiscard]] Var embedding(const Var& table, std::span<const int32_t> ids);

[[nodiscard]] Var concat_cols(std::span<const Var> parts);
[[nodiscard]] Var select_rows(const Var& x, std::vector<Index> rows);
/// Row-major reinterpretation; element count must match.
[[nodiscard]] Var reshape(const Var& x, Index rows, Index cols);

/// Inverted dropout. Identity when `training` is false or `rate` is 0.
[[nodiscard]] Var dropout(const Var& x, float rate, std::mt19937_64& rng, bool training);

/// Mean of the rows assigned to each segment; segments with no rows produce zeros.
[[nodiscard]] Var segment_mean(const Var& x, std::span<const int32_t> segment, Index num_segments);

/// Weighted directed edge list used for message passing (out[dst] += w * x[src]).
struct SparseAdjacency
{
    Index num_nodes = 0;
    std::vector<int32_t> src;
    std::vector<int32_t> dst;
    std::vector<float> weight;

    /// Self loops added, weights deg(src)^-1/2 * deg(dst)^-1/2 with deg counted on targets.
    [[nodiscard]] static SparseAdjacency gcn_normalized(Index num_nodes,
        std::span<const int32_t> src,
        std::span<const int32_t> dst);
};

[[nodiscard]] Var propagate(const Var& x, const SparseAdjacency& adj);

/// Sliding windows of width `kernel` over each row of x (B x L), giving
/// (B * (L - kernel + 1)) x kernel with row `b * (L - kernel + 1) + p`.
[[nodiscard]] Var unfold1d(const Var& x, Index kernel);

/// LSTM recurrence over precomputed input projections `gates_in` ((B*T) x 4H, gate order
/// i, f, g, o, bias already added). Returns every hidden state, (B*T) x H, aligned with
/// the input positions. `reverse` runs from t = T-1 down to 0.
[[nodiscard]] Var lstm_recurrence(const Var& gates_in,
    const Var& w_hh,
    Index batch,
    Index time,
    bool reverse);

/// Multi-head scaled dot-product self attention over (B*T) x d projections. Keys at
/// positions >= lengths[b] are masked out.
[[nodiscard]] Var self_attention(const Var& q,
    const Var& k,
    const Var& v,
    Index batch,
    Index time,
    Index heads,
    std::span<const int32_t> lengths);

[[nodiscard]] Var softmax_rows(const Var& x);

/// Mean negative log-likelihood of `labels` under softmax(logits).
[[nodiscard]] Var cross_entropy(const Var& logits, std::span<const int32_t> labels);
}  // namespace vulnfuse::nn

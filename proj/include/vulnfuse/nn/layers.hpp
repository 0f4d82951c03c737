// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vulnfuse/nn/ops.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace vulnfuse::nn
{
/// Parameters in registration order, keyed by dotted path.
using NamedParams = std::vector<std::pair<std::string, Var>>;

[[nodiscard]] Matrix glorot_uniform(Index rows, Index cols, std::mt19937_64& rng);
[[nodiscard]] Matrix uniform(Index rows, Index cols, float limit, std::mt19937_64& rng);
[[nodiscard]] Matrix normal(Index rows, Index cols, float stddev, std::mt19937_64& rng);
/// Rows x cols with orthonormal rows or columns (whichever is fewer).
[[nodiscard]] Matrix orthogonal(Index rows, Index cols, std::mt19937_64& rng);

enum class Activation
{
    None,
    Relu,
    Tanh,
    Gelu,
};

[[nodiscard]] Var activate(const Var& x, Activation act);

struct Dense
{
    Var w;  // in x out
    Var b;  // 1 x out
    Activation act = Activation::None;

    Dense() = default;
    Dense(Index in, Index out, Activation act, std::mt19937_64& rng);

    [[nodiscard]] Var operator()(const Var& x) const { return activate(linear(x, w, b), act); }
    void collect(const std::string& prefix, NamedParams& out) const;
    [[nodiscard]] Index in_features() const { return w.rows(); }
    [[nodiscard]] Index out_features() const { return w.cols(); }
};

struct LayerNorm
{
    Var gamma;
    Var beta;
    float eps = 1e-12f;

    LayerNorm() = default;
    LayerNorm(Index dim, float eps);

    [[nodiscard]] Var operator()(const Var& x) const { return layer_norm(x, gamma, beta, eps); }
    void collect(const std::string& prefix, NamedParams& out) const;
};

struct Embedding
{
    Var table;

    Embedding() = default;
    Embedding(Index rows, Index dim, Matrix init);

    [[nodiscard]] Var operator()(std::span<const int32_t> ids) const
    {
        return embedding(table, ids);
    }
    void collect(const std::string& prefix, NamedParams& out) const;
};

/// One LSTM direction: Keras-style initialization (Glorot input kernel, orthogonal
/// recurrent kernel, forget-gate bias 1).
struct LstmCell
{
    Var w_ih;  // in x 4H
    Var w_hh;  // H x 4H
    Var b;     // 1 x 4H

    LstmCell() = default;
    LstmCell(Index in, Index hidden, std::mt19937_64& rng);

    [[nodiscard]] Index hidden() const { return w_hh.rows(); }
    void collect(const std::string& prefix, NamedParams& out) const;
};

/// Bidirectional LSTM over (B*T) x in sequences; both directions are concatenated
/// forward-first.
struct BiLstm
{
    LstmCell fwd;
    LstmCell bwd;

    BiLstm() = default;
    BiLstm(Index in, Index hidden, std::mt19937_64& rng);

    /// All hidden states, (B*T) x 2H.
    [[nodiscard]] Var sequence(const Var& x, Index batch, Index time) const;
    /// Final state of each direction (forward at t = T-1, backward at t = 0), B x 2H.
    [[nodiscard]] Var last(const Var& x, Index batch, Index time) const;
    void collect(const std::string& prefix, NamedParams& out) const;

private:
    [[nodiscard]] std::pair<Var, Var> run(const Var& x, Index batch, Index time) const;
};

/// Graph convolution: propagate(x W) + b over a normalized adjacency.
struct GcnConv
{
    Var w;
    Var b;
    Activation act = Activation::None;

    GcnConv() = default;
    GcnConv(Index in, Index out, Activation act, std::mt19937_64& rng);

    [[nodiscard]] Var operator()(const Var& x, const SparseAdjacency& adj) const;
    void collect(const std::string& prefix, NamedParams& out) const;
};
}  // namespace vulnfuse::nn

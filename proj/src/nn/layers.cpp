// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/nn/layers.hpp>

#include <Eigen/QR>

#include <cmath>

namespace vulnfuse::nn
{
Matrix uniform(Index rows, Index cols, float limit, std::mt19937_64& rng)
{
    std::uniform_real_distribution<float> dist{-limit, limit};
    Matrix m(rows, cols);
    for (Index i = 0; i < m.size(); ++i)
        m.data()[i] = dist(rng);
    return m;
}

Matrix glorot_uniform(Index rows, Index cols, std::mt19937_64& rng)
{
    return uniform(rows, cols, std::sqrt(6.0f / float(rows + cols)), rng);
}

Matrix normal(Index rows, Index cols, float stddev, std::mt19937_64& rng)
{
    std::normal_distribution<float> dist{0.0f, stddev};
    Matrix m(rows, cols);
    for (Index i = 0; i < m.size(); ++i)
        m.data()[i] = dist(rng);
    return m;
}

Matrix orthogonal(Index rows, Index cols, std::mt19937_64& rng)
{
    const Index n = std::max(rows, cols);
    const Index k = std::min(rows, cols);
    Eigen::MatrixXf a = normal(n, k, 1.0f, rng);
    Eigen::HouseholderQR<Eigen::MatrixXf> qr{a};
    Eigen::MatrixXf q = qr.householderQ() * Eigen::MatrixXf::Identity(n, k);
    // Flip columns so diag(R) is positive.
    const Eigen::MatrixXf r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Index j = 0; j < k; ++j)
    {
        if (r(j, j) < 0.0f)
            q.col(j) = -q.col(j);
    }
    if (rows >= cols)
        return q;
    return q.transpose();
}

Var activate(const Var& x, Activation act)
{
    switch (act)
    {
    case Activation::None:
        return x;
    case Activation::Relu:
        return relu(x);
    case Activation::Tanh:
        return tanh(x);
    case Activation::Gelu:
        return gelu(x);
    }
    return x;
}

Dense::Dense(Index in, Index out, Activation a, std::mt19937_64& rng)
    : w{parameter(glorot_uniform(in, out, rng))}, b{parameter(Matrix::Zero(1, out))}, act{a}
{}

void Dense::collect(const std::string& prefix, NamedParams& out) const
{
    out.emplace_back(prefix + ".w", w);
    out.emplace_back(prefix + ".b", b);
}

LayerNorm::LayerNorm(Index dim, float e)
    : gamma{parameter(Matrix::Ones(1, dim))}, beta{parameter(Matrix::Zero(1, dim))}, eps{e}
{}

void LayerNorm::collect(const std::string& prefix, NamedParams& out) const
{
    out.emplace_back(prefix + ".gamma", gamma);
    out.emplace_back(prefix + ".beta", beta);
}

Embedding::Embedding(Index rows, Index dim, Matrix init) : table{parameter(std::move(init))}
{
    if (table.rows() != rows || table.cols() != dim)
        throw DimMismatch{"embedding initializer shape"};
}

void Embedding::collect(const std::string& prefix, NamedParams& out) const
{
    out.emplace_back(prefix + ".table", table);
}

LstmCell::LstmCell(Index in, Index hidden, std::mt19937_64& rng)
    : w_ih{parameter(glorot_uniform(in, 4 * hidden, rng))},
      w_hh{parameter(orthogonal(hidden, 4 * hidden, rng))}
{
    Matrix bias = Matrix::Zero(1, 4 * hidden);
    bias.middleCols(hidden, hidden).setOnes();
    b = parameter(std::move(bias));
}

void LstmCell::collect(const std::string& prefix, NamedParams& out) const
{
    out.emplace_back(prefix + ".w_ih", w_ih);
    out.emplace_back(prefix + ".w_hh", w_hh);
    out.emplace_back(prefix + ".b", b);
}

BiLstm::BiLstm(Index in, Index hidden, std::mt19937_64& rng)
    : fwd{in, hidden, rng}, bwd{in, hidden, rng}
{}

std::pair<Var, Var> BiLstm::run(const Var& x, Index batch, Index time) const
{
    Var f = lstm_recurrence(linear(x, fwd.w_ih, fwd.b), fwd.w_hh, batch, time, false);
    Var r = lstm_recurrence(linear(x, bwd.w_ih, bwd.b), bwd.w_hh, batch, time, true);
    return {std::move(f), std::move(r)};
}

Var BiLstm::sequence(const Var& x, Index batch, Index time) const
{
    auto [f, r] = run(x, batch, time);
    const Var parts[] = {f, r};
    return concat_cols(parts);
}

Var BiLstm::last(const Var& x, Index batch, Index time) const
{
    auto [f, r] = run(x, batch, time);
    std::vector<Index> last_rows(static_cast<size_t>(batch));
    std::vector<Index> first_rows(static_cast<size_t>(batch));
    for (Index b = 0; b < batch; ++b)
    {
        last_rows[size_t(b)] = b * time + time - 1;
        first_rows[size_t(b)] = b * time;
    }
    const Var parts[] = {
        select_rows(f, std::move(last_rows)), select_rows(r, std::move(first_rows))};
    return concat_cols(parts);
}

void BiLstm::collect(const std::string& prefix, NamedParams& out) const
{
    fwd.collect(prefix + ".fwd", out);
    bwd.collect(prefix + ".bwd", out);
}

GcnConv::GcnConv(Index in, Index out, Activation a, std::mt19937_64& rng)
    : w{parameter(glorot_uniform(in, out, rng))}, b{parameter(Matrix::Zero(1, out))}, act{a}
{}

Var GcnConv::operator()(const Var& x, const SparseAdjacency& adj) const
{
    return activate(add_row(propagate(matmul(x, w), adj), b), act);
}

void GcnConv::collect(const std::string& prefix, NamedParams& out) const
{
    out.emplace_back(prefix + ".w", w);
    out.emplace_back(prefix + ".b", b);
}
}  // namespace vulnfuse::nn

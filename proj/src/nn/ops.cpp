// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/nn/ops.hpp>

#include <cmath>
#include <numbers>

namespace vulnfuse::nn
{
namespace
{
/// Parent `i` of `self` when it takes gradients, else nullptr.
Node* grad_target(Node& self, size_t i)
{
    Node* p = self.parents[i].get();
    return p->requires_grad ? p : nullptr;
}

void require(bool condition, const char* what)
{
    if (!condition)
        throw DimMismatch{what};
}

using Array = Eigen::Array<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline auto sigmoid_of(const auto& x)
{
    return (1.0f + (-x).exp()).inverse();
}
}  // namespace

Var matmul(const Var& a, const Var& b)
{
    require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    Matrix out = a.value() * b.value();
    return make_op(std::move(out), {a, b}, [](Node& self) {
        const auto& A = self.parents[0]->value;
        const auto& B = self.parents[1]->value;
        if (auto* pa = grad_target(self, 0))
            pa->grad_ref().noalias() += self.grad * B.transpose();
        if (auto* pb = grad_target(self, 1))
            pb->grad_ref().noalias() += A.transpose() * self.grad;
    });
}

Var linear(const Var& x, const Var& w, const Var& bias)
{
    require(x.cols() == w.rows(), "linear: input width does not match weight rows");
    Matrix out = x.value() * w.value();
    std::vector<Var> parents{x, w};
    if (bias)
    {
        require(bias.rows() == 1 && bias.cols() == w.cols(), "linear: bias shape");
        out.rowwise() += bias.value().row(0);
        parents.push_back(bias);
    }
    return make_op(std::move(out), std::move(parents), [](Node& self) {
        const auto& X = self.parents[0]->value;
        const auto& W = self.parents[1]->value;
        if (auto* px = grad_target(self, 0))
            px->grad_ref().noalias() += self.grad * W.transpose();
        if (auto* pw = grad_target(self, 1))
            pw->grad_ref().noalias() += X.transpose() * self.grad;
        if (self.parents.size() > 2)
        {
            if (auto* pb = grad_target(self, 2))
                pb->grad_ref() += self.grad.colwise().sum();
        }
    });
}

Var add(const Var& a, const Var& b)
{
    require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shapes differ");
    return make_op(a.value() + b.value(), {a, b}, [](Node& self) {
        for (size_t i = 0; i < 2; ++i)
        {
            if (auto* p = grad_target(self, i))
                p->grad_ref() += self.grad;
        }
    });
}

Var add_row(const Var& x, const Var& row)
{
    require(row.rows() == 1 && row.cols() == x.cols(), "add_row: shape");
    Matrix out = x.value();
    out.rowwise() += row.value().row(0);
    return make_op(std::move(out), {x, row}, [](Node& self) {
        if (auto* px = grad_target(self, 0))
            px->grad_ref() += self.grad;
        if (auto* pr = grad_target(self, 1))
            pr->grad_ref() += self.grad.colwise().sum();
    });
}

Var mul(const Var& a, const Var& b)
{
    require(a.rows() == b.rows() && a.cols() == b.cols(), "mul: shapes differ");
    Matrix out = a.value().cwiseProduct(b.value());
    return make_op(std::move(out), {a, b}, [](Node& self) {
        if (auto* pa = grad_target(self, 0))
            pa->grad_ref() += self.grad.cwiseProduct(self.parents[1]->value);
        if (auto* pb = grad_target(self, 1))
            pb->grad_ref() += self.grad.cwiseProduct(self.parents[0]->value);
    });
}

Var scale(const Var& a, float factor)
{
    return make_op(a.value() * factor, {a}, [factor](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref() += self.grad * factor;
    });
}

Var sum(const Var& a)
{
    Matrix out(1, 1);
    out(0, 0) = a.value().sum();
    return make_op(std::move(out), {a}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref().array() += self.grad(0, 0);
    });
}

Var relu(const Var& x)
{
    return make_op(x.value().cwiseMax(0.0f), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref().array() += (p->value.array() > 0.0f).select(self.grad.array(), 0.0f);
    });
}

Var tanh(const Var& x)
{
    Matrix out = x.value().array().tanh().matrix();
    return make_op(std::move(out), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref().array() += self.grad.array() * (1.0f - self.value.array().square());
    });
}

Var sigmoid(const Var& x)
{
    Matrix out = sigmoid_of(x.value().array()).matrix();
    return make_op(std::move(out), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref().array() +=
                self.grad.array() * self.value.array() * (1.0f - self.value.array());
    });
}

Var gelu(const Var& x)
{
    constexpr float inv_sqrt2 = 0.70710678118654752f;
    Matrix out =
        x.value().unaryExpr([](float v) { return 0.5f * v * (1.0f + std::erf(v * inv_sqrt2)); });
    return make_op(std::move(out), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
        {
            constexpr float inv_sqrt_2pi = 0.39894228040143268f;
            const Matrix d = p->value.unaryExpr([](float v) {
                return 0.5f * (1.0f + std::erf(v * inv_sqrt2)) +
                       v * inv_sqrt_2pi * std::exp(-0.5f * v * v);
            });
            p->grad_ref() += self.grad.cwiseProduct(d);
        }
    });
}

Var layer_norm(const Var& x, const Var& gamma, const Var& beta, float eps)
{
    const Index n = x.rows();
    const Index d = x.cols();
    require(gamma.cols() == d && beta.cols() == d && gamma.rows() == 1 && beta.rows() == 1,
        "layer_norm: parameter shape");

    Matrix xhat(n, d);
    Eigen::VectorXf inv_std(n);
    for (Index r = 0; r < n; ++r)
    {
        const auto row = x.value().row(r);
        const float mean = row.mean();
        const float var = (row.array() - mean).square().mean();
        inv_std(r) = 1.0f / std::sqrt(var + eps);
        xhat.row(r) = (row.array() - mean) * inv_std(r);
    }
    Matrix out = xhat;
    out.array().rowwise() *= gamma.value().row(0).array();
    out.rowwise() += beta.value().row(0);

    return make_op(std::move(out), {x, gamma, beta},
        [xhat = std::move(xhat), inv_std = std::move(inv_std)](Node& self) {
            const auto& g = self.parents[1]->value;
            if (auto* px = grad_target(self, 0))
            {
                const Index dim = xhat.cols();
                Matrix dxhat = self.grad;
                dxhat.array().rowwise() *= g.row(0).array();
                auto& dx = px->grad_ref();
                for (Index r = 0; r < xhat.rows(); ++r)
                {
                    const float s1 = dxhat.row(r).sum();
                    const float s2 = dxhat.row(r).dot(xhat.row(r));
                    dx.row(r).array() +=
                        (inv_std(r) / float(dim)) *
                        (float(dim) * dxhat.row(r).array() - s1 - xhat.row(r).array() * s2);
                }
            }
            if (auto* pg = grad_target(self, 1))
                pg->grad_ref() += self.grad.cwiseProduct(xhat).colwise().sum();
            if (auto* pb = grad_target(self, 2))
                pb->grad_ref() += self.grad.colwise().sum();
        });
}

Var embedding(const Var& table, std::span<const int32_t> ids)
{
    Matrix out(Index(ids.size()), table.cols());
    for (size_t i = 0; i < ids.size(); ++i)
    {
        if (ids[i] < 0 || ids[i] >= table.rows())
            throw DimMismatch{"embedding: id " + std::to_string(ids[i]) + " out of range"};
        out.row(Index(i)) = table.value().row(ids[i]);
    }
    return make_op(
        std::move(out), {table}, [ids = std::vector<int32_t>(ids.begin(), ids.end())](Node& self) {
            if (auto* p = grad_target(self, 0))
            {
                auto& g = p->grad_ref();
                for (size_t i = 0; i < ids.size(); ++i)
                    g.row(ids[i]) += self.grad.row(Index(i));
            }
        });
}

Var concat_cols(std::span<const Var> parts)
{
    require(!parts.empty(), "concat_cols: no inputs");
    const Index rows = parts.front().rows();
    Index cols = 0;
    for (const auto& p : parts)
    {
        require(p.rows() == rows, "concat_cols: row counts differ");
        cols += p.cols();
    }
    Matrix out(rows, cols);
    Index at = 0;
    std::vector<Index> widths;
    for (const auto& p : parts)
    {
        out.middleCols(at, p.cols()) = p.value();
        at += p.cols();
        widths.push_back(p.cols());
    }
    return make_op(std::move(out), std::vector<Var>(parts.begin(), parts.end()),
        [widths = std::move(widths)](Node& self) {
            Index offset = 0;
            for (size_t i = 0; i < widths.size(); ++i)
            {
                if (auto* p = grad_target(self, i))
                    p->grad_ref() += self.grad.middleCols(offset, widths[i]);
                offset += widths[i];
            }
        });
}

Var select_rows(const Var& x, std::vector<Index> rows)
{
    Matrix out(Index(rows.size()), x.cols());
    for (size_t i = 0; i < rows.size(); ++i)
    {
        require(rows[i] >= 0 && rows[i] < x.rows(), "select_rows: row out of range");
        out.row(Index(i)) = x.value().row(rows[i]);
    }
    return make_op(std::move(out), {x}, [rows = std::move(rows)](Node& self) {
        if (auto* p = grad_target(self, 0))
        {
            auto& g = p->grad_ref();
            for (size_t i = 0; i < rows.size(); ++i)
                g.row(rows[i]) += self.grad.row(Index(i));
        }
    });
}

Var reshape(const Var& x, Index rows, Index cols)
{
    require(rows * cols == x.value().size(), "reshape: element count differs");
    Matrix out = Eigen::Map<const Matrix>(x.value().data(), rows, cols);
    return make_op(std::move(out), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref() +=
                Eigen::Map<const Matrix>(self.grad.data(), p->value.rows(), p->value.cols());
    });
}

Var dropout(const Var& x, float rate, std::mt19937_64& rng, bool training)
{
    if (!training || rate <= 0.0f)
        return x;
    if (rate >= 1.0f)
        throw InvalidArgument{"dropout rate must be below 1"};
    const float keep_scale = 1.0f / (1.0f - rate);
    std::uniform_real_distribution<float> unit{0.0f, 1.0f};
    Matrix mask(x.rows(), x.cols());
    for (Index i = 0; i < mask.size(); ++i)
        mask.data()[i] = unit(rng) >= rate ? keep_scale : 0.0f;
    Matrix out = x.value().cwiseProduct(mask);
    return make_op(std::move(out), {x}, [mask = std::move(mask)](Node& self) {
        if (auto* p = grad_target(self, 0))
            p->grad_ref() += self.grad.cwiseProduct(mask);
    });
}

Var segment_mean(const Var& x, std::span<const int32_t> segment, Index num_segments)
{
    require(Index(segment.size()) == x.rows(), "segment_mean: one segment id per row");
    Matrix out = Matrix::Zero(num_segments, x.cols());
    Eigen::VectorXf count = Eigen::VectorXf::Zero(num_segments);
    for (size_t i = 0; i < segment.size(); ++i)
    {
        require(segment[i] >= 0 && segment[i] < num_segments, "segment_mean: bad segment id");
        out.row(segment[i]) += x.value().row(Index(i));
        count(segment[i]) += 1.0f;
    }
    for (Index s = 0; s < num_segments; ++s)
    {
        if (count(s) > 0.0f)
            out.row(s) /= count(s);
    }
    return make_op(std::move(out), {x},
        [seg = std::vector<int32_t>(segment.begin(), segment.end()), count](Node& self) {
            if (auto* p = grad_target(self, 0))
            {
                auto& g = p->grad_ref();
                for (size_t i = 0; i < seg.size(); ++i)
                    g.row(Index(i)) += self.grad.row(seg[i]) / count(seg[i]);
            }
        });
}

SparseAdjacency SparseAdjacency::gcn_normalized(Index num_nodes,
    std::span<const int32_t> src,
    std::span<const int32_t> dst)
{
    require(src.size() == dst.size(), "gcn_normalized: src/dst length differ");
    SparseAdjacency adj;
    adj.num_nodes = num_nodes;
    std::vector<float> degree(size_t(num_nodes), 1.0f);  // self loop
    for (size_t e = 0; e < src.size(); ++e)
    {
        require(src[e] >= 0 && src[e] < num_nodes && dst[e] >= 0 && dst[e] < num_nodes,
            "gcn_normalized: edge endpoint out of range");
        degree[size_t(dst[e])] += 1.0f;
    }
    const auto push = [&](int32_t s, int32_t d) {
        adj.src.push_back(s);
        adj.dst.push_back(d);
        adj.weight.push_back(1.0f / std::sqrt(degree[size_t(s)] * degree[size_t(d)]));
    };
    for (size_t e = 0; e < src.size(); ++e)
        push(src[e], dst[e]);
    for (int32_t n = 0; n < num_nodes; ++n)
        push(n, n);
    return adj;
}

Var propagate(const Var& x, const SparseAdjacency& adj)
{
    require(x.rows() == adj.num_nodes, "propagate: node count differs from adjacency");
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (size_t e = 0; e < adj.src.size(); ++e)
        out.row(adj.dst[e]) += adj.weight[e] * x.value().row(adj.src[e]);
    return make_op(std::move(out), {x}, [adj](Node& self) {
        if (auto* p = grad_target(self, 0))
        {
            auto& g = p->grad_ref();
            for (size_t e = 0; e < adj.src.size(); ++e)
                g.row(adj.src[e]) += adj.weight[e] * self.grad.row(adj.dst[e]);
        }
    });
}

Var unfold1d(const Var& x, Index kernel)
{
    const Index batch = x.rows();
    const Index len = x.cols();
    require(kernel >= 1 && len >= kernel, "unfold1d: sequence shorter than kernel");
    const Index windows = len - kernel + 1;
    Matrix out(batch * windows, kernel);
    for (Index b = 0; b < batch; ++b)
        for (Index p = 0; p < windows; ++p)
            out.row(b * windows + p) = x.value().row(b).segment(p, kernel);
    return make_op(std::move(out), {x}, [windows, kernel](Node& self) {
        if (auto* px = grad_target(self, 0))
        {
            auto& g = px->grad_ref();
            for (Index b = 0; b < g.rows(); ++b)
                for (Index p = 0; p < windows; ++p)
                    g.row(b).segment(p, kernel) += self.grad.row(b * windows + p);
        }
    });
}

Var lstm_recurrence(const Var& gates_in, const Var& w_hh, Index batch, Index time, bool reverse)
{
    const Index hidden = w_hh.rows();
    require(w_hh.cols() == 4 * hidden, "lstm: recurrent weight must be H x 4H");
    require(gates_in.cols() == 4 * hidden && gates_in.rows() == batch * time,
        "lstm: gate input must be (B*T) x 4H");

    struct Step
    {
        Matrix act;  // B x 4H: sigmoid(i), sigmoid(f), tanh(g), sigmoid(o)
        Matrix c;    // B x H
        Matrix tc;   // tanh(c)
        Matrix h;
    };
    auto steps = std::make_shared<std::vector<Step>>(size_t(time));
    const auto& G = gates_in.value();
    const auto& Whh = w_hh.value();
    Matrix out(batch * time, hidden);

    Matrix h_prev = Matrix::Zero(batch, hidden);
    Matrix c_prev = Matrix::Zero(batch, hidden);
    Matrix z(batch, 4 * hidden);
    for (Index s = 0; s < time; ++s)
    {
        const Index t = reverse ? time - 1 - s : s;
        for (Index b = 0; b < batch; ++b)
            z.row(b) = G.row(b * time + t);
        z.noalias() += h_prev * Whh;

        auto& st = (*steps)[size_t(s)];
        st.act.resize(batch, 4 * hidden);
        st.act.leftCols(2 * hidden) = sigmoid_of(z.leftCols(2 * hidden).array()).matrix();
        st.act.middleCols(2 * hidden, hidden) =
            z.middleCols(2 * hidden, hidden).array().tanh().matrix();
        st.act.rightCols(hidden) = sigmoid_of(z.rightCols(hidden).array()).matrix();

        const auto i = st.act.leftCols(hidden).array();
        const auto f = st.act.middleCols(hidden, hidden).array();
        const auto g = st.act.middleCols(2 * hidden, hidden).array();
        const auto o = st.act.rightCols(hidden).array();
        st.c = (f * c_prev.array() + i * g).matrix();
        st.tc = st.c.array().tanh().matrix();
        st.h = (o * st.tc.array()).matrix();
        for (Index b = 0; b < batch; ++b)
            out.row(b * time + t) = st.h.row(b);
        h_prev = st.h;
        c_prev = st.c;
    }

    return make_op(
        std::move(out), {gates_in, w_hh}, [steps, batch, time, hidden, reverse](Node& self) {
            auto* pg = grad_target(self, 0);
            auto* pw = grad_target(self, 1);
            const auto& Whh = self.parents[1]->value;
            Matrix dh_next = Matrix::Zero(batch, hidden);
            Matrix dc_next = Matrix::Zero(batch, hidden);
            Matrix dz(batch, 4 * hidden);
            Matrix dh(batch, hidden);
            const Matrix zeros = Matrix::Zero(batch, hidden);

            for (Index s = time - 1; s >= 0; --s)
            {
                const Index t = reverse ? time - 1 - s : s;
                const auto& st = (*steps)[size_t(s)];
                const Matrix& c_prev = s > 0 ? (*steps)[size_t(s - 1)].c : zeros;
                const Matrix& h_prev = s > 0 ? (*steps)[size_t(s - 1)].h : zeros;

                for (Index b = 0; b < batch; ++b)
                    dh.row(b) = self.grad.row(b * time + t);
                dh += dh_next;

                const auto i = st.act.leftCols(hidden).array();
                const auto f = st.act.middleCols(hidden, hidden).array();
                const auto g = st.act.middleCols(2 * hidden, hidden).array();
                const auto o = st.act.rightCols(hidden).array();
                const auto tc = st.tc.array();

                const Array dc = dh.array() * o * (1.0f - tc.square()) + dc_next.array();
                dz.leftCols(hidden) = (dc * g * i * (1.0f - i)).matrix();
                dz.middleCols(hidden, hidden) = (dc * c_prev.array() * f * (1.0f - f)).matrix();
                dz.middleCols(2 * hidden, hidden) = (dc * i * (1.0f - g.square())).matrix();
                dz.rightCols(hidden) = (dh.array() * tc * o * (1.0f - o)).matrix();
                dc_next = (dc * f).matrix();

                if (pg != nullptr)
                {
                    auto& gg = pg->grad_ref();
                    for (Index b = 0; b < batch; ++b)
                        gg.row(b * time + t) += dz.row(b);
                }
                if (pw != nullptr && s > 0)
                    pw->grad_ref().noalias() += h_prev.transpose() * dz;
                dh_next.noalias() = dz * Whh.transpose();
            }
        });
}

Var self_attention(const Var& q,
    const Var& k,
    const Var& v,
    Index batch,
    Index time,
    Index heads,
    std::span<const int32_t> lengths)
{
    const Index d = q.cols();
    require(d % heads == 0, "attention: width not divisible by heads");
    require(q.rows() == batch * time && k.rows() == q.rows() && v.rows() == q.rows() &&
                k.cols() == d && v.cols() == d,
        "attention: projection shapes");
    require(Index(lengths.size()) == batch, "attention: one length per sequence");
    const Index dh = d / heads;
    const float inv_scale = 1.0f / std::sqrt(float(dh));
    const bool keep =
        grad_enabled() && (q.requires_grad() || k.requires_grad() || v.requires_grad());

    Matrix out(batch * time, d);
    auto probs = std::make_shared<std::vector<Matrix>>();
    if (keep)
        probs->resize(size_t(batch * heads));
    Matrix scores(time, time);
    for (Index b = 0; b < batch; ++b)
    {
        const Index valid = std::clamp<Index>(lengths[size_t(b)], 1, time);
        for (Index h = 0; h < heads; ++h)
        {
            const auto Q = q.value().block(b * time, h * dh, time, dh);
            const auto K = k.value().block(b * time, h * dh, time, dh);
            const auto V = v.value().block(b * time, h * dh, time, dh);
            scores.noalias() = Q * K.transpose();
            scores *= inv_scale;
            if (valid < time)
                scores.rightCols(time - valid).setConstant(-1e9f);
            for (Index r = 0; r < time; ++r)
            {
                auto row = scores.row(r);
                const float m = row.maxCoeff();
                row = (row.array() - m).exp().matrix();
                row /= row.sum();
            }
            out.block(b * time, h * dh, time, dh).noalias() = scores * V;
            if (keep)
                (*probs)[size_t(b * heads + h)] = scores;
        }
    }

    return make_op(
        std::move(out), {q, k, v}, [probs, batch, time, heads, dh, inv_scale](Node& self) {
            auto* pq = grad_target(self, 0);
            auto* pk = grad_target(self, 1);
            auto* pv = grad_target(self, 2);
            const auto& Qv = self.parents[0]->value;
            const auto& Kv = self.parents[1]->value;
            const auto& Vv = self.parents[2]->value;
            Matrix dP(time, time);
            for (Index b = 0; b < batch; ++b)
            {
                for (Index h = 0; h < heads; ++h)
                {
                    const auto& P = (*probs)[size_t(b * heads + h)];
                    const auto dO = self.grad.block(b * time, h * dh, time, dh);
                    const auto Q = Qv.block(b * time, h * dh, time, dh);
                    const auto K = Kv.block(b * time, h * dh, time, dh);
                    const auto V = Vv.block(b * time, h * dh, time, dh);
                    if (pv != nullptr)
                        pv->grad_ref().block(b * time, h * dh, time, dh).noalias() +=
                            P.transpose() * dO;
                    dP.noalias() = dO * V.transpose();
                    for (Index r = 0; r < time; ++r)
                    {
                        const float dot = dP.row(r).dot(P.row(r));
                        dP.row(r) = (P.row(r).array() * (dP.row(r).array() - dot)).matrix();
                    }
                    dP *= inv_scale;
                    if (pq != nullptr)
                        pq->grad_ref().block(b * time, h * dh, time, dh).noalias() += dP * K;
                    if (pk != nullptr)
                        pk->grad_ref().block(b * time, h * dh, time, dh).noalias() +=
                            dP.transpose() * Q;
                }
            }
        });
}

Var softmax_rows(const Var& x)
{
    Matrix out = x.value();
    for (Index r = 0; r < out.rows(); ++r)
    {
        auto row = out.row(r);
        const float m = row.maxCoeff();
        row = (row.array() - m).exp().matrix();
        row /= row.sum();
    }
    return make_op(std::move(out), {x}, [](Node& self) {
        if (auto* p = grad_target(self, 0))
        {
            auto& g = p->grad_ref();
            for (Index r = 0; r < self.value.rows(); ++r)
            {
                const float dot = self.grad.row(r).dot(self.value.row(r));
                g.row(r).array() += self.value.row(r).array() * (self.grad.row(r).array() - dot);
            }
        }
    });
}

Var cross_entropy(const Var& logits, std::span<const int32_t> labels)
{
    const Index n = logits.rows();
    require(Index(labels.size()) == n && n > 0, "cross_entropy: one label per row");
    Matrix probs = logits.value();
    double loss = 0.0;
    for (Index r = 0; r < n; ++r)
    {
        require(labels[size_t(r)] >= 0 && labels[size_t(r)] < probs.cols(),
            "cross_entropy: label out of range");
        auto row = probs.row(r);
        const float m = row.maxCoeff();
        row = (row.array() - m).exp().matrix();
        const float z = row.sum();
        row /= z;
        loss += double(m) + std::log(double(z)) - double(logits.value()(r, labels[size_t(r)]));
    }
    Matrix out(1, 1);
    out(0, 0) = static_cast<float>(loss / double(n));
    return make_op(std::move(out), {logits},
        [probs = std::move(probs), labels = std::vector<int32_t>(labels.begin(), labels.end())](
            Node& self) {
            if (auto* p = grad_target(self, 0))
            {
                Matrix d = probs;
                for (size_t r = 0; r < labels.size(); ++r)
                    d(Index(r), labels[r]) -= 1.0f;
                p->grad_ref() += d * (self.grad(0, 0) / float(labels.size()));
            }
        });
}
}  // namespace vulnfuse::nn

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>
#include <vector>

/// Minimal reverse-mode automatic differentiation over row-major float matrices.
///
/// Every value is 2-D. Sequences are stored batch-major as (batch * time) x features with
/// row index `b * time + t`; ops that need the time structure take it as an argument.
namespace vulnfuse::nn
{
using Matrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<float, 1, Eigen::Dynamic>;

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node
{
    Matrix value;
    /// Same shape as `value` once something has flowed back; empty before.
    Matrix grad;
    bool requires_grad = false;
    std::vector<NodePtr> parents;
    /// Adds this node's `grad` contribution into its parents' grads.
    std::function<void(Node&)> backward;

    Matrix& grad_ref()
    {
        if (grad.size() == 0)
            grad = Matrix::Zero(value.rows(), value.cols());
        return grad;
    }
};

class Var
{
public:
    Var() = default;
    explicit Var(NodePtr node) noexcept : node_{std::move(node)} {}

    [[nodiscard]] const Matrix& value() const noexcept { return node_->value; }
    [[nodiscard]] Matrix& mutable_value() noexcept { return node_->value; }
    [[nodiscard]] const Matrix& grad() const noexcept { return node_->grad; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return node_->value.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return node_->value.cols(); }
    [[nodiscard]] bool requires_grad() const noexcept { return node_->requires_grad; }
    [[nodiscard]] const NodePtr& node() const noexcept { return node_; }
    [[nodiscard]] explicit operator bool() const noexcept { return node_ != nullptr; }

    void zero_grad() noexcept { node_->grad.resize(0, 0); }

private:
    NodePtr node_;
};

/// Leaf that never receives gradients.
[[nodiscard]] Var constant(Matrix value);

/// Trainable leaf.
[[nodiscard]] Var parameter(Matrix value);

/// Builds an op node. When no parent requires grad (or grad recording is disabled) the
/// backward closure is dropped and the node is a plain constant.
[[nodiscard]] Var make_op(Matrix value,
    std::vector<Var> parents,
    std::function<void(Node&)> backward);

/// Runs reverse-mode accumulation from a scalar (1x1) output, seeding d(out)/d(out) = 1.
void backward(const Var& output);

/// Disables graph recording on the current thread while alive.
class NoGradGuard
{
public:
    NoGradGuard() noexcept;
    ~NoGradGuard();
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;

private:
    bool previous_;
};

[[nodiscard]] bool grad_enabled() noexcept;
}  // namespace vulnfuse::nn

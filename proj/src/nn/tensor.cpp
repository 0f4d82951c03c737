// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/nn/tensor.hpp>

#include <unordered_set>

namespace vulnfuse::nn
{
namespace
{
thread_local bool recording = true;
}

NoGradGuard::NoGradGuard() noexcept : previous_{recording}
{
    recording = false;
}

NoGradGuard::~NoGradGuard()
{
    recording = previous_;
}

bool grad_enabled() noexcept
{
    return recording;
}

Var constant(Matrix value)
{
    auto node = std::make_shared<Node>();
    node->value = std::move(value);
    return Var{std::move(node)};
}

Var parameter(Matrix value)
{
    auto node = std::make_shared<Node>();
    node->value = std::move(value);
    node->requires_grad = true;
    return Var{std::move(node)};
}

Var make_op(Matrix value, std::vector<Var> parents, std::function<void(Node&)> backward)
{
    auto node = std::make_shared<Node>();
    node->value = std::move(value);
    if (!recording)
        return Var{std::move(node)};

    bool needs = false;
    for (const auto& p : parents)
        needs = needs || p.requires_grad();
    if (!needs)
        return Var{std::move(node)};

    node->requires_grad = true;
    node->parents.reserve(parents.size());
    for (auto& p : parents)
        node->parents.push_back(p.node());
    node->backward = std::move(backward);
    return Var{std::move(node)};
}

void backward(const Var& output)
{
    if (output.rows() != 1 || output.cols() != 1)
        throw InvalidArgument{"backward() needs a scalar output"};
    if (!output.requires_grad())
        return;

    // Iterative post-order DFS gives a topological order (parents before children).
    std::vector<Node*> order;
    std::unordered_set<Node*> visited;
    std::vector<std::pair<Node*, size_t>> stack{{output.node().get(), 0}};
    visited.insert(output.node().get());
    while (!stack.empty())
    {
        auto& [node, next] = stack.back();
        if (next < node->parents.size())
        {
            Node* parent = node->parents[next++].get();
            if (parent->requires_grad && visited.insert(parent).second)
                stack.emplace_back(parent, 0);
        }
        else
        {
            order.push_back(node);
            stack.pop_back();
        }
    }

    output.node()->grad_ref()(0, 0) += 1.0f;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
    {
        Node& n = **it;
        if (n.backward && n.grad.size() != 0)
            n.backward(n);
    }
}
}  // namespace vulnfuse::nn

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/nn/optim.hpp>

#include <cmath>

namespace vulnfuse::nn
{
Adam::Adam(NamedParams params, AdamOptions opts) : params_{std::move(params)}, opts_{opts}
{
    for (const auto& [name, p] : params_)
    {
        m_.push_back(Matrix::Zero(p.rows(), p.cols()));
        v_.push_back(Matrix::Zero(p.rows(), p.cols()));
    }
}

void Adam::zero_grad()
{
    for (auto& [name, p] : params_)
        p.zero_grad();
}

void Adam::step()
{
    ++t_;
    const float c1 = 1.0f - std::pow(opts_.beta1, float(t_));
    const float c2 = 1.0f - std::pow(opts_.beta2, float(t_));
    const float lr = opts_.learning_rate * std::sqrt(c2) / c1;
    for (size_t i = 0; i < params_.size(); ++i)
    {
        auto& p = params_[i].second;
        const Matrix& g = p.grad();
        if (g.size() == 0)
            continue;
        m_[i] = opts_.beta1 * m_[i] + (1.0f - opts_.beta1) * g;
        v_[i] = opts_.beta2 * v_[i] + (1.0f - opts_.beta2) * g.cwiseProduct(g);
        p.mutable_value().array() -= lr * m_[i].array() / (v_[i].array().sqrt() + opts_.epsilon);
    }
}
}  // namespace vulnfuse::nn

// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/nn/optim.hpp>
#include <vulnfuse/train_eval.hpp>

#include <chrono>
#include <numeric>

namespace vulnfuse
{
namespace
{
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int32_t argmax_row(const nn::Matrix& m, nn::Index r)
{
    int32_t best = 0;
    for (nn::Index c = 1; c < m.cols(); ++c)
    {
        if (m(r, c) > m(r, best))
            best = int32_t(c);
    }
    return best;
}

void check_hyper(const TrainingHyper& h)
{
    if (h.batch_size <= 0)
        throw InvalidArgument{"batch_size must be positive"};
    if (!(h.learning_rate > 0.0f))
        throw InvalidArgument{"learning_rate must be positive"};
    if (h.epochs < 0)
        throw InvalidArgument{"epochs must not be negative"};
}
}  // namespace

TrainResult train(model::Model& model,
    std::span<const model::Sample> samples,
    const TrainingHyper& hyper)
{
    check_hyper(hyper);
    TrainResult result;
    if (hyper.epochs == 0)
        return result;
    if (samples.empty())
        throw InvalidArgument{"no training samples"};

    const auto needs = model.required();
    std::vector<int32_t> labels(samples.size());
    for (size_t i = 0; i < samples.size(); ++i)
    {
        model::check_features(samples[i], needs);
        if (samples[i].label < 0 || samples[i].label >= 3)
            throw InvalidArgument{"record " + samples[i].id + " has no valid label"};
    }

    nn::Adam optimizer{model.parameters(), {.learning_rate = hyper.learning_rate}};
    std::mt19937_64 shuffle_rng{hyper.seed};
    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::vector<const model::Sample*> batch;
    std::vector<int32_t> batch_labels;

    const auto start = Clock::now();
    for (int epoch = 1; epoch <= hyper.epochs; ++epoch)
    {
        const auto epoch_start = Clock::now();
        for (size_t i = order.size() - 1; i > 0; --i)
            std::swap(order[i], order[shuffle_rng() % (i + 1)]);

        double loss_sum = 0.0;
        size_t correct = 0;
        for (size_t at = 0; at < order.size(); at += size_t(hyper.batch_size))
        {
            const size_t end = std::min(order.size(), at + size_t(hyper.batch_size));
            batch.clear();
            batch_labels.clear();
            for (size_t k = at; k < end; ++k)
            {
                batch.push_back(&samples[order[k]]);
                batch_labels.push_back(samples[order[k]].label);
            }
            nn::Var logits = model.logits(batch, true);
            nn::Var loss = nn::cross_entropy(logits, batch_labels);
            optimizer.zero_grad();
            nn::backward(loss);
            optimizer.step();

            loss_sum += double(loss.value()(0, 0)) * double(batch.size());
            for (size_t k = 0; k < batch.size(); ++k)
                correct += argmax_row(logits.value(), nn::Index(k)) == batch_labels[k];
        }
        result.history.push_back({
            .epoch = epoch,
            .loss = loss_sum / double(samples.size()),
            .accuracy = double(correct) / double(samples.size()),
            .seconds = seconds_since(epoch_start),
        });
    }
    result.train_seconds = seconds_since(start);
    result.steps = optimizer.steps();
    return result;
}

std::vector<Prediction> predict(const model::Model& model,
    std::span<const model::Sample> samples,
    int batch_size)
{
    if (batch_size <= 0)
        throw InvalidArgument{"batch_size must be positive"};
    std::vector<Prediction> out;
    out.reserve(samples.size());
    std::vector<const model::Sample*> batch;
    for (size_t at = 0; at < samples.size(); at += size_t(batch_size))
    {
        batch.clear();
        for (size_t k = at; k < std::min(samples.size(), at + size_t(batch_size)); ++k)
            batch.push_back(&samples[k]);
        const nn::Matrix probs = model.predict_proba(batch);
        for (nn::Index r = 0; r < probs.rows(); ++r)
        {
            Prediction p;
            p.label = argmax_row(probs, r);
            for (nn::Index c = 0; c < 3; ++c)
                p.probabilities[size_t(c)] = probs(r, c);
            out.push_back(p);
        }
    }
    return out;
}

EvaluationReport evaluate(const model::Model& model,
    std::span<const model::Sample> test,
    Averaging averaging,
    int batch_size)
{
    if (test.empty())
        throw EmptyTestSet{"no test samples"};
    for (const auto& s : test)
    {
        if (s.label < 0 || s.label >= 3)
            throw InvalidArgument{"record " + s.id + " has no valid label"};
    }
    EvaluationReport report;
    const auto start = Clock::now();
    const auto preds = predict(model, test, batch_size);
    report.predict_seconds = seconds_since(start);

    for (size_t i = 0; i < test.size(); ++i)
        ++report.confusion[size_t(test[i].label)][size_t(preds[i].label)];
    report.metrics = compute_metrics(report.confusion, averaging);
    report.averaging = std::string{to_string(averaging)};
    report.variant = std::string{model::to_string(model.config().variant)};
    report.seed = model.config().seed;
    report.test_size = test.size();
    return report;
}
}  // namespace vulnfuse

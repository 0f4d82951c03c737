// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/train_eval.hpp>

namespace vulnfuse
{
namespace
{
double ratio(int64_t num, int64_t den) noexcept
{
    return den == 0 ? 0.0 : double(num) / double(den);
}
}  // namespace

std::string_view to_string(Averaging a) noexcept
{
    return a == Averaging::Weighted ? "weighted" : "macro";
}

std::optional<Averaging> parse_averaging(std::string_view s) noexcept
{
    if (s == "weighted")
        return Averaging::Weighted;
    if (s == "macro")
        return Averaging::Macro;
    return std::nullopt;
}

Metrics compute_metrics(const Confusion& confusion, Averaging averaging)
{
    int64_t total = 0;
    int64_t correct = 0;
    std::array<int64_t, 3> predicted{};
    Metrics m;
    for (size_t t = 0; t < 3; ++t)
    {
        for (size_t p = 0; p < 3; ++p)
        {
            if (confusion[t][p] < 0)
                throw InvalidArgument{"confusion matrix has a negative count"};
            total += confusion[t][p];
            predicted[p] += confusion[t][p];
            m.per_class[t].support += confusion[t][p];
        }
        correct += confusion[t][t];
    }
    if (total == 0)
        throw EmptyTestSet{"confusion matrix is empty"};

    for (size_t c = 0; c < 3; ++c)
    {
        auto& pc = m.per_class[c];
        const int64_t tp = confusion[c][c];
        pc.precision = ratio(tp, predicted[c]);
        pc.recall = ratio(tp, pc.support);
        const double sum = pc.precision + pc.recall;
        pc.f1 = sum == 0.0 ? 0.0 : 2.0 * pc.precision * pc.recall / sum;
    }

    m.accuracy = ratio(correct, total);
    if (averaging == Averaging::Macro)
    {
        for (const auto& pc : m.per_class)
        {
            m.precision += pc.precision / 3.0;
            m.recall += pc.recall / 3.0;
            m.f1 += pc.f1 / 3.0;
        }
        return m;
    }

    // Weighted recall sums support_c * tp_c / support_c = tp_c, so it is built from the
    // integer counts to stay bit-identical to the accuracy.
    int64_t recall_num = 0;
    for (size_t c = 0; c < 3; ++c)
    {
        const auto& pc = m.per_class[c];
        m.precision += double(pc.support) * pc.precision;
        m.f1 += double(pc.support) * pc.f1;
        recall_num += confusion[c][c];
    }
    m.precision /= double(total);
    m.f1 /= double(total);
    m.recall = ratio(recall_num, total);
    return m;
}
}  // namespace vulnfuse

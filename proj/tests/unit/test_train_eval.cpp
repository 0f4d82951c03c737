// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/train_eval.hpp>
#include <vulnfuse/util.hpp>

#include <support/synthetic.hpp>

#include <doctest.h>
#include <json.hpp>

#include <chrono>
#include <random>

using namespace vulnfuse;

namespace
{
/// Metrics straight from the definitions, kept apart from the library code.
struct Reference
{
    double accuracy, precision, recall, f1;
};

Reference reference_metrics(const Confusion& c, bool weighted)
{
    double total = 0, correct = 0;
    double col[3] = {}, row[3] = {};
    for (int t = 0; t < 3; ++t)
    {
        for (int p = 0; p < 3; ++p)
        {
            total += double(c[t][p]);
            row[t] += double(c[t][p]);
            col[p] += double(c[t][p]);
        }
        correct += double(c[t][t]);
    }
    Reference r{correct / total, 0, 0, 0};
    for (int k = 0; k < 3; ++k)
    {
        const double tp = double(c[k][k]);
        const double p = col[k] > 0 ? tp / col[k] : 0.0;
        const double q = row[k] > 0 ? tp / row[k] : 0.0;
        const double f = p + q > 0 ? 2 * p * q / (p + q) : 0.0;
        const double w = weighted ? row[k] / total : 1.0 / 3.0;
        r.precision += w * p;
        r.recall += w * q;
        r.f1 += w * f;
    }
    return r;
}

double train_accuracy(const model::Model& m, std::span<const model::Sample> samples)
{
    const auto preds = predict(m, samples);
    size_t hits = 0;
    for (size_t i = 0; i < samples.size(); ++i)
        hits += preds[i].label == samples[i].label;
    return double(hits) / double(samples.size());
}
}  // namespace

TEST_CASE("metric oracle on a hand-computed matrix")
{
    const Confusion c{{{5, 0, 0}, {0, 0, 5}, {0, 0, 5}}};
    const auto m = compute_metrics(c, Averaging::Weighted);
    CHECK(m.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.precision == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    CHECK(m.per_class[1].precision == 0.0);
    CHECK(m.per_class[2].precision == 0.5);
    CHECK(m.per_class[2].support == 5);

    // Equal supports make macro and weighted agree.
    const auto macro = compute_metrics(c, Averaging::Macro);
    CHECK(macro.f1 == doctest::Approx(m.f1).epsilon(1e-12));

    const Confusion skewed{{{8, 2, 0}, {1, 1, 0}, {0, 0, 0}}};
    const auto w = compute_metrics(skewed, Averaging::Weighted);
    const auto u = compute_metrics(skewed, Averaging::Macro);
    CHECK(w.recall == w.accuracy);
    CHECK(u.recall == doctest::Approx((0.8 + 0.5 + 0.0) / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)compute_metrics(Confusion{}, Averaging::Weighted), EmptyTestSet);
    CHECK(parse_averaging("macro") == Averaging::Macro);
    CHECK_FALSE(parse_averaging("micro"));
}

TEST_CASE("metrics match the definitions on random matrices")
{
    std::mt19937_64 rng{6};
    for (int trial = 0; trial < 1000; ++trial)
    {
        Confusion c{};
        int64_t total = 0;
        for (auto& row : c)
        {
            for (auto& x : row)
            {
                x = rng() % 4 == 0 ? 0 : int64_t(rng() % 200);
                total += x;
            }
        }
        if (total == 0)
            c[0][0] = 1;
        for (const bool weighted : {true, false})
        {
            const auto m = compute_metrics(c, weighted ? Averaging::Weighted : Averaging::Macro);
            const auto r = reference_metrics(c, weighted);
            CHECK(std::abs(m.accuracy - r.accuracy) <= 1e-9);
            CHECK(std::abs(m.precision - r.precision) <= 1e-9);
            CHECK(std::abs(m.recall - r.recall) <= 1e-9);
            CHECK(std::abs(m.f1 - r.f1) <= 1e-9);
            if (weighted)
                CHECK(m.recall == m.accuracy);
        }
    }
}

TEST_CASE("perfect and constant predictors")
{
    const Confusion perfect{{{4, 0, 0}, {0, 3, 0}, {0, 0, 2}}};
    const auto p = compute_metrics(perfect, Averaging::Weighted);
    CHECK(p.accuracy == 1.0);
    CHECK(p.precision == 1.0);
    CHECK(p.f1 == 1.0);

    const Confusion constant{{{0, 0, 4}, {0, 0, 3}, {0, 0, 2}}};
    const auto k = compute_metrics(constant, Averaging::Weighted);
    CHECK(k.accuracy == doctest::Approx(2.0 / 9.0));
    CHECK(k.per_class[0].f1 == 0.0);
    CHECK(k.per_class[2].recall == 1.0);
}

TEST_CASE("a separable toy set is fit within 200 steps")
{
    const auto vocab = test::synthetic_vocab();
    const auto samples = test::synthetic_samples(12, 11);
    model::ModelVariantConfig cfg;
    model::Model m{cfg, vocab};
    TrainingHyper hyper;
    hyper.batch_size = 12;
    hyper.epochs = 200;

    const auto t0 = std::chrono::steady_clock::now();
    const auto r = train(m, samples, hyper);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("overfit run took " << secs << " s");
    CHECK(r.steps == 200);
    CHECK(r.history.size() == 200);
    CHECK(r.history.back().loss < r.history.front().loss);
    CHECK(train_accuracy(m, samples) >= 0.95);
}

TEST_CASE("training edge cases")
{
    const auto vocab = test::synthetic_vocab();
    auto samples = test::synthetic_samples(6, 12);
    model::ModelVariantConfig cfg;
    cfg.variant = model::Variant::GNN;

    model::Model m{cfg, vocab};
    const auto before = m.predict_proba(test::pointers(samples));
    TrainingHyper zero;
    zero.epochs = 0;
    const auto r = train(m, samples, zero);
    CHECK(r.steps == 0);
    CHECK(r.history.empty());
    CHECK(m.predict_proba(test::pointers(samples)) == before);

    TrainingHyper bad;
    bad.batch_size = 0;
    CHECK_THROWS_AS((void)train(m, samples, bad), InvalidArgument);

    // A missing input is reported before any update.
    auto broken = samples;
    broken[4].graph.reset();
    TrainingHyper one;
    one.epochs = 1;
    CHECK_THROWS_AS((void)train(m, broken, one), MissingFeature);
    CHECK(m.predict_proba(test::pointers(samples)) == before);

    CHECK_THROWS_AS((void)evaluate(m, {}), EmptyTestSet);
}

TEST_CASE("same seed, same result")
{
    const auto vocab = test::synthetic_vocab();
    const auto samples = test::synthetic_samples(9, 13);
    model::ModelVariantConfig cfg;
    cfg.variant = model::Variant::M1;
    TrainingHyper hyper;
    hyper.batch_size = 4;
    hyper.epochs = 2;

    model::Model a{cfg, vocab};
    model::Model b{cfg, vocab};
    const auto ra = train(a, samples, hyper);
    const auto rb = train(b, samples, hyper);
    CHECK(ra.history.back().loss == rb.history.back().loss);
    CHECK(a.predict_proba(test::pointers(samples)) == b.predict_proba(test::pointers(samples)));
}

TEST_CASE("evaluation and prediction")
{
    const auto vocab = test::synthetic_vocab();
    const auto samples = test::synthetic_samples(10, 14);
    model::ModelVariantConfig cfg;
    cfg.variant = model::Variant::GNN;
    model::Model m{cfg, vocab};
    const auto preds = predict(m, samples, 3);
    REQUIRE(preds.size() == 10);
    for (const auto& p : preds)
    {
        const double total = p.probabilities[0] + p.probabilities[1] + p.probabilities[2];
        CHECK(std::abs(total - 1.0) <= 1e-5);
        const auto best = std::max_element(p.probabilities.begin(), p.probabilities.end());
        CHECK(p.label == int32_t(best - p.probabilities.begin()));
    }

    const auto report = evaluate(m, samples, Averaging::Macro, 4);
    CHECK(report.variant == "GNN");
    CHECK(report.averaging == "macro");
    CHECK(report.test_size == 10);
    int64_t sum = 0;
    for (const auto& row : report.confusion)
        for (const auto x : row)
            sum += x;
    CHECK(sum == 10);
    CHECK(report.predict_seconds >= 0.0);
}

TEST_CASE("reports round-trip through JSON")
{
    EvaluationReport r;
    r.variant = "VulnSense";
    r.epochs = 10;
    r.seed = 42;
    r.split_seed = 7;
    r.confusion = {{{3, 1, 0}, {0, 2, 1}, {1, 0, 4}}};
    r.metrics = compute_metrics(r.confusion, Averaging::Weighted);
    r.train_seconds = 1.5;
    r.predict_seconds = 0.25;
    r.test_size = 12;
    r.history = {{1, 1.1, 0.3, 0.5}, {2, 0.9, 0.6, 0.5}};
    r.config_hash = "abc";
    const auto text = r.to_json();
    const auto back = EvaluationReport::from_json(text);
    CHECK(back.to_json() == text);
    CHECK(back.confusion == r.confusion);
    CHECK(back.metrics.f1 == r.metrics.f1);

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("confusion").size() == 3);
    const bool has_accuracy = j.contains("accuracy") || j.at("metrics").contains("accuracy");
    CHECK(has_accuracy);
    CHECK_THROWS((void)EvaluationReport::from_json("{}"));

    CHECK(report_stem("M3", 20, 1) == "M3_e20_s1");
}

TEST_CASE("ablation grid writes its artifacts")
{
    const auto vocab = test::synthetic_vocab();
    const auto all = test::synthetic_samples(12, 15, 40);
    const std::vector<model::Sample> train_set(all.begin(), all.begin() + 9);
    const std::vector<model::Sample> test_set(all.begin() + 9, all.end());

    AblationPlan plan;
    plan.variants = {model::Variant::GNN, model::Variant::M3};
    plan.epoch_budgets = {1, 2};
    plan.base.max_opcode_len = 40;
    plan.hyper.batch_size = 4;
    plan.split_seed = 3;
    plan.out_dir = std::filesystem::temp_directory_path() / "vulnfuse_ablation";
    std::filesystem::remove_all(plan.out_dir);

    const auto result = run_ablation(plan, vocab, train_set, test_set);
    REQUIRE(result.reports.size() == 4);
    for (const auto& r : result.reports)
    {
        CHECK(r.status == "ok");
        CHECK(r.split_seed == 3);
        CHECK(r.test_size == 3);
        int64_t sum = 0;
        for (const auto& row : r.confusion)
            for (const auto x : row)
                sum += x;
        CHECK(sum == 3);
    }
    CHECK(result.reports[1].history.size() == 2);
    CHECK(result.table.find("M3") != std::string::npos);
    CHECK(std::filesystem::exists(plan.out_dir / "report_GNN_e2_s42.json"));
    CHECK(std::filesystem::exists(plan.out_dir / "ablation_s42.csv"));
    CHECK(std::filesystem::exists(plan.out_dir / "train_time_s42.svg"));
    CHECK(read_file(plan.out_dir / "predict_time_s42.svg").starts_with("<svg"));
    const auto csv = render_csv(result.reports);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    // A failing cell is recorded and the grid keeps going.
    auto broken_test = test_set;
    broken_test[0].graph.reset();
    plan.out_dir.clear();
    plan.epoch_budgets = {1};
    const auto partial = run_ablation(plan, vocab, train_set, broken_test);
    REQUIRE(partial.reports.size() == 2);
    CHECK(partial.reports[0].status == "failed");
    CHECK(partial.reports[0].error.find(broken_test[0].id) != std::string::npos);
    CHECK(partial.files.empty());
}

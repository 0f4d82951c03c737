// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/error.hpp>
#include <vulnfuse/train_eval.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace vulnfuse
{
namespace
{
using nlohmann::json;

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (const char c : s)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string pad_right(std::string s, size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}
}  // namespace

std::string report_stem(std::string_view variant, int epochs, uint64_t seed)
{
    return std::string{variant} + "_e" + std::to_string(epochs) + "_s" + std::to_string(seed);
}

std::string EvaluationReport::to_json() const
{
    json per_class = json::array();
    for (const auto& pc : metrics.per_class)
    {
        per_class.push_back({{"precision", pc.precision}, {"recall", pc.recall}, {"f1", pc.f1},
            {"support", pc.support}});
    }
    json hist = json::array();
    for (const auto& h : history)
    {
        hist.push_back({{"epoch", h.epoch}, {"loss", h.loss}, {"accuracy", h.accuracy},
            {"seconds", h.seconds}});
    }
    json j{
        {"variant", variant},
        {"epochs", epochs},
        {"seed", seed},
        {"split_seed", split_seed},
        {"averaging", averaging},
        {"status", status},
        {"accuracy", metrics.accuracy},
        {"precision", metrics.precision},
        {"recall", metrics.recall},
        {"f1", metrics.f1},
        {"per_class", per_class},
        {"labels", {"arithmetic", "reentrancy", "clean"}},
        {"confusion", confusion},
        {"test_size", test_size},
        {"train_seconds", train_seconds},
        {"predict_seconds", predict_seconds},
        {"history", hist},
        {"config_hash", config_hash},
    };
    if (!error.empty())
        j["error"] = error;
    return j.dump(2) + "\n";
}

EvaluationReport EvaluationReport::from_json(std::string_view text)
{
    EvaluationReport r;
    try
    {
        const auto j = json::parse(text);
        r.variant = j.at("variant").get<std::string>();
        r.epochs = j.at("epochs").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
        r.split_seed = j.at("split_seed").get<uint64_t>();
        r.averaging = j.at("averaging").get<std::string>();
        r.status = j.at("status").get<std::string>();
        r.metrics.accuracy = j.at("accuracy").get<double>();
        r.metrics.precision = j.at("precision").get<double>();
        r.metrics.recall = j.at("recall").get<double>();
        r.metrics.f1 = j.at("f1").get<double>();
        const auto& pcs = j.at("per_class");
        for (size_t c = 0; c < 3 && c < pcs.size(); ++c)
        {
            r.metrics.per_class[c] = {pcs[c].at("precision").get<double>(),
                pcs[c].at("recall").get<double>(), pcs[c].at("f1").get<double>(),
                pcs[c].at("support").get<int64_t>()};
        }
        r.confusion = j.at("confusion").get<Confusion>();
        r.test_size = j.at("test_size").get<size_t>();
        r.train_seconds = j.at("train_seconds").get<double>();
        r.predict_seconds = j.at("predict_seconds").get<double>();
        for (const auto& h : j.at("history"))
        {
            r.history.push_back({h.at("epoch").get<int>(), h.at("loss").get<double>(),
                h.at("accuracy").get<double>(), h.at("seconds").get<double>()});
        }
        r.config_hash = j.at("config_hash").get<std::string>();
        r.error = j.value("error", "");
    }
    catch (const json::exception& e)
    {
        throw InvalidArgument{std::string{"malformed report: "} + e.what()};
    }
    return r;
}

std::string render_table(std::span<const EvaluationReport> reports)
{
    std::vector<std::string> variants;
    std::set<int> budgets;
    std::map<std::pair<std::string, int>, const EvaluationReport*> cells;
    for (const auto& r : reports)
    {
        if (std::ranges::find(variants, r.variant) == variants.end())
            variants.push_back(r.variant);
        budgets.insert(r.epochs);
        cells[{r.variant, r.epochs}] = &r;
    }

    constexpr size_t col = 11;
    std::string out = pad_right("Metric", col) + pad_right("Epochs", 8);
    for (const auto& v : variants)
        out += pad_right(v, col);
    out += '\n';

    using Getter = double (*)(const Metrics&);
    const std::pair<const char*, Getter> rows[] = {
        {"Accuracy", [](const Metrics& m) { return m.accuracy; }},
        {"Precision", [](const Metrics& m) { return m.precision; }},
        {"Recall", [](const Metrics& m) { return m.recall; }},
        {"F1-Score", [](const Metrics& m) { return m.f1; }},
    };
    for (const auto& [name, get] : rows)
    {
        bool first = true;
        for (const int e : budgets)
        {
            out += pad_right(first ? name : "", col) + pad_right("E" + std::to_string(e), 8);
            first = false;
            for (const auto& v : variants)
            {
                const auto it = cells.find({v, e});
                std::string cell = "-";
                if (it != cells.end())
                    cell =
                        it->second->status == "ok" ? fixed(get(it->second->metrics), 4) : "failed";
                out += pad_right(cell, col);
            }
            while (!out.empty() && out.back() == ' ')
                out.pop_back();
            out += '\n';
        }
    }
    return out;
}

std::string render_csv(std::span<const EvaluationReport> reports)
{
    std::string out =
        "variant,epochs,seed,split_seed,status,accuracy,precision,recall,f1,test_size,"
        "train_seconds,predict_seconds,config_hash\n";
    for (const auto& r : reports)
    {
        out += r.variant + "," + std::to_string(r.epochs) + "," + std::to_string(r.seed) + "," +
               std::to_string(r.split_seed) + "," + r.status + "," + fixed(r.metrics.accuracy, 6) +
               "," + fixed(r.metrics.precision, 6) + "," + fixed(r.metrics.recall, 6) + "," +
               fixed(r.metrics.f1, 6) + "," + std::to_string(r.test_size) + "," +
               fixed(r.train_seconds, 4) + "," + fixed(r.predict_seconds, 4) + "," + r.config_hash +
               "\n";
    }
    return out;
}

std::string render_bar_chart(std::string_view title,
    std::string_view unit,
    std::span<const std::pair<std::string, double>> bars)
{
    constexpr int label_w = 150;
    constexpr int plot_w = 420;
    constexpr int bar_h = 22;
    constexpr int gap = 8;
    constexpr int top = 40;
    const int height = top + int(bars.size()) * (bar_h + gap) + 20;
    const int width = label_w + plot_w + 110;
    double max_v = 0.0;
    for (const auto& [label, v] : bars)
        max_v = std::max(max_v, v);
    if (max_v <= 0.0)
        max_v = 1.0;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                      "\" height=\"" + std::to_string(height) +
                      "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"10\" y=\"22\" font-size=\"15\" font-weight=\"bold\">" + xml_escape(title) +
           "</text>\n";
    int y = top;
    for (const auto& [label, v] : bars)
    {
        const int w = std::max(1, int(plot_w * v / max_v));
        svg += "<text x=\"" + std::to_string(label_w - 6) + "\" y=\"" +
               std::to_string(y + bar_h - 7) + "\" text-anchor=\"end\">" + xml_escape(label) +
               "</text>\n";
        svg += "<rect x=\"" + std::to_string(label_w) + "\" y=\"" + std::to_string(y) +
               "\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(bar_h) +
               "\" fill=\"#4878a8\"/>\n";
        svg += "<text x=\"" + std::to_string(label_w + w + 5) + "\" y=\"" +
               std::to_string(y + bar_h - 7) + "\">" + fixed(v, 3) + " " + xml_escape(unit) +
               "</text>\n";
        y += bar_h + gap;
    }
    svg += "</svg>\n";
    return svg;
}
}  // namespace vulnfuse

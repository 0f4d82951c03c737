// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/cfg.hpp>
#include <vulnfuse/embedding.hpp>
#include <vulnfuse/error.hpp>
#include <vulnfuse/evm.hpp>
#include <vulnfuse/pipeline.hpp>
#include <vulnfuse/solidity_prep.hpp>
#include <vulnfuse/train_eval.hpp>
#include <vulnfuse/util.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace vulnfuse;

namespace
{
py::dict metrics_dict(const Metrics& m)
{
    py::dict d;
    d["accuracy"] = m.accuracy;
    d["precision"] = m.precision;
    d["recall"] = m.recall;
    d["f1"] = m.f1;
    return d;
}

/// JSON text from the library becomes Python objects through the json module.
py::object from_json(const std::string& text)
{
    return py::module_::import("json").attr("loads")(text);
}

class Pipeline
{
public:
    explicit Pipeline(const std::string& config_json)
        : cfg_{pipeline::PipelineConfig::from_json(config_json)}
    {
        cfg_.embedding = provider_settings_from_env(cfg_.embedding);
    }

    py::dict ingest() const
    {
        const auto s = pipeline::cmd_ingest(cfg_);
        py::dict d;
        d["records"] = s.records;
        d["with_bytecode"] = s.with_bytecode;
        d["histogram"] = std::vector<size_t>(s.histogram.begin(), s.histogram.end());
        return d;
    }

    size_t clean() const { return pipeline::cmd_clean(cfg_); }

    py::dict features() const
    {
        const auto r = [&] {
            py::gil_scoped_release release;
            return pipeline::cmd_features(cfg_);
        }();
        py::list failures;
        for (const auto& f : r.failures)
            failures.append(py::dict(
                py::arg("id") = f.id, py::arg("kind") = f.kind, py::arg("message") = f.message));
        py::dict d;
        d["total"] = r.total;
        d["computed"] = r.computed;
        d["skipped"] = r.skipped;
        d["failures"] = failures;
        d["train_size"] = r.train_size;
        d["test_size"] = r.test_size;
        d["vocab_size"] = r.vocab_size;
        return d;
    }

    std::string train() const
    {
        py::gil_scoped_release release;
        return pipeline::cmd_train(cfg_).checkpoint.string();
    }

    py::object evaluate(const std::string& checkpoint) const
    {
        std::string text;
        {
            py::gil_scoped_release release;
            text = pipeline::cmd_eval(cfg_, checkpoint).to_json();
        }
        return from_json(text);
    }

    py::list ablation() const
    {
        std::vector<std::string> reports;
        {
            py::gil_scoped_release release;
            for (const auto& r : pipeline::cmd_ablation(cfg_).reports)
                reports.push_back(r.to_json());
        }
        py::list out;
        for (const auto& r : reports)
            out.append(from_json(r));
        return out;
    }

    py::dict predict(const std::string& checkpoint,
        const std::string& contract,
        const std::string& bytecode) const
    {
        const auto p = pipeline::cmd_predict(cfg_, checkpoint, contract, bytecode);
        py::dict d;
        d["label"] = std::string{to_string(p.label)};
        d["probabilities"] = std::vector<double>(p.probabilities.begin(), p.probabilities.end());
        d["config_hash"] = p.config_hash;
        return d;
    }

    std::string config_json() const { return cfg_.to_json(); }
    std::string config_hash() const { return cfg_.hash(); }

private:
    pipeline::PipelineConfig cfg_;
};
}  // namespace

PYBIND11_MODULE(_vulnfuse, m)
{
    m.doc() = "Bindings for the vulnfuse C++ core.";

    static py::exception<Error> error(m, "VulnfuseError");
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error& e)
        {
            py::set_error(error, e.what());
        }
    });

    m.def(
        "disassemble",
        [](const std::string& hex) {
            std::vector<py::tuple> out;
            for (const auto& i : evm::disassemble(hex))
                out.push_back(py::make_tuple(i.offset, std::string{i.mnemonic()},
                    to_hex(std::string(i.operand.begin(), i.operand.end()))));
            return out;
        },
        py::arg("bytecode_hex"), "(offset, mnemonic, operand hex) per instruction.");

    m.def(
        "simplify_opcodes",
        [](const std::string& hex) {
            return evm::simplify_opcodes(evm::disassemble(hex)).mnemonics;
        },
        py::arg("bytecode_hex"));

    m.def(
        "cfg_dot",
        [](const std::string& hex) { return emit_dot(build_cfg(evm::disassemble(hex))); },
        py::arg("bytecode_hex"), "Graphviz text of the control-flow graph.");

    m.def(
        "clean_source", [](const std::string& source) { return clean_source(source).text; },
        py::arg("source"));

    m.def(
        "local_embedding",
        [](const std::string& text, uint64_t seed) {
            const auto v = LocalEmbeddingBackend::embed(text, seed);
            return std::vector<float>(v.begin(), v.end());
        },
        py::arg("text"), py::arg("seed") = 42);

    m.def(
        "compute_metrics",
        [](const std::vector<std::vector<int64_t>>& rows, const std::string& averaging) {
            if (rows.size() != 3)
                throw InvalidArgument{"confusion matrix must be 3x3"};
            Confusion c{};
            for (size_t t = 0; t < 3; ++t)
            {
                if (rows[t].size() != 3)
                    throw InvalidArgument{"confusion matrix must be 3x3"};
                std::copy(rows[t].begin(), rows[t].end(), c[t].begin());
            }
            const auto avg = parse_averaging(averaging);
            if (!avg)
                throw InvalidArgument{"averaging must be 'weighted' or 'macro'"};
            return metrics_dict(compute_metrics(c, *avg));
        },
        py::arg("confusion"), py::arg("averaging") = "weighted");

    py::class_<Pipeline>(m, "Pipeline")
        .def(py::init<const std::string&>(), py::arg("config_json"))
        .def("ingest", &Pipeline::ingest)
        .def("clean", &Pipeline::clean)
        .def("features", &Pipeline::features)
        .def("train", &Pipeline::train)
        .def("evaluate", &Pipeline::evaluate, py::arg("checkpoint"))
        .def("ablation", &Pipeline::ablation)
        .def("predict", &Pipeline::predict, py::arg("checkpoint"), py::arg("contract"),
            py::arg("bytecode") = "")
        .def_property_readonly("config_json", &Pipeline::config_json)
        .def_property_readonly("config_hash", &Pipeline::config_hash);
}

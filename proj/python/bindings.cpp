#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "phrasecom/compare.hpp"
#include "phrasecom/config.hpp"
#include "phrasecom/error.hpp"
#include "phrasecom/eval.hpp"
#include "phrasecom/measures.hpp"
#include "phrasecom/persist.hpp"
#include "phrasecom/report.hpp"

namespace py = pybind11;
using namespace phrasecom;

namespace {

// Settings are passed as keyword dicts with the CLI/config-file keys.
RunConfig make_config(const py::dict& options) {
    RunConfig config;
    for (const auto& [key, value] : options) {
        const auto text = py::isinstance<py::bool_>(value) ? std::string(value.cast<bool>() ? "true" : "false")
                                                          : py::str(value).cast<std::string>();
        set_option(config, key.cast<std::string>(), text);
    }
    validate(config);
    return config;
}

py::list phrase_list(const std::vector<ScoredPhrase>& phrases) {
    py::list out;
    for (const auto& p : phrases) out.append(py::make_tuple(p.text, p.score));
    return out;
}

py::dict result_dict(const ComparisonResult& r) {
    py::dict d;
    d["method"] = std::string(method_name(r.method));
    d["ids_a"] = r.ids_a;
    d["ids_b"] = r.ids_b;
    d["common"] = phrase_list(r.common);
    d["distinct_a"] = phrase_list(r.distinct_a);
    d["distinct_b"] = phrase_list(r.distinct_b);
    py::dict trace;
    trace["objective_common"] = r.trace.objective_common;
    trace["objective_distinct"] = r.trace.objective_distinct;
    trace["inner_common"] = r.trace.inner_common;
    trace["inner_distinct"] = r.trace.inner_distinct;
    trace["converged"] = r.trace.converged;
    trace["degenerate"] = r.trace.degenerate;
    d["trace"] = trace;
    d["warning"] = r.warning;
    return d;
}

class Index {
public:
    explicit Index(IndexBundle bundle) : bundle_(std::move(bundle)) {}

    static Index build(const std::vector<std::pair<std::string, std::string>>& docs, const py::dict& options) {
        const auto config = make_config(options);
        std::vector<Document> corpus;
        for (const auto& [id, text] : docs) corpus.push_back(make_document(id, text));
        return Index(build_bundle(corpus, config.corpus, {}, config.bm25));
    }

    static Index load(const std::filesystem::path& path) { return Index(load_index(path)); }
    void save(const std::filesystem::path& path) const { save_index(path, bundle_); }
    py::bytes to_bytes() const { return py::bytes(serialize(bundle_)); }
    static Index from_bytes(const py::bytes& bytes) { return Index(deserialize(std::string(bytes))); }

    std::size_t num_documents() const { return bundle_.index.num_documents(); }
    std::size_t num_phrases() const { return bundle_.index.num_phrases(); }

    std::vector<std::string> document_ids() const {
        std::vector<std::string> out;
        for (const auto& d : bundle_.index.documents()) out.push_back(d.id);
        return out;
    }

    std::vector<std::string> phrases() const {
        std::vector<std::string> out;
        for (const auto& p : bundle_.index.phrases()) out.push_back(p.text);
        return out;
    }

    py::list salient(const std::string& id, const py::dict& options) const {
        const auto config = make_config(options);
        return phrase_list(
            salient_phrases(bundle_.index, bundle_.index.require_document(id), config.compare.salience).phrases);
    }

    py::dict compare(const std::string& a, const std::string& b, const py::dict& options) const {
        const auto config = make_config(options);
        ComparisonResult r;
        {
            py::gil_scoped_release release;
            const Comparator cmp(bundle_.index, bundle_.graph, config.compare);
            r = cmp.compare(parse_method(config.method), a, b);
        }
        return result_dict(r);
    }

    py::dict compare_sets(const std::vector<std::string>& a, const std::vector<std::string>& b,
                          const py::dict& options) const {
        const auto config = make_config(options);
        const Comparator cmp(bundle_.index, bundle_.graph, config.compare);
        return result_dict(cmp.compare_sets(parse_method(config.method), a, b));
    }

    std::string compare_json(const std::string& a, const std::string& b, const py::dict& options) const {
        const auto config = make_config(options);
        const Comparator cmp(bundle_.index, bundle_.graph, config.compare);
        return comparison_json(cmp.compare(parse_method(config.method), a, b), config.trace);
    }

private:
    IndexBundle bundle_;
};

}  // namespace

PYBIND11_MODULE(_phrasecom, m) {
    m.doc() = "Comparative phrase extraction over a document collection";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", error.ptr());
    py::register_exception<LookupError>(m, "LookupError", error.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", error.ptr());

    py::class_<Index>(m, "Index")
        .def_static("build", &Index::build, py::arg("documents"), py::arg("options") = py::dict(),
                    "Build from (id, text) pairs; options use the config-file keys.")
        .def_static("load", &Index::load, py::arg("path"))
        .def_static("from_bytes", &Index::from_bytes, py::arg("data"))
        .def("save", &Index::save, py::arg("path"))
        .def("to_bytes", &Index::to_bytes)
        .def_property_readonly("num_documents", &Index::num_documents)
        .def_property_readonly("num_phrases", &Index::num_phrases)
        .def("document_ids", &Index::document_ids)
        .def("phrases", &Index::phrases)
        .def("salient", &Index::salient, py::arg("doc_id"), py::arg("options") = py::dict())
        .def("compare", &Index::compare, py::arg("id_a"), py::arg("id_b"), py::arg("options") = py::dict())
        .def("compare_sets", &Index::compare_sets, py::arg("ids_a"), py::arg("ids_b"),
             py::arg("options") = py::dict())
        .def("compare_json", &Index::compare_json, py::arg("id_a"), py::arg("id_b"),
             py::arg("options") = py::dict());

    m.def("commonality", [](double a, double b) { return commonality({a, b}); }, py::arg("f_a"), py::arg("f_b"));
    m.def("distinction", [](double a, double b, double gamma) { return distinction({a, b}, gamma); },
          py::arg("f_a"), py::arg("f_b"), py::arg("gamma") = 1.0);
    m.def("lambda_bound",
          [](double alpha, double gamma, double delta) {
              SolverConfig c;
              c.alpha = alpha;
              c.gamma = gamma;
              c.delta = delta;
              return lambda_bound(c);
          },
          py::arg("alpha") = 100.0, py::arg("gamma") = 1.0, py::arg("delta") = 0.1);
    m.def("prf",
          [](const std::set<std::string>& system, const std::set<std::string>& gold) {
              const auto s = prf(system, gold);
              return py::make_tuple(s.precision, s.recall, s.f1);
          },
          py::arg("system"), py::arg("gold"));
    m.def("methods", [] {
        std::vector<std::string> out;
        for (auto m : all_methods()) out.emplace_back(method_name(m));
        return out;
    });
    m.def("config_keys", &config_keys);
}

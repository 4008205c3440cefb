#include "phrasecom/compare.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "phrasecom/error.hpp"

namespace phrasecom {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethodNames{{
    {Method::cda, "cda"},
    {Method::nograph, "nograph"},
    {Method::twostep, "twostep"},
    {Method::altermea, "altermea"},
    {Method::wordmatch, "wordmatch"},
    {Method::stringfuzzy, "stringfuzzy"},
    {Method::contextfuzzy, "contextfuzzy"},
}};

bool is_solver_method(Method m) {
    return m == Method::cda || m == Method::twostep || m == Method::altermea;
}

}  // namespace

Method parse_method(std::string_view name) {
    for (auto [m, n] : kMethodNames)
        if (n == name) return m;
    std::string known;
    for (auto [m, n] : kMethodNames) known += (known.empty() ? "" : "|") + std::string(n);
    throw ParameterError("unknown method '" + std::string(name) + "' (expected " + known + ")");
}

std::string_view method_name(Method method) {
    for (auto [m, n] : kMethodNames)
        if (m == method) return n;
    return "unknown";
}

std::vector<Method> all_methods() {
    std::vector<Method> out;
    for (auto [m, n] : kMethodNames) out.push_back(m);
    return out;
}

void sort_by_score(std::vector<ScoredPhrase>& phrases) {
    std::sort(phrases.begin(), phrases.end(), [](const ScoredPhrase& a, const ScoredPhrase& b) {
        return a.score != b.score ? a.score > b.score : a.id < b.id;
    });
}

Comparator::Comparator(const CorpusIndex& index, const BipartiteGraph& graph, CompareConfig config)
    : index_(&index),
      graph_(&graph),
      adjacency_(normalize(graph)),
      config_(std::move(config)),
      word_df_(word_document_frequencies(index)) {
    if (graph.weights.rows() != index.num_phrases() || graph.weights.cols() != index.num_documents())
        throw Error("graph does not match the index dimensions");
    warning_ = validate_params(config_.solver).warning;
    validate_baseline_config(config_.baselines);
}

std::vector<PhraseId> Comparator::salient_ids(DocIndex d) const {
    std::vector<PhraseId> ids;
    for (const auto& p : salient_phrases(*index_, d, config_.salience).phrases) ids.push_back(p.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<PhraseId> Comparator::salient_union(std::span<const DocIndex> docs) const {
    std::set<PhraseId> all;
    for (auto d : docs)
        for (auto p : salient_ids(d)) all.insert(p);
    return {all.begin(), all.end()};
}

ComparisonResult Comparator::compare(Method method, std::string_view id_a,
                                     std::string_view id_b) const {
    return compare(method, index_->require_document(id_a), index_->require_document(id_b));
}

ComparisonResult Comparator::compare(Method method, DocIndex a, DocIndex b) const {
    if (a >= index_->num_documents() || b >= index_->num_documents())
        throw LookupError("document index out of range");
    return run(method, {a}, {b});
}

ComparisonResult Comparator::compare_sets(Method method, std::span<const std::string> ids_a,
                                          std::span<const std::string> ids_b) const {
    if (ids_a.empty() || ids_b.empty()) throw ParameterError("document sets must be non-empty");
    auto resolve = [&](std::span<const std::string> ids) {
        std::set<DocIndex> docs;
        for (const auto& id : ids) docs.insert(index_->require_document(id));
        return std::vector<DocIndex>(docs.begin(), docs.end());
    };
    auto docs_a = resolve(ids_a);
    auto docs_b = resolve(ids_b);
    for (auto d : docs_a)
        if (std::binary_search(docs_b.begin(), docs_b.end(), d))
            throw ParameterError("document '" + index_->document(d).id + "' is in both sets");
    if ((docs_a.size() > 1 || docs_b.size() > 1) && !is_solver_method(method))
        throw ParameterError("method '" + std::string(method_name(method)) +
                             "' compares single documents only");
    return run(method, std::move(docs_a), std::move(docs_b));
}

ComparisonResult Comparator::run(Method method, std::vector<DocIndex> docs_a,
                                 std::vector<DocIndex> docs_b) const {
    const auto& solver = config_.solver;
    const auto& base = config_.baselines;
    const DocIndex a = docs_a.front();
    const DocIndex b = docs_b.front();

    ComparisonResult out;
    if (method == Method::wordmatch) {
        out = word_match(*index_, word_df_, a, b, base.wordmatch_top_k);
    } else {
        SelectionProblem problem;
        problem.adjacency = &adjacency_.matrix;
        problem.salient_a = salient_union(docs_a);
        problem.salient_b = salient_union(docs_b);
        problem.docs_a = docs_a;
        problem.docs_b = docs_b;
        switch (method) {
            case Method::cda:
                out = cda_solve(*index_, problem, solver, MeasureKind::log_ratio);
                break;
            case Method::altermea:
                out = cda_solve(*index_, problem, solver, MeasureKind::additive);
                break;
            case Method::twostep:
                out = cda_twostep(*index_, problem, solver);
                break;
            case Method::nograph:
                out = cda_nograph(*index_, *graph_, a, b, problem.salient_a, problem.salient_b, solver);
                break;
            case Method::stringfuzzy:
                out = string_fuzzy(*index_, *graph_, a, b, problem.salient_a, problem.salient_b,
                                   base.stringfuzzy_threshold);
                break;
            case Method::contextfuzzy:
                out = context_fuzzy(*index_, word_df_, a, b, problem.salient_a, problem.salient_b,
                                    base.contextfuzzy_window, base.contextfuzzy_threshold);
                break;
            case Method::wordmatch:
                break;
        }
    }
    out.method = method;
    out.ids_a.clear();
    out.ids_b.clear();
    for (auto d : docs_a) out.ids_a.push_back(index_->document(d).id);
    for (auto d : docs_b) out.ids_b.push_back(index_->document(d).id);
    out.warning = warning_;
    return out;
}

ComparisonResult compare_documents(const CorpusIndex& index, const BipartiteGraph& graph,
                                   std::string_view id_a, std::string_view id_b,
                                   const CompareConfig& config, Method method) {
    return Comparator(index, graph, config).compare(method, id_a, id_b);
}

ComparisonResult compare_document_sets(const CorpusIndex& index, const BipartiteGraph& graph,
                                       std::span<const std::string> ids_a,
                                       std::span<const std::string> ids_b,
                                       const CompareConfig& config, Method method) {
    return Comparator(index, graph, config).compare_sets(method, ids_a, ids_b);
}

}  // namespace phrasecom

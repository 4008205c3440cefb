#include "phrasecom/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace phrasecom {

using nlohmann::ordered_json;

namespace {

ordered_json side(const std::vector<std::string>& ids) {
    if (ids.size() == 1) return ids.front();
    return ids;
}

ordered_json phrase_list(const std::vector<ScoredPhrase>& phrases, const char* key) {
    ordered_json out = ordered_json::array();
    for (const auto& p : phrases) out.push_back({{"text", p.text}, {key, p.score}});
    return out;
}

ordered_json prf_json(const Prf& s) {
    return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string comparison_json(const ComparisonResult& r, bool with_objectives) {
    ordered_json j;
    j["method"] = std::string(method_name(r.method));
    j["pair"] = ordered_json::array({side(r.ids_a), side(r.ids_b)});
    j["common"] = phrase_list(r.common, "phi");
    j["distinct_a"] = phrase_list(r.distinct_a, "pi");
    j["distinct_b"] = phrase_list(r.distinct_b, "pi");

    ordered_json t;
    t["outer_iters"] = {{"common", r.trace.outer_common()}, {"distinct", r.trace.outer_distinct()}};
    t["inner_iters"] = {{"common", r.trace.inner_common}, {"distinct", r.trace.inner_distinct}};
    t["converged"] = r.trace.converged;
    t["degenerate"] = r.trace.degenerate;
    if (with_objectives) {
        ordered_json oc = ordered_json::array();
        ordered_json od = ordered_json::array();
        if (!r.trace.objective_common.empty()) oc.push_back(r.trace.initial_common);
        for (double v : r.trace.objective_common) oc.push_back(v);
        if (!r.trace.objective_distinct.empty()) od.push_back(r.trace.initial_distinct);
        for (double v : r.trace.objective_distinct) od.push_back(v);
        t["objective_common"] = oc;
        t["objective_distinct"] = od;
    }
    j["trace"] = t;
    if (!r.warning.empty()) j["warning"] = r.warning;
    return j.dump(2) + "\n";
}

std::string salient_json(const SalientPhraseSet& set) {
    ordered_json j;
    j["doc_id"] = set.doc_id;
    j["phrases"] = ordered_json::array();
    for (const auto& p : set.phrases) j["phrases"].push_back({{"text", p.text}, {"score", p.score}});
    return j.dump() + "\n";
}

IndexStatistics index_statistics(const IndexBundle& bundle, const SalienceConfig& salience) {
    const auto& index = bundle.index;
    IndexStatistics s;
    s.documents = index.num_documents();
    s.candidate_phrases = index.stats().candidate_phrases;
    s.phrase_pairs = index.stats().phrase_pairs;
    s.links = bundle.graph.weights.nnz();
    s.isolated_documents = bundle.graph.isolated_documents.size();
    for (DocIndex d = 0; d < index.num_documents(); ++d)
        s.salient_phrases += salient_phrases(index, d, salience).phrases.size();
    return s;
}

std::string statistics_table(const IndexStatistics& s) {
    std::ostringstream out;
    auto row = [&](const char* name, std::uint64_t v) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-20s %12llu\n", name, static_cast<unsigned long long>(v));
        out << buf;
    };
    row("documents", s.documents);
    row("candidate phrases", s.candidate_phrases);
    row("salient phrases", s.salient_phrases);
    row("phrase pairs", s.phrase_pairs);
    row("links", s.links);
    if (s.isolated_documents > 0) row("isolated documents", s.isolated_documents);
    return out.str();
}

std::string statistics_json(const IndexStatistics& s) {
    ordered_json j;
    j["documents"] = s.documents;
    j["candidate_phrases"] = s.candidate_phrases;
    j["salient_phrases"] = s.salient_phrases;
    j["phrase_pairs"] = s.phrase_pairs;
    j["links"] = s.links;
    j["isolated_documents"] = s.isolated_documents;
    return j.dump(2) + "\n";
}

std::string eval_json(std::span<const EvalReport> reports) {
    ordered_json j = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json m;
        m["method"] = r.method;
        m["common"] = prf_json(r.common);
        m["distinct"] = prf_json(r.distinct);
        m["pairs"] = ordered_json::array();
        for (const auto& p : r.pairs)
            m["pairs"].push_back(
                {{"pair_id", p.pair_id}, {"common", prf_json(p.common)}, {"distinct", prf_json(p.distinct)}});
        j.push_back(m);
    }
    return j.dump(2) + "\n";
}

std::string eval_table(std::span<const EvalReport> reports) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-14s %8s %8s %8s   %8s %8s %8s\n", "method", "C-P", "C-R",
                  "C-F1", "Q-P", "Q-R", "Q-F1");
    out << buf;
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%-14s %8s %8s %8s   %8s %8s %8s\n", r.method.c_str(),
                      fixed(r.common.precision).c_str(), fixed(r.common.recall).c_str(),
                      fixed(r.common.f1).c_str(), fixed(r.distinct.precision).c_str(),
                      fixed(r.distinct.recall).c_str(), fixed(r.distinct.f1).c_str());
        out << buf;
    }
    return out.str();
}

}  // namespace phrasecom

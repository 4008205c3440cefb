#include "phrasecom/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "phrasecom/error.hpp"
#include "phrasecom/measures.hpp"
#include "phrasecom/text.hpp"

namespace phrasecom {

void validate_baseline_config(const BaselineConfig& c) {
    if (c.wordmatch_top_k < 1) throw ParameterError("wordmatch_top_k must be at least 1");
    if (!(c.stringfuzzy_threshold > 0)) throw ParameterError("stringfuzzy_threshold must be positive");
    if (c.contextfuzzy_window < 1) throw ParameterError("contextfuzzy_window must be at least 1");
    if (!(c.contextfuzzy_threshold > 0)) throw ParameterError("contextfuzzy_threshold must be positive");
}

std::vector<ScoredPhrase> scored(const CorpusIndex& index, std::span<const PhraseId> ids,
                                 std::span<const double> scores) {
    std::vector<ScoredPhrase> out;
    out.reserve(ids.size());
    for (auto p : ids) out.push_back({p, index.phrase(p).text, scores[p]});
    sort_by_score(out);
    return out;
}

std::vector<std::uint32_t> word_document_frequencies(const CorpusIndex& index) {
    std::vector<std::uint32_t> df(index.words().size(), 0);
    for (const auto& doc : index.documents()) {
        std::set<std::uint32_t> seen(doc.lemmas.begin(), doc.lemmas.end());
        for (auto w : seen) ++df[w];
    }
    return df;
}

std::vector<ScoredPhrase> top_tfidf_words(const CorpusIndex& index,
                                          std::span<const std::uint32_t> word_df, DocIndex d,
                                          std::size_t top_k) {
    std::map<std::uint32_t, std::uint32_t> tf;
    for (auto w : index.document(d).lemmas)
        if (!is_stopword(index.words()[w])) ++tf[w];
    const double n = static_cast<double>(index.num_documents());
    std::vector<ScoredPhrase> words;
    for (auto [w, count] : tf)
        words.push_back({w, index.words()[w], count * std::log(n / word_df[w])});
    std::sort(words.begin(), words.end(), [](const ScoredPhrase& x, const ScoredPhrase& y) {
        return x.score != y.score ? x.score > y.score : x.text < y.text;
    });
    if (words.size() > top_k) words.resize(top_k);
    return words;
}

namespace {

ComparisonResult labelled(Method method, const CorpusIndex& index, DocIndex a, DocIndex b) {
    ComparisonResult out;
    out.method = method;
    out.ids_a = {index.document(a).id};
    out.ids_b = {index.document(b).id};
    return out;
}

std::vector<PhraseId> union_of(std::span<const PhraseId> a, std::span<const PhraseId> b) {
    std::set<PhraseId> all(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    return {all.begin(), all.end()};
}

// Shared by the two thresholded baselines: `score(p, side)` is the phrase's
// association with document a (side 0) or b (side 1).
template <typename Score>
void threshold_split(ComparisonResult& out, const CorpusIndex& index,
                     std::span<const PhraseId> salient_a, std::span<const PhraseId> salient_b,
                     double threshold, Score&& score) {
    std::set<PhraseId> common;
    for (auto p : union_of(salient_a, salient_b)) {
        const double sa = score(p, 0);
        const double sb = score(p, 1);
        if (sa > threshold && sb > threshold) {
            common.insert(p);
            out.common.push_back({p, index.phrase(p).text, std::min(sa, sb)});
        }
    }
    for (auto p : std::set<PhraseId>(salient_a.begin(), salient_a.end()))
        if (!common.contains(p)) out.distinct_a.push_back({p, index.phrase(p).text, score(p, 0)});
    for (auto p : std::set<PhraseId>(salient_b.begin(), salient_b.end()))
        if (!common.contains(p)) out.distinct_b.push_back({p, index.phrase(p).text, score(p, 1)});
    sort_by_score(out.common);
    sort_by_score(out.distinct_a);
    sort_by_score(out.distinct_b);
}

}  // namespace

ComparisonResult word_match(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                            DocIndex a, DocIndex b, std::size_t top_k) {
    auto out = labelled(Method::wordmatch, index, a, b);
    const auto top_a = top_tfidf_words(index, word_df, a, top_k);
    const auto top_b = top_tfidf_words(index, word_df, b, top_k);
    std::map<PhraseId, double> score_b;
    for (const auto& w : top_b) score_b[w.id] = w.score;
    std::set<PhraseId> shared;
    for (const auto& w : top_a) {
        auto it = score_b.find(w.id);
        if (it == score_b.end()) {
            out.distinct_a.push_back(w);
        } else {
            shared.insert(w.id);
            out.common.push_back({w.id, w.text, w.score + it->second});
        }
    }
    for (const auto& w : top_b)
        if (!shared.contains(w.id)) out.distinct_b.push_back(w);
    sort_by_score(out.common);
    sort_by_score(out.distinct_a);
    sort_by_score(out.distinct_b);
    return out;
}

ComparisonResult string_fuzzy(const CorpusIndex& index, const BipartiteGraph& graph, DocIndex a,
                              DocIndex b, std::span<const PhraseId> salient_a,
                              std::span<const PhraseId> salient_b, double threshold) {
    auto out = labelled(Method::stringfuzzy, index, a, b);
    threshold_split(out, index, salient_a, salient_b, threshold, [&](PhraseId p, int side) {
        return graph.weights.at(p, side == 0 ? a : b);
    });
    return out;
}

double cosine(const TermVector& a, const TermVector& b) {
    if (a.norm == 0 || b.norm == 0) return 0.0;
    double dot = 0.0;
    auto i = a.entries.begin();
    auto j = b.entries.begin();
    while (i != a.entries.end() && j != b.entries.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            dot += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return dot / (a.norm * b.norm);
}

TermVector tfidf_vector(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                        std::span<const std::uint32_t> lemma_ids) {
    std::map<std::uint32_t, std::uint32_t> tf;
    for (auto w : lemma_ids)
        if (!is_stopword(index.words()[w])) ++tf[w];
    const double n = static_cast<double>(index.num_documents());
    TermVector v;
    double sq = 0.0;
    for (auto [w, count] : tf) {
        const double weight = count * std::log(n / std::max<double>(word_df[w], 1.0));
        if (weight == 0) continue;
        v.entries.emplace_back(w, weight);
        sq += weight * weight;
    }
    v.norm = std::sqrt(sq);
    return v;
}

std::vector<std::uint32_t> phrase_context(const CorpusIndex& index, PhraseId p, std::size_t window) {
    const auto& phrase = index.phrase(p);
    if (phrase.kind == PhraseKind::pair) {
        auto out = phrase_context(index, phrase.first, window);
        auto second = phrase_context(index, phrase.second, window);
        out.insert(out.end(), second.begin(), second.end());
        return out;
    }
    std::vector<std::uint32_t> out;
    for (const auto& doc : index.documents()) {
        const std::size_t len = doc.lemmas.size();
        for (const auto& seg : doc.segments) {
            if (seg.phrase != p) continue;
            const std::size_t lo = seg.start >= window ? seg.start - window : 0;
            const std::size_t end = seg.start + seg.length;
            const std::size_t hi = std::min(len, end + window);
            for (std::size_t i = lo; i < seg.start; ++i) out.push_back(doc.lemmas[i]);
            for (std::size_t i = end; i < hi; ++i) out.push_back(doc.lemmas[i]);
        }
    }
    return out;
}

ComparisonResult context_fuzzy(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                               DocIndex a, DocIndex b, std::span<const PhraseId> salient_a,
                               std::span<const PhraseId> salient_b, std::size_t window,
                               double threshold) {
    auto out = labelled(Method::contextfuzzy, index, a, b);
    const TermVector doc_a = tfidf_vector(index, word_df, index.document(a).lemmas);
    const TermVector doc_b = tfidf_vector(index, word_df, index.document(b).lemmas);
    std::map<PhraseId, std::pair<double, double>> cos;
    for (auto p : union_of(salient_a, salient_b)) {
        const auto context = tfidf_vector(index, word_df, phrase_context(index, p, window));
        cos[p] = {cosine(context, doc_a), cosine(context, doc_b)};
    }
    threshold_split(out, index, salient_a, salient_b, threshold, [&](PhraseId p, int side) {
        const auto& c = cos.at(p);
        return side == 0 ? c.first : c.second;
    });
    return out;
}

std::vector<double> max_normalized_bm25(const BipartiteGraph& graph, DocIndex d) {
    const auto& w = graph.weights;
    std::vector<double> f(w.rows(), 0.0);
    double top = 0.0;
    for (std::size_t p = 0; p < w.rows(); ++p) {
        f[p] = w.at(p, d);
        top = std::max(top, f[p]);
    }
    if (top > 0)
        for (auto& x : f) x /= top;
    return f;
}

namespace {

std::vector<PhraseId> selected(std::span<const std::uint8_t> indicator) {
    std::vector<PhraseId> ids;
    for (PhraseId p = 0; p < indicator.size(); ++p)
        if (indicator[p]) ids.push_back(p);
    return ids;
}

// Indicator passes on fixed relevance: common first, then distinct.
void select_once(ComparisonResult& out, const CorpusIndex& index, const RelevanceState& state,
                 std::span<const PhraseId> salient_a, std::span<const PhraseId> salient_b,
                 const SolverConfig& config) {
    const auto phi = commonality_scores(state.f, state.fp);
    const auto common = update_common_indicator(phi, salient_a, salient_b);
    const auto pi_a = distinction_scores(state.f, state.fp, config.gamma);
    const auto pi_b = distinction_scores(state.fp, state.f, config.gamma);
    const auto distinct = update_distinct_indicator(pi_a, pi_b, salient_a, salient_b, common);
    out.common = scored(index, selected(common), phi);
    out.distinct_a = scored(index, selected(distinct.y), pi_a);
    out.distinct_b = scored(index, selected(distinct.yp), pi_b);
    out.trace.degenerate = distinct.degenerate;
}

}  // namespace

ComparisonResult cda_nograph(const CorpusIndex& index, const BipartiteGraph& graph, DocIndex a,
                             DocIndex b, std::span<const PhraseId> salient_a,
                             std::span<const PhraseId> salient_b, const SolverConfig& config) {
    validate_params(config);
    auto out = labelled(Method::nograph, index, a, b);
    RelevanceState state;
    state.f = max_normalized_bm25(graph, a);
    state.fp = max_normalized_bm25(graph, b);
    select_once(out, index, state, salient_a, salient_b, config);
    out.common_relevance = state;
    out.distinct_relevance = std::move(state);
    return out;
}

ComparisonResult cda_twostep(const CorpusIndex& index, const SelectionProblem& problem,
                             const SolverConfig& config) {
    validate_params(config);
    if (!problem.adjacency) throw Error("selection problem without adjacency matrix");
    const auto& S = *problem.adjacency;
    ComparisonResult out;
    out.method = Method::twostep;
    RelevanceState state =
        initial_state(S.rows(), S.cols(), problem.docs_a, problem.docs_b, config.delta);
    const std::vector<std::uint8_t> none(S.rows(), 0);
    const auto inner =
        propagate_common(S, state, none, config, MeasureKind::log_ratio, &out.trace.operations);
    out.trace.inner_common = {inner.sweeps};
    out.trace.converged = inner.converged;
    select_once(out, index, state, problem.salient_a, problem.salient_b, config);
    out.common_relevance = state;
    out.distinct_relevance = std::move(state);
    return out;
}

ComparisonResult cda_solve(const CorpusIndex& index, const SelectionProblem& problem,
                           const SolverConfig& config, MeasureKind kind) {
    ComparisonResult out;
    out.method = kind == MeasureKind::log_ratio ? Method::cda : Method::altermea;
    auto common = solve_common(problem, config, kind);
    auto distinct = solve_distinct(problem, common.indicator, config, kind);

    out.common = scored(index, selected(common.indicator), common.phi);
    out.distinct_a = scored(index, selected(distinct.y), distinct.pi_a);
    out.distinct_b = scored(index, selected(distinct.yp), distinct.pi_b);

    auto& t = out.trace;
    t.inner_common = common.trace.inner_iterations;
    t.inner_distinct = distinct.trace.inner_iterations;
    t.initial_common = common.trace.initial_objective;
    t.initial_distinct = distinct.trace.initial_objective;
    t.objective_common = common.trace.objective;
    t.objective_distinct = distinct.trace.objective;
    t.converged = common.trace.converged && distinct.trace.converged &&
                  common.trace.inner_converged && distinct.trace.inner_converged;
    t.degenerate = distinct.degenerate;
    t.operations = common.trace.operations + distinct.trace.operations;
    out.common_relevance = std::move(common.state);
    out.distinct_relevance = std::move(distinct.state);
    return out;
}

}  // namespace phrasecom

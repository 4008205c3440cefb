#pragma once

#include <span>
#include <vector>

#include "phrasecom/graph.hpp"
#include "phrasecom/index.hpp"
#include "phrasecom/result.hpp"

namespace phrasecom {

struct BaselineConfig {
    std::size_t wordmatch_top_k = 20;
    double stringfuzzy_threshold = 3.0;
    std::size_t contextfuzzy_window = 10;
    double contextfuzzy_threshold = 0.05;
};

/// Throws ParameterError on out-of-range settings.
void validate_baseline_config(const BaselineConfig& config);

/// Corpus-wide document frequency of every lemma (indexed like CorpusIndex::words()).
std::vector<std::uint32_t> word_document_frequencies(const CorpusIndex& index);

/// tf * ln(|D| / df) of every non-stopword lemma in d; ties by word text,
/// truncated to `top_k`.
std::vector<ScoredPhrase> top_tfidf_words(const CorpusIndex& index,
                                          std::span<const std::uint32_t> word_df, DocIndex d,
                                          std::size_t top_k);

/// Intersection of the two top-k word lists as C (score = sum of both
/// scores); each list's remainder as Q / Q'. ScoredPhrase::id holds the word id.
ComparisonResult word_match(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                            DocIndex a, DocIndex b, std::size_t top_k = 20);

/// C = members of S u S' with BM25 above `threshold` to both documents
/// (score = the smaller of the two); Q = S \ C, Q' = S' \ C scored by BM25
/// to their own document.
ComparisonResult string_fuzzy(const CorpusIndex& index, const BipartiteGraph& graph, DocIndex a,
                              DocIndex b, std::span<const PhraseId> salient_a,
                              std::span<const PhraseId> salient_b, double threshold = 3.0);

/// Sparse TF-IDF vector over lemma ids.
struct TermVector {
    std::vector<std::pair<std::uint32_t, double>> entries;  ///< sorted by term
    double norm = 0.0;
};

double cosine(const TermVector& a, const TermVector& b);

/// TF-IDF vector of a bag of lemma ids; stopwords are skipped.
TermVector tfidf_vector(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                        std::span<const std::uint32_t> lemma_ids);

/// Pseudo-document of a phrase: every lemma within `window` words on either
/// side of each of its occurrences, corpus-wide. A pair uses the union of its
/// members' contexts.
std::vector<std::uint32_t> phrase_context(const CorpusIndex& index, PhraseId p, std::size_t window);

/// Like string_fuzzy with the cosine between each phrase's context vector and
/// the document vector in place of BM25.
ComparisonResult context_fuzzy(const CorpusIndex& index, std::span<const std::uint32_t> word_df,
                               DocIndex a, DocIndex b, std::span<const PhraseId> salient_a,
                               std::span<const PhraseId> salient_b, std::size_t window = 10,
                               double threshold = 0.05);

/// Per-document BM25 divided by the document's largest BM25 weight.
std::vector<double> max_normalized_bm25(const BipartiteGraph& graph, DocIndex d);

/// Commonality and distinction indicators applied once to max-normalized BM25.
ComparisonResult cda_nograph(const CorpusIndex& index, const BipartiteGraph& graph, DocIndex a,
                             DocIndex b, std::span<const PhraseId> salient_a,
                             std::span<const PhraseId> salient_b, const SolverConfig& config);

/// Relevance from one propagation loop with all indicators at zero, then one
/// pass of each indicator update.
ComparisonResult cda_twostep(const CorpusIndex& index, const SelectionProblem& problem,
                             const SolverConfig& config);

/// The full alternating solver; `kind` = additive gives CDA-AlterMea.
ComparisonResult cda_solve(const CorpusIndex& index, const SelectionProblem& problem,
                           const SolverConfig& config, MeasureKind kind);

/// Phrase texts from the index with `scores` (indexed by phrase id), sorted.
std::vector<ScoredPhrase> scored(const CorpusIndex& index, std::span<const PhraseId> ids,
                                 std::span<const double> scores);

}  // namespace phrasecom

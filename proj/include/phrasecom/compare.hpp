#pragma once

#include <span>
#include <string>
#include <vector>

#include "phrasecom/baselines.hpp"
#include "phrasecom/graph.hpp"
#include "phrasecom/index.hpp"
#include "phrasecom/result.hpp"
#include "phrasecom/salience.hpp"
#include "phrasecom/solver.hpp"

namespace phrasecom {

struct CompareConfig {
    SalienceConfig salience;
    SolverConfig solver;
    BaselineConfig baselines;
};

/// Read-only state shared by every comparison over one index. Safe to use
/// from several threads at once.
class Comparator {
public:
    /// Both references must outlive the comparator.
    Comparator(const CorpusIndex& index, const BipartiteGraph& graph, CompareConfig config = {});

    const CorpusIndex& index() const { return *index_; }
    const BipartiteGraph& graph() const { return *graph_; }
    const NormalizedAdjacency& adjacency() const { return adjacency_; }
    const CompareConfig& config() const { return config_; }
    /// Warning produced by parameter validation, if any.
    const std::string& warning() const { return warning_; }

    /// Salient phrase ids of the document, sorted.
    std::vector<PhraseId> salient_ids(DocIndex d) const;
    /// Union of the members' salient phrase ids, sorted.
    std::vector<PhraseId> salient_union(std::span<const DocIndex> docs) const;

    /// Throws LookupError for unknown ids.
    ComparisonResult compare(Method method, std::string_view id_a, std::string_view id_b) const;
    ComparisonResult compare(Method method, DocIndex a, DocIndex b) const;

    /// Document-set extension. Sets must be non-empty and disjoint; only the
    /// solver methods (cda, twostep, altermea) accept more than one document
    /// per side.
    ComparisonResult compare_sets(Method method, std::span<const std::string> ids_a,
                                  std::span<const std::string> ids_b) const;

private:
    ComparisonResult run(Method method, std::vector<DocIndex> docs_a,
                         std::vector<DocIndex> docs_b) const;

    const CorpusIndex* index_;
    const BipartiteGraph* graph_;
    NormalizedAdjacency adjacency_;
    CompareConfig config_;
    std::vector<std::uint32_t> word_df_;
    std::string warning_;
};

/// One-shot helpers over a fresh Comparator.
ComparisonResult compare_documents(const CorpusIndex& index, const BipartiteGraph& graph,
                                   std::string_view id_a, std::string_view id_b,
                                   const CompareConfig& config = {}, Method method = Method::cda);

ComparisonResult compare_document_sets(const CorpusIndex& index, const BipartiteGraph& graph,
                                       std::span<const std::string> ids_a,
                                       std::span<const std::string> ids_b,
                                       const CompareConfig& config = {},
                                       Method method = Method::cda);

}  // namespace phrasecom

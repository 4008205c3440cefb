#pragma once

#include <vector>

#include "phrasecom/index.hpp"
#include "phrasecom/sparse.hpp"

namespace phrasecom {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// Non-negative BM25 IDF: ln(1 + (n - df + 0.5) / (df + 0.5)).
double bm25_idf(double num_docs, double doc_frequency);

/// BM25 of one term in one document; 0 when `tf` is 0.
double bm25_weight(double tf, double doc_frequency, double num_docs, double doc_length,
                   double average_length, const Bm25Params& params = {});

/// BM25 between a vocabulary phrase (or pair) and an indexed document, with
/// |P_d| as the length unit. Throws LookupError for unknown ids.
double bm25_weight(const CorpusIndex& index, PhraseId p, DocIndex d, const Bm25Params& params = {});

/// Phrase-document bipartite graph: W (m x n) with BM25 edge weights.
struct BipartiteGraph {
    SparseMatrix weights;
    std::vector<double> phrase_degree;
    std::vector<double> doc_degree;
    Bm25Params params;
    /// Documents without any vocabulary phrase (zero columns).
    std::vector<DocIndex> isolated_documents;
};

BipartiteGraph build_graph(const CorpusIndex& index, const Bm25Params& params = {});

/// Reassembles a graph from persisted weights.
BipartiteGraph graph_from_weights(SparseMatrix weights, const Bm25Params& params);

/// S = D_P^{-1/2} W D_D^{-1/2}; zero-degree rows/columns stay zero.
struct NormalizedAdjacency {
    SparseMatrix matrix;
};

NormalizedAdjacency normalize(const BipartiteGraph& graph);

}  // namespace phrasecom

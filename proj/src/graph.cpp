#include "phrasecom/graph.hpp"

#include <cmath>

#include "phrasecom/error.hpp"

namespace phrasecom {

double bm25_idf(double num_docs, double doc_frequency) {
    return std::log(1.0 + (num_docs - doc_frequency + 0.5) / (doc_frequency + 0.5));
}

double bm25_weight(double tf, double doc_frequency, double num_docs, double doc_length,
                   double average_length, const Bm25Params& params) {
    if (tf <= 0) return 0.0;
    const double norm =
        average_length > 0 ? 1.0 - params.b + params.b * doc_length / average_length : 1.0;
    return bm25_idf(num_docs, doc_frequency) * tf * (params.k1 + 1.0) / (tf + params.k1 * norm);
}

double bm25_weight(const CorpusIndex& index, PhraseId p, DocIndex d, const Bm25Params& params) {
    const auto& phrase = index.phrase(p);
    if (d >= index.num_documents()) throw LookupError("unknown document index " + std::to_string(d));
    return bm25_weight(index.count(p, d), phrase.doc_frequency,
                       static_cast<double>(index.num_documents()), index.document(d).length,
                       index.average_length(), params);
}

BipartiteGraph graph_from_weights(SparseMatrix weights, const Bm25Params& params) {
    BipartiteGraph g;
    g.phrase_degree = weights.row_sums();
    g.doc_degree = weights.col_sums();
    for (DocIndex d = 0; d < g.doc_degree.size(); ++d)
        if (g.doc_degree[d] <= 0) g.isolated_documents.push_back(d);
    g.weights = std::move(weights);
    g.params = params;
    return g;
}

BipartiteGraph build_graph(const CorpusIndex& index, const Bm25Params& params) {
    const double n = static_cast<double>(index.num_documents());
    const double avgdl = index.average_length();
    std::vector<Triplet> triplets;
    for (DocIndex d = 0; d < index.num_documents(); ++d) {
        const auto& doc = index.document(d);
        for (const auto& post : doc.postings) {
            const double w = bm25_weight(post.count, index.phrase(post.phrase).doc_frequency, n,
                                         doc.length, avgdl, params);
            triplets.push_back({post.phrase, d, w});
        }
    }
    return graph_from_weights(
        SparseMatrix::from_triplets(index.num_phrases(), index.num_documents(), std::move(triplets)),
        params);
}

NormalizedAdjacency normalize(const BipartiteGraph& graph) {
    std::vector<Triplet> triplets = graph.weights.triplets();
    for (auto& t : triplets) {
        const double dp = graph.phrase_degree[t.row];
        const double dd = graph.doc_degree[t.col];
        t.value = (dp > 0 && dd > 0) ? t.value / std::sqrt(dp * dd) : 0.0;
    }
    return {SparseMatrix::from_triplets(graph.weights.rows(), graph.weights.cols(),
                                        std::move(triplets))};
}

}  // namespace phrasecom

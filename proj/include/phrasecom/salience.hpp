#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phrasecom/index.hpp"

namespace phrasecom {

struct ScoredPhrase {
    PhraseId id = 0;
    std::string text;
    double score = 0.0;

    bool operator==(const ScoredPhrase&) const = default;
};

struct SalienceConfig {
    std::size_t k = 30;
    double mu = 3.0;
};

/// (0.5 + 0.5 n(p,d) / max_t n(t,d))^2 * ln(|D| / n(p,D)).
double interestingness(double count_in_doc, double max_count_in_doc, double num_docs,
                       double doc_frequency);

/// Intra-document PMI of a pair discounted by its document frequency:
/// n(ab,d) |P_d| / (n(a,d) n(b,d)) * ln(|D| / n(ab,D)).
double pair_interestingness(double pair_count, double doc_length, double first_count,
                            double second_count, double num_docs, double pair_doc_frequency);

/// Dispatches on the phrase kind. Throws LookupError for unknown phrases.
double interestingness(const CorpusIndex& index, PhraseId p, DocIndex d);

/// Min-max rescaling into [1e-6, 1 - 1e-6]; constant input maps to 0.5.
std::vector<double> normalize_interestingness(std::span<const double> raw);

std::size_t levenshtein_distance(std::string_view a, std::string_view b);

/// 1 - distance / max(|a|, |b|), character level.
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Dense symmetric similarity over a candidate list.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    explicit SimilarityMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t a, std::size_t b) const { return data_[a * n_ + b]; }
    double& operator()(std::size_t a, std::size_t b) { return data_[a * n_ + b]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

SimilarityMatrix similarity_matrix(std::span<const std::string> texts);

struct DiverseSelection {
    /// Candidate positions in selection order.
    std::vector<std::size_t> order;
    /// Multiply-add count, for cost checks.
    std::uint64_t operations = 0;
};

/// Greedy maximization of mu * sum_{a in S} q_a r_a - sum_{a,b in S} r_a M_ab r_b
/// with q = M r, up to `k` picks. Ties go to the larger r, then the smaller id.
DiverseSelection select_diverse(std::span<const double> r, const SimilarityMatrix& similarity,
                                std::span<const PhraseId> ids, std::size_t k, double mu);

struct SalientPhraseSet {
    std::string doc_id;
    /// Selection order; score is the normalized interestingness.
    std::vector<ScoredPhrase> phrases;
};

/// Scores every phrase and pair of the document, selects up to K, then drops
/// the members of any selected pair.
SalientPhraseSet salient_phrases(const CorpusIndex& index, DocIndex d,
                                 const SalienceConfig& config = {});

}  // namespace phrasecom

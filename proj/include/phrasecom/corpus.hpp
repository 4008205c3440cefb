#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace phrasecom {

/// A raw document plus the token-level views derived from it.
struct Document {
    std::string id;
    std::string text;
    std::vector<std::string> tokens;
    std::vector<std::string> lemmas;
    /// Exclusive end offsets of sentences, in token positions.
    std::vector<std::size_t> sentence_ends;
};

/// Tokenizes and lemmatizes `text`.
Document make_document(std::string id, std::string text);

/// Knobs for phrase mining, segmentation and pair detection.
struct CorpusConfig {
    std::size_t max_len = 5;
    std::size_t min_support = 10;
    /// Score of leaving a single word as its own segment; a multi-word
    /// segment of quality q wins over its words iff ln q > len * ln prior.
    double unigram_prior = 0.5;
    /// Weight of the positive-list bonus in the quality score.
    double positive_bonus = 0.3;
    /// Per-sentence cap on the fraction of content lemmas left as single-word
    /// segments. Sentences above it are re-segmented once with candidates
    /// whose support reaches half of `min_support` (at least two).
    double non_segmented_ratio = 0.05;
    std::size_t pair_window = 10;
    /// A pair is emitted when its window co-occurrence count is strictly
    /// greater than this.
    std::size_t pair_min_cooccurrence = 3;
    bool pair_multiword_only = true;
};

using PositiveList = std::unordered_set<std::string>;

/// Contiguous lemma n-gram counts, sentence-bounded.
struct NgramCounts {
    std::unordered_map<std::string, std::uint32_t> counts;
    std::uint64_t total_lemmas = 0;

    std::uint32_t support(const std::string& key) const {
        auto it = counts.find(key);
        return it == counts.end() ? 0 : it->second;
    }
};

struct PhraseCandidate {
    std::vector<std::string> lemmas;
    std::uint32_t support = 0;
    double quality = 0.0;

    std::string text() const;
};

std::string join_words(std::span<const std::string> words);

NgramCounts count_ngrams(std::span<const Document> corpus, std::size_t max_len);

/// Quality in [0,1]: positive-part normalized PMI against the least cohesive
/// binary split, plus a bonus for (prefix/suffix) positive-list membership.
/// Single words score 1.
double score_phrase_quality(std::span<const std::string> lemmas, const NgramCounts& stats,
                            const PositiveList& positives, const CorpusConfig& config);

/// Every n-gram with `1 <= n <= max_len` and support at least `min_support`.
/// N-grams that begin or end with a stopword, and stopword unigrams, are not
/// candidates. Sorted by text.
std::vector<PhraseCandidate> mine_frequent_patterns(std::span<const Document> corpus,
                                                    std::size_t max_len, std::size_t min_support,
                                                    const PositiveList& positives = {},
                                                    const CorpusConfig& config = {});

/// Same as above over precomputed counts.
std::vector<PhraseCandidate> mine_frequent_patterns(const NgramCounts& counts,
                                                    std::size_t max_len, std::size_t min_support,
                                                    const PositiveList& positives,
                                                    const CorpusConfig& config);

/// Multi-word candidate text -> quality.
using QualityTable = std::unordered_map<std::string, double>;

QualityTable make_quality_table(std::span<const PhraseCandidate> candidates);

struct Segment {
    std::uint32_t start = 0;
    std::uint32_t length = 0;

    std::uint32_t end() const { return start + length; }
    bool operator==(const Segment&) const = default;
};

/// Optimal segmentation of one sentence. Offsets are relative to the span.
/// Ties go to fewer segments, then to the longer leftmost segment.
std::vector<Segment> segment_sentence(std::span<const std::string> lemmas,
                                      const QualityTable& qualities, std::size_t max_len,
                                      double unigram_prior);

/// Segments every sentence of `doc`. Sentences whose single-word fraction
/// exceeds the configured ratio are retried with `expanded` merged in.
std::vector<Segment> segment_document(const Document& doc, const QualityTable& candidates,
                                      const QualityTable& expanded, const CorpusConfig& config);

std::vector<Segment> segment_document(const Document& doc, const QualityTable& candidates,
                                      const CorpusConfig& config);

struct PhraseOccurrence {
    std::string text;
    std::uint32_t start = 0;
    std::uint32_t length = 0;
};

struct PhrasePairCount {
    std::string first;   ///< lexicographically smaller member
    std::string second;
    std::uint32_t count = 0;
};

/// Counts, for each unordered pair of distinct phrases, the occurrence pairs
/// whose joint extent spans at most `window` words; keeps pairs with count
/// strictly above `min_cooccurrence`. Sorted by (first, second).
std::vector<PhrasePairCount> detect_phrase_pairs(std::span<const PhraseOccurrence> occurrences,
                                                 std::size_t window = 10,
                                                 std::size_t min_cooccurrence = 3);

}  // namespace phrasecom

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phrasecom/corpus.hpp"

namespace phrasecom {

using PhraseId = std::uint32_t;
using DocIndex = std::uint32_t;

inline constexpr PhraseId kNoPhrase = 0xFFFFFFFFu;

enum class PhraseKind : std::uint8_t { single = 0, pair = 1 };

struct Phrase {
    PhraseId id = 0;
    PhraseKind kind = PhraseKind::single;
    /// Member lemmas of a single phrase; empty for pairs.
    std::vector<std::string> words;
    /// Member phrase ids of a pair (first < second); unused for singles.
    PhraseId first = kNoPhrase;
    PhraseId second = kNoPhrase;
    /// Space-joined lemmas, or `a@@b` for a pair.
    std::string text;
    std::uint32_t doc_frequency = 0;
};

struct Posting {
    PhraseId phrase = 0;
    std::uint32_t count = 0;

    bool operator==(const Posting&) const = default;
};

struct SegmentRef {
    std::uint32_t start = 0;
    std::uint32_t length = 0;
    /// Vocabulary id, or kNoPhrase for stopword segments.
    PhraseId phrase = kNoPhrase;

    bool operator==(const SegmentRef&) const = default;
};

struct IndexedDocument {
    std::string id;
    /// Lemmas as ids into CorpusIndex::words().
    std::vector<std::uint32_t> lemmas;
    std::vector<std::uint32_t> sentence_ends;
    std::vector<SegmentRef> segments;
    /// n(p,d) for every phrase and pair in the document, sorted by phrase id.
    std::vector<Posting> postings;
    /// |P_d|: number of phrase segment occurrences.
    std::uint32_t length = 0;
};

/// Counters reported after indexing.
struct BuildStats {
    std::uint64_t candidate_phrases = 0;
    std::uint64_t expanded_candidates = 0;
    std::uint64_t phrase_pairs = 0;
    std::uint64_t total_lemmas = 0;
};

/// Immutable corpus index: documents, phrase vocabulary and counts.
class CorpusIndex {
public:
    CorpusIndex() = default;
    CorpusIndex(CorpusConfig config, std::vector<std::string> words, std::vector<Phrase> phrases,
                std::vector<IndexedDocument> docs, BuildStats stats);

    const CorpusConfig& config() const { return config_; }
    const BuildStats& stats() const { return stats_; }

    std::size_t num_documents() const { return docs_.size(); }
    std::size_t num_phrases() const { return phrases_.size(); }

    const std::vector<std::string>& words() const { return words_; }
    const std::vector<Phrase>& phrases() const { return phrases_; }
    const std::vector<IndexedDocument>& documents() const { return docs_; }

    const IndexedDocument& document(DocIndex d) const { return docs_.at(d); }
    /// Throws LookupError for unknown phrase ids.
    const Phrase& phrase(PhraseId p) const;

    std::optional<DocIndex> find_document(std::string_view id) const;
    /// Throws LookupError naming the id.
    DocIndex require_document(std::string_view id) const;
    std::optional<PhraseId> find_phrase(std::string_view text) const;

    /// n(p,d).
    std::uint32_t count(PhraseId p, DocIndex d) const;
    /// n(p,D).
    std::uint32_t doc_frequency(PhraseId p) const { return phrase(p).doc_frequency; }
    /// Mean |P_d| over the corpus.
    double average_length() const;
    /// Lemma strings of a document.
    std::vector<std::string> lemma_text(DocIndex d) const;

private:
    CorpusConfig config_;
    std::vector<std::string> words_;
    std::vector<Phrase> phrases_;
    std::vector<IndexedDocument> docs_;
    BuildStats stats_;
};

/// Mines, segments and counts the corpus. Deterministic in the input.
/// Rejects an empty corpus and duplicate or empty document ids.
CorpusIndex build_index(std::span<const Document> corpus, const CorpusConfig& config = {},
                        const PositiveList& positives = {});

/// Raw (id, text) records.
struct RawDocument {
    std::string id;
    std::string text;
};

/// JSON-lines with `id` and `text` string fields.
std::vector<RawDocument> read_jsonl_corpus(const std::filesystem::path& path);
/// Every `*.txt` file in the directory, id = file stem, sorted by id.
std::vector<RawDocument> read_text_directory(const std::filesystem::path& dir);
/// Dispatches on whether `path` is a directory.
std::vector<RawDocument> read_corpus(const std::filesystem::path& path);

std::vector<Document> make_documents(std::span<const RawDocument> raw);

/// One phrase per line; each line is tokenized and lemmatized.
PositiveList read_positive_list(const std::filesystem::path& path);

}  // namespace phrasecom

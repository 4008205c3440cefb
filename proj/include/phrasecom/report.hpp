#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "phrasecom/eval.hpp"
#include "phrasecom/persist.hpp"
#include "phrasecom/result.hpp"
#include "phrasecom/salience.hpp"

namespace phrasecom {

/// `{method, pair, common:[{text,phi}], distinct_a:[{text,pi}],
/// distinct_b:[{text,pi}], trace:{...}}`. Pair members are strings for
/// single documents and arrays for sets; `with_objectives` adds the
/// objective traces.
std::string comparison_json(const ComparisonResult& result, bool with_objectives = false);

/// `{doc_id, phrases:[{text, score}]}` on one line.
std::string salient_json(const SalientPhraseSet& set);

/// Corpus statistics: documents, phrases, pairs and links.
struct IndexStatistics {
    std::uint64_t documents = 0;
    std::uint64_t candidate_phrases = 0;
    std::uint64_t salient_phrases = 0;
    std::uint64_t phrase_pairs = 0;
    std::uint64_t links = 0;
    std::uint64_t isolated_documents = 0;
};

IndexStatistics index_statistics(const IndexBundle& bundle, const SalienceConfig& salience);

std::string statistics_table(const IndexStatistics& stats);
std::string statistics_json(const IndexStatistics& stats);

/// Per-method reports as JSON.
std::string eval_json(std::span<const EvalReport> reports);
/// Aligned text table of the macro averages.
std::string eval_table(std::span<const EvalReport> reports);

}  // namespace phrasecom

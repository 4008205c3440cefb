#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phrasecom {

/// Token stream of one text plus the sentence structure over it.
struct TokenizedText {
    std::vector<std::string> tokens;
    /// Exclusive end offset (into `tokens`) of every non-empty sentence.
    std::vector<std::size_t> sentence_ends;
};

/// Lowercased maximal alphanumeric runs. Sentences end at `.?!;` and at
/// newlines; empty sentences are dropped.
TokenizedText tokenize(std::string_view text);

/// Maps a single lowercase token to its lemma.
std::string lemmatize_word(std::string_view token);

/// Length-preserving lemmatization of a token list.
std::vector<std::string> lemmatize(std::span<const std::string> tokens);

bool is_stopword(std::string_view lemma);

}  // namespace phrasecom

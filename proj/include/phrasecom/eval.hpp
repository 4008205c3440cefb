#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "phrasecom/index.hpp"
#include "phrasecom/result.hpp"

namespace phrasecom {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const Prf&) const = default;
};

/// P = |I n G| / |I| (0 for empty I), R = |I n G| / |G|, F1 their harmonic
/// mean (0 when both are 0). Throws Error on empty G.
Prf prf(const std::set<std::string>& system, const std::set<std::string>& gold);

enum class Role { common, distinct_a, distinct_b };

Role parse_role(std::string_view name);
std::string_view role_name(Role role);

enum class Judgment { perfect, good, fair, bad };

Judgment parse_judgment(std::string_view name);

/// Accepted phrases per pair and role.
struct PairGold {
    std::set<std::string> common;
    std::set<std::string> distinct_a;
    std::set<std::string> distinct_b;
};

struct GoldLabels {
    std::map<std::string, PairGold> pairs;
};

/// Lines `pair_id<TAB>role<TAB>phrase<TAB>label`. Positive labels are perfect
/// and good, or perfect only when `perfect_only`. Phrases are normalized to
/// lemma strings; blank lines and lines starting with '#' are skipped.
/// Throws InputError with the line number on malformed lines, and when a
/// phrase is listed under two roles of the same pair.
GoldLabels parse_gold(std::string_view text, bool perfect_only = false,
                      std::string_view source = "gold");
GoldLabels read_gold(const std::filesystem::path& path, bool perfect_only = false);

/// Lowercase lemma string of a phrase as written by an annotator. Pair texts
/// (`a@@b`) normalize each member.
std::string normalize_phrase_text(std::string_view text);

/// A comparison to run: pair id plus the two document id lists.
struct PairSpec {
    std::string pair_id;
    std::vector<std::string> ids_a;
    std::vector<std::string> ids_b;

    bool operator==(const PairSpec&) const = default;
};

/// Lines `pair_id<TAB>id_a[,id_a...]<TAB>id_b[,id_b...]`.
std::vector<PairSpec> parse_pairs(std::string_view text, std::string_view source = "pairs");
std::vector<PairSpec> read_pairs(const std::filesystem::path& path);

struct PairScore {
    std::string pair_id;
    Prf common;
    Prf distinct;
};

struct EvalReport {
    std::string method;
    std::vector<PairScore> pairs;  ///< sorted by pair id
    Prf common;                    ///< macro averages
    Prf distinct;
};

/// Distinct items are compared as role-tagged texts so that a phrase credited
/// to the wrong side does not count.
EvalReport evaluate_pairs(std::span<const std::pair<std::string, ComparisonResult>> results,
                          const GoldLabels& gold);

/// Macro-average of a list of scores.
Prf macro_average(std::span<const Prf> scores);

/// TF-IDF cosine between two documents over non-stopword lemmas.
double document_cosine(const CorpusIndex& index, DocIndex a, DocIndex b);

struct SampleRequest {
    std::size_t n_high = 35;
    std::size_t n_low = 35;
    std::size_t n_random = 0;
    double high_cut = 0.6;
    double low_min = 0.05;
    double low_max = 0.2;
    std::uint64_t seed = 42;
};

struct SampledPair {
    DocIndex a = 0;
    DocIndex b = 0;
    double cosine = 0.0;
    std::string stratum;

    bool operator==(const SampledPair&) const = default;
};

struct PairSample {
    std::vector<SampledPair> pairs;
    /// A stratum held fewer pairs than requested.
    bool short_supply = false;
};

/// Stratified sample over all unordered document pairs: cosine above
/// high_cut, inside (low_min, low_max), and uniformly from the rest. Seeded.
PairSample sample_pairs(const CorpusIndex& index, const SampleRequest& request);

}  // namespace phrasecom

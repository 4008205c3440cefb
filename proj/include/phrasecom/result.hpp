#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phrasecom/salience.hpp"
#include "phrasecom/solver.hpp"

namespace phrasecom {

enum class Method { cda, nograph, twostep, altermea, wordmatch, stringfuzzy, contextfuzzy };

/// Throws ParameterError listing the accepted names.
Method parse_method(std::string_view name);
std::string_view method_name(Method method);
/// Every method, in CLI order.
std::vector<Method> all_methods();

struct ComparisonTrace {
    std::vector<std::size_t> inner_common;
    std::vector<std::size_t> inner_distinct;
    double initial_common = 0.0;
    double initial_distinct = 0.0;
    std::vector<double> objective_common;
    std::vector<double> objective_distinct;
    bool converged = true;
    /// A side had no phrase with positive distinction.
    bool degenerate = false;
    std::uint64_t operations = 0;

    std::size_t outer_common() const { return objective_common.size(); }
    std::size_t outer_distinct() const { return objective_distinct.size(); }

    bool operator==(const ComparisonTrace&) const = default;
};

/// C, Q and Q' with their scores, ordered by descending score then id.
struct ComparisonResult {
    Method method = Method::cda;
    std::vector<std::string> ids_a;
    std::vector<std::string> ids_b;
    std::vector<ScoredPhrase> common;
    std::vector<ScoredPhrase> distinct_a;
    std::vector<ScoredPhrase> distinct_b;
    ComparisonTrace trace;
    /// Relevance behind the common selection (empty for word-level baselines).
    RelevanceState common_relevance;
    /// Relevance behind the distinct selection.
    RelevanceState distinct_relevance;
    std::string warning;

    bool operator==(const ComparisonResult&) const = default;
};

/// Sorts by descending score, ties by ascending id.
void sort_by_score(std::vector<ScoredPhrase>& phrases);

}  // namespace phrasecom

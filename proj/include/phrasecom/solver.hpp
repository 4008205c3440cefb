#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phrasecom/index.hpp"
#include "phrasecom/sparse.hpp"

namespace phrasecom {

/// Parameters of the alternating minimization.
struct SolverConfig {
    double alpha = 100.0;   ///< supervision strength
    double lambda = 0.099;  ///< selection vs. propagation trade-off
    double gamma = 1.0;     ///< distinction smoothing
    double delta = 0.1;     ///< supervision floor added to every document
    double inner_tol = 1e-4;
    double outer_tol = 1e-4;
    std::size_t max_inner = 50;
    std::size_t max_outer = 5;
    /// Accept lambda above alpha*gamma*delta/(alpha+1) (never above gamma^2/4).
    bool allow_lambda_above_bound = false;
};

/// min(gamma^2/4, alpha*gamma*delta/(alpha+1)).
double lambda_bound(const SolverConfig& config);

struct ParamCheck {
    double bound = 0.0;
    /// Non-empty when lambda exceeds the bound and the override allowed it.
    std::string warning;
};

/// Throws ParameterError (quoting lambda and the bound) on invalid settings.
ParamCheck validate_params(const SolverConfig& config);

/// Which commonality/distinction pair drives selection.
enum class MeasureKind {
    log_ratio,  ///< ln(1 + f f') and ln((f + gamma) / (f' + gamma))
    additive,   ///< f + f' and f - f'
};

/// f, f' over phrases; g, g' over documents; g0, g0' the supervision.
struct RelevanceState {
    std::vector<double> f, fp, g, gp, g0, gp0;

    bool operator==(const RelevanceState&) const = default;
};

/// Zero scores; supervision is delta everywhere plus one on each target.
RelevanceState initial_state(std::size_t num_phrases, std::size_t num_docs,
                             std::span<const DocIndex> targets_a,
                             std::span<const DocIndex> targets_b, double delta);

// Closed-form coordinate minimizers. `propagated` is S_i g.

/// Minimizer of the common objective in f_i given f'_i = `other`.
double common_f_update(double propagated, double other, double lambda, bool selected);
/// Minimizer of the distinct objective in f_i over f_i >= 0; `selection_difference`
/// is y_i - y'_i. Throws ParameterError when the radicand is negative.
double distinct_f_update(double propagated, double gamma, double lambda, int selection_difference);
/// g_j = (S_.j^T f + alpha g0_j) / (1 + alpha).
double g_update(double back_propagated, double alpha, double prior);
double additive_common_f_update(double propagated, double lambda, bool selected);
double additive_distinct_f_update(double propagated, double lambda, int selection_difference);

/// Graph regularizer plus supervision, in the expanded form
/// |f|^2 + |g|^2 - 2 f^T S g + alpha |g - g0|^2.
double propagation_loss(const SparseMatrix& adjacency, std::span<const double> f,
                        std::span<const double> g, std::span<const double> g0, double alpha);

double common_objective(const SparseMatrix& adjacency, const RelevanceState& state,
                        std::span<const std::uint8_t> common, double lambda, double alpha,
                        MeasureKind kind = MeasureKind::log_ratio);

double distinct_objective(const SparseMatrix& adjacency, const RelevanceState& state,
                          std::span<const std::uint8_t> distinct_a,
                          std::span<const std::uint8_t> distinct_b, double lambda, double alpha,
                          double gamma, MeasureKind kind = MeasureKind::log_ratio);

std::vector<double> commonality_scores(std::span<const double> f, std::span<const double> fp,
                                       MeasureKind kind = MeasureKind::log_ratio);
/// Distinction of the `own` side against the `other` side.
std::vector<double> distinction_scores(std::span<const double> own, std::span<const double> other,
                                       double gamma, MeasureKind kind = MeasureKind::log_ratio);

/// y^c: members of S u S' whose score reaches both the S mean and the S' mean.
/// Throws Error if either salient set is empty.
std::vector<std::uint8_t> update_common_indicator(std::span<const double> phi,
                                                  std::span<const PhraseId> salient_a,
                                                  std::span<const PhraseId> salient_b);

struct DistinctIndicators {
    std::vector<std::uint8_t> y;
    std::vector<std::uint8_t> yp;
    /// Some side had no phrase with positive distinction.
    bool degenerate = false;
};

/// y: members of S outside the common set with positive distinction at or
/// above the S mean; y' likewise over S'.
DistinctIndicators update_distinct_indicator(std::span<const double> pi_a,
                                             std::span<const double> pi_b,
                                             std::span<const PhraseId> salient_a,
                                             std::span<const PhraseId> salient_b,
                                             std::span<const std::uint8_t> common);

/// Inputs shared by both selection problems.
struct SelectionProblem {
    const SparseMatrix* adjacency = nullptr;  ///< normalized bi-adjacency, m x n
    std::vector<DocIndex> docs_a;
    std::vector<DocIndex> docs_b;
    std::vector<PhraseId> salient_a;  ///< sorted, unique
    std::vector<PhraseId> salient_b;
};

struct SolverTrace {
    double initial_objective = 0.0;
    /// Objective after each outer iteration.
    std::vector<double> objective;
    /// Inner iterations spent in each outer iteration.
    std::vector<std::size_t> inner_iterations;
    /// Every inner loop met inner_tol.
    bool inner_converged = true;
    /// The outer loop met outer_tol before max_outer.
    bool converged = false;
    std::uint64_t operations = 0;
};

struct CommonSolution {
    std::vector<std::uint8_t> indicator;
    std::vector<double> phi;
    RelevanceState state;
    /// Relevance after the first inner loop (all indicators still zero).
    RelevanceState first_state;
    SolverTrace trace;
};

struct DistinctSolution {
    std::vector<std::uint8_t> y;
    std::vector<std::uint8_t> yp;
    std::vector<double> pi_a;
    std::vector<double> pi_b;
    RelevanceState state;
    SolverTrace trace;
    bool degenerate = false;
};

struct PropagationResult {
    std::size_t sweeps = 0;
    bool converged = false;
};

/// Runs the propagation updates with fixed indicators until the relative
/// change of both propagation losses drops below inner_tol.
PropagationResult propagate_common(const SparseMatrix& adjacency, RelevanceState& state,
                                   std::span<const std::uint8_t> common,
                                   const SolverConfig& config, MeasureKind kind,
                                   std::uint64_t* operations = nullptr);

PropagationResult propagate_distinct(const SparseMatrix& adjacency, RelevanceState& state,
                                     std::span<const std::uint8_t> y,
                                     std::span<const std::uint8_t> yp, const SolverConfig& config,
                                     MeasureKind kind, std::uint64_t* operations = nullptr);

/// Common-phrase selection by block coordinate descent.
CommonSolution solve_common(const SelectionProblem& problem, const SolverConfig& config,
                            MeasureKind kind = MeasureKind::log_ratio);

/// Distinct-phrase selection given the common indicator.
DistinctSolution solve_distinct(const SelectionProblem& problem,
                                std::span<const std::uint8_t> common, const SolverConfig& config,
                                MeasureKind kind = MeasureKind::log_ratio);

}  // namespace phrasecom

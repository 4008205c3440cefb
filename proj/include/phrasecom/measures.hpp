#pragma once

#include <cmath>

namespace phrasecom {

/// Relevance of one phrase to the two compared documents.
struct ScorePair {
    double f_d = 0.0;
    double f_dp = 0.0;
};

/// Product-form commonality: ln(1 + f(p,d) f(p,d')).
inline double commonality(ScorePair s) { return std::log1p(s.f_d * s.f_dp); }

/// Smoothed log-ratio distinction of d against d'.
inline double distinction(ScorePair s, double gamma = 1.0) {
    // Difference of logs keeps swapping the arguments an exact negation.
    return std::log(s.f_d + gamma) - std::log(s.f_dp + gamma);
}

/// Additive commonality used by the alternative-measure baseline.
inline double alt_commonality_sum(ScorePair s) { return s.f_d + s.f_dp; }

/// Difference distinction used by the alternative-measure baseline.
inline double alt_distinction_diff(ScorePair s) { return s.f_d - s.f_dp; }

}  // namespace phrasecom

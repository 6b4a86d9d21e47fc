#pragma once

#include <cmath>
#include <stdexcept>

#include "ergo/deformed.hpp"
#include "ergo/gamble.hpp"
#include "ergo/roots.hpp"

namespace ergo {

inline constexpr double kDefaultThresholdDb = 0.5;

// Below the threshold the paired options read as one signal and the choice
// falls back to heuristics; Degenerate marks p in {0,1}, where the ratio
// carries no information.
enum class Distinguishability { Fuzzy, Crisp, Degenerate };

// Contrast ratio between the two options' decision signals, in decibels.
// Gains: 10*log10(p*x / ((1+x)^p - 1)) >= 0. Losses: 10*log10((e_p^x - 1)/x)
// <= 0. Exactly 0 at x = 0 (the shared analytic limit). p in (0,1) strictly;
// at the endpoints the ratio degenerates and is rejected.
inline double contrast_db(Probability p, double x) {
    const double q = p.value();
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("contrast_db: ratio degenerates at p = 0 or p = 1");
    if (!(x >= -1.0))
        throw std::domain_error("contrast_db: requires x >= -1");
    if (x == 0.0)
        return 0.0;
    if (x > 0.0)
        return 10.0 * std::log10(q * x / meiosis_gain(p, x));
    return 10.0 * std::log10((deformed_exp(p, x) - 1.0) / x);
}

struct ContrastReport {
    double x;
    double p;
    double cr_db;
    Distinguishability classification;
    double threshold_db;
};

// Classifies a gamble's contrast: Fuzzy iff |cr_db| < threshold_db. p = 0 or
// p = 1 yields the Degenerate class (cr reported as 0 dB) instead of a claim
// of contrast the model cannot make.
inline ContrastReport classify(Probability p, double x, double threshold_db = kDefaultThresholdDb) {
    if (!(threshold_db > 0.0))
        throw std::domain_error("classify: threshold_db must be positive");
    const double q = p.value();
    if (q == 0.0 || q == 1.0) {
        if (!(x >= -1.0))
            throw std::domain_error("classify: requires x >= -1");
        return {x, q, 0.0, Distinguishability::Degenerate, threshold_db};
    }
    const double cr = contrast_db(p, x);
    const auto cls =
        std::fabs(cr) < threshold_db ? Distinguishability::Fuzzy : Distinguishability::Crisp;
    return {x, q, cr, cls, threshold_db};
}

// Location of the fuzzy band's edge. at_domain_edge means |cr_db| never
// reached the threshold on the searched range and x holds the range's end.
struct FuzzyBoundary {
    double x;
    bool at_domain_edge;
};

// The x at which |cr_db| first reaches threshold_db moving away from 0: the
// most negative fuzzy x for losses, the largest fuzzy x for gains. |cr_db|
// is monotone in |x| on each side (convexity of the loss branch, concavity
// of the gain branch), so bisection applies. Losses end at x = -1; gains are
// unbounded, so the search is capped at gain_search_limit.
inline FuzzyBoundary fuzzy_boundary(Probability p, Domain domain,
                                    double threshold_db = kDefaultThresholdDb,
                                    double gain_search_limit = 1e6) {
    const double q = p.value();
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("fuzzy_boundary: p must lie strictly inside (0,1)");
    if (!(threshold_db > 0.0))
        throw std::domain_error("fuzzy_boundary: threshold_db must be positive");
    if (!(gain_search_limit > 0.0))
        throw std::domain_error("fuzzy_boundary: gain_search_limit must be positive");
    const auto excess = [&](double x) { return std::fabs(contrast_db(p, x)) - threshold_db; };
    if (domain == Domain::Loss) {
        if (excess(-1.0) < 0.0)
            return {-1.0, true};
        return {bisect(excess, -1.0, -1e-12), false};
    }
    if (excess(gain_search_limit) < 0.0)
        return {gain_search_limit, true};
    return {bisect(excess, 1e-12, gain_search_limit), false};
}

}  // namespace ergo

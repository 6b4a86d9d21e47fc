#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "ergo/deformed.hpp"
#include "ergo/roots.hpp"

namespace ergo {

enum class Domain { Gain, Loss };
enum class Choice { Sure, Risky, Indifferent };

// Absolute tie tolerance on compared changes. The rules compare smooth
// curves whose only exact ties sit at analytic tangency points.
inline constexpr double kTieTolerance = 1e-12;

// The only convexification rate exhibited in the model's reference figures.
inline constexpr double kDefaultRho = 1.05;

// Per-repetition geometric growth factor (1+x)^p of wealth under repeated
// play of the risky option at success frequency p.
inline double time_average_factor_risky(Probability p, double x) {
    if (!(x >= -1.0))
        throw std::domain_error("time_average_factor_risky: requires x >= -1");
    const double q = p.value();
    if (q == 0.0)
        return 1.0;
    const double w = 1.0 + x;
    if (w == 0.0)
        return 0.0;
    return std::exp(q * std::log1p(x));
}

// Per-repetition growth factor 1 + p*x of the sure option of magnitude p*x.
inline double time_average_factor_sure(Probability p, double x) {
    const double f = 1.0 + p.value() * x;
    if (f < 0.0)
        throw std::domain_error("time_average_factor_sure: requires 1 + p*x >= 0");
    return f;
}

// Understated sure-equivalent change of a risky gain: (1+x)^p - 1, the
// concave gain branch. Identical to p * deformed_log(p, 1+x).
inline double meiosis_gain(Probability p, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("meiosis_gain: requires x >= 0");
    return std::expm1(p.value() * std::log1p(x));
}

// Overstated risky-equivalent change of a sure loss: e_p^(rho*x) - 1, the
// convex loss branch. rho > 1 deepens the curve so it dips below the line x
// near the origin (risk seeking for small losses).
inline double hyperbole_loss(Probability p, double x, double rho = kDefaultRho) {
    if (!(x >= -1.0 && x < 0.0))
        throw std::domain_error("hyperbole_loss: requires -1 <= x < 0");
    if (!(rho >= 1.0))
        throw std::domain_error("hyperbole_loss: requires rho >= 1");
    const double q = p.value();
    if (q == 0.0)
        return std::expm1(rho * x);
    const double w = 1.0 + q * rho * x;
    if (w < 0.0)
        throw std::domain_error("hyperbole_loss: requires 1 + p*rho*x >= 0");
    if (w == 0.0)
        return -1.0;
    return std::expm1(std::log1p(q * rho * x) / q);
}

// S-shaped value curve: concave meiosis branch for gains, convex hyperbole
// branch for losses, continuous at 0 with value 0.
inline double s_curve(Probability p, double x, double rho = kDefaultRho) {
    if (x >= 0.0)
        return meiosis_gain(p, x);
    return hyperbole_loss(p, x, rho);
}

// A paired choice between a sure change and a risky change of equal
// ensemble average: win/lose M with probability p versus win/lose M*p
// for sure, against initial wealth W0.
struct GambleSpec {
    Domain domain;
    double stake;           // M
    double initial_wealth;  // W0
    Probability p;
    double rho;             // loss-domain convexification rate

    GambleSpec(Domain domain_, double stake_, double initial_wealth_, Probability p_,
               double rho_ = kDefaultRho)
        : domain(domain_), stake(stake_), initial_wealth(initial_wealth_), p(p_), rho(rho_) {
        if (!(initial_wealth > 0.0))
            throw std::domain_error("GambleSpec: initial wealth W0 must be positive");
        if (!(rho >= 1.0))
            throw std::domain_error("GambleSpec: rho must be >= 1");
        if (domain == Domain::Gain) {
            if (!(stake >= 0.0))
                throw std::domain_error("GambleSpec: gain stake M must be nonnegative");
        } else {
            if (!(stake > 0.0))
                throw std::domain_error("GambleSpec: loss stake M must be positive");
            if (!(stake <= initial_wealth))
                throw std::domain_error(
                    "GambleSpec: loss stake M must not exceed initial wealth (x >= -1)");
            if (1.0 + p.value() * rho * hypothetical_change() < 0.0)
                throw std::domain_error("GambleSpec: requires 1 + p*rho*x >= 0");
        }
    }

    // Relative wealth change of the risky outcome: M/W0 for gains,
    // -M/W0 for losses.
    double hypothetical_change() const {
        const double magnitude = stake / initial_wealth;
        return domain == Domain::Gain ? magnitude : -magnitude;
    }
};

// Outcome of one paired comparison. sure_change and risky_change are the
// next-moment-equivalent relative changes entering the max rule; which side
// carries the rhetorical transform depends on the domain (meiosis
// understates the risky gain, hyperbole overstates the sure loss).
struct Decision {
    Choice chosen;
    double sure_change;
    double risky_change;
};

namespace detail {

inline Choice pick_larger(double sure, double risky) {
    if (sure > risky + kTieTolerance)
        return Choice::Sure;
    if (risky > sure + kTieTolerance)
        return Choice::Risky;
    return Choice::Indifferent;
}

}  // namespace detail

// Gain rule: the sure change p*x always weakly beats the understated risky
// equivalent (1+x)^p - 1; strictly so for x > 0 and p strictly inside (0,1).
inline Decision decide_gain(const GambleSpec& gamble) {
    if (gamble.domain != Domain::Gain)
        throw std::invalid_argument("decide_gain: gamble is not in the gain domain");
    const double x = gamble.hypothetical_change();
    const double sure = gamble.p.value() * x;
    const double risky = meiosis_gain(gamble.p, x);
    return {detail::pick_larger(sure, risky), sure, risky};
}

// Loss rule: the sure loss, overstated through the hyperbole, is compared
// against the risky loss x. Small losses favor the risky side (risk
// seeking); big losses favor the sure side (ruin aversion).
inline Decision decide_loss(const GambleSpec& gamble) {
    if (gamble.domain != Domain::Loss)
        throw std::invalid_argument("decide_loss: gamble is not in the loss domain");
    const double x = gamble.hypothetical_change();
    const double sure = hyperbole_loss(gamble.p, x, gamble.rho);
    return {detail::pick_larger(sure, x), sure, x};
}

inline Decision decide(const GambleSpec& gamble) {
    return gamble.domain == Domain::Gain ? decide_gain(gamble) : decide_loss(gamble);
}

// Unique x* in (-1, 0) where the rho-deepened hyperbole re-crosses the line
// x; the risky loss is preferred on (x*, 0), the sure loss below x*.
// No crossover exists at rho = 1 (tangency only) or when p*rho >= 1 (the
// hyperbole hits the ruin boundary before re-crossing).
inline std::optional<double> risk_seeking_crossover(Probability p, double rho,
                                                    double tol = 1e-10) {
    const double q = p.value();
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("risk_seeking_crossover: p must lie strictly inside (0,1)");
    if (!(rho >= 1.0))
        throw std::domain_error("risk_seeking_crossover: rho must be >= 1");
    if (rho == 1.0 || q * rho >= 1.0)
        return std::nullopt;
    const auto gap = [&](double x) { return hyperbole_loss(p, x, rho) - x; };
    const double lo = -1.0 + 1e-9;
    const double hi = -1e-9;
    if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0))
        return std::nullopt;
    return bisect(gap, lo, hi, tol);
}

}  // namespace ergo

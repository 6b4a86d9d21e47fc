#pragma once

#include <cmath>
#include <stdexcept>

namespace ergo {

// A probability that doubles as the deformation index of the generalized
// log/exp pair below. Values outside [0,1] are rejected at construction.
class Probability {
public:
    explicit constexpr Probability(double value) : v_(value) {
        if (!(value >= 0.0 && value <= 1.0))
            throw std::domain_error("Probability: value must lie in [0,1]");
    }

    constexpr double value() const noexcept { return v_; }

private:
    double v_;
};

// Deformed logarithm (y^p - 1)/p, continued with its analytic limit ln(y)
// at p = 0 so parameter sweeps stay gap-free. Strictly increasing in y.
inline double deformed_log(Probability p, double y) {
    if (!(y > 0.0))
        throw std::domain_error("deformed_log: argument must be positive");
    const double q = p.value();
    if (q == 0.0)
        return std::log(y);
    // expm1 keeps accuracy near the p -> 0 limit and around y = 1.
    return std::expm1(q * std::log(y)) / q;
}

// Deformed exponential (1 + p z)^(1/p), continued as exp(z) at p = 0.
// The inverse of deformed_log at equal index. The argument boundary
// 1 + p z = 0 maps to exactly 0: total ruin is a zero wealth factor.
inline double deformed_exp(Probability p, double z) {
    const double q = p.value();
    if (q == 0.0)
        return std::exp(z);
    const double w = 1.0 + q * z;
    if (w < 0.0)
        throw std::domain_error("deformed_exp: requires 1 + p*z >= 0");
    if (w == 0.0)
        return 0.0;
    return std::exp(std::log1p(q * z) / q);
}

}  // namespace ergo

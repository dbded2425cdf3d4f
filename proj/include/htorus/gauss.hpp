// Quadratic Gauss sums S(mu, r) = sum_{l<r} e^{2 pi i l^2 mu / r} and the
// multiplicative identity S(mu q, r) S(mu r, q) = S(mu, rq) for coprime r, q.
// Each phase is reduced to an exact rational residue before exponentiation,
// which keeps residuals near machine epsilon for r up to ~10^4.
#pragma once

#include <cmath>
#include <stdexcept>

#include "htorus/modarith.hpp"
#include "htorus/util.hpp"

namespace htorus {

inline cplx gauss_sum(long long mu, long long r) {
    if (r < 1) throw std::invalid_argument("gauss_sum: r must be positive");
    long long mu_mod = mu % r;
    if (mu_mod < 0) mu_mod += r;
    cplx acc = 0.0;
    for (long long l = 0; l < r; ++l) {
        const long long ph = ((l * l) % r) * mu_mod % r;
        acc += unit_phase(ph, r);
    }
    return acc;
}

// | S(mu q, r) S(mu r, q) - S(mu, rq) |
inline double check_multiplicativity(long long mu, const CoprimePair& p) {
    const cplx lhs = gauss_sum(mu * p.q(), p.r()) * gauss_sum(mu * p.r(), p.q());
    const cplx rhs = gauss_sum(mu, p.rq());
    return std::abs(lhs - rhs);
}

}  // namespace htorus

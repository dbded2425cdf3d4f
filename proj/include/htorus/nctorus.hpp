// Finite-dimensional representations of the rational noncommutative torus
// A_{q/r}: clock/shift construction with twist scalars, relation residuals,
// and the equivalence test through the scalars of U^r and V^r.
//
// The algebra also carries a smooth structure (the coefficient functional
// a -> a_00 and the two grading derivations scaling u^n v^m by in and im);
// nothing downstream consumes it, so it is not modelled here.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "htorus/linalg.hpp"
#include "htorus/modarith.hpp"
#include "htorus/util.hpp"

namespace htorus {

// U, V unitary r x r with V U = e^{2 pi i q/r} U V, U^r = a 1, V^r = b 1.
struct TorusRep {
    CoprimePair pair;
    CMat U, V;
    cplx a, b;
};

// Clock U = s diag(1, w^q, ..., w^{(r-1)q}) with w = e^{2 pi i / r}; the shift
// V sends e_j to t e_{(j-1) mod r}, which is the orientation that pairs with
// the clock spacing w^q to give V U = e^{2 pi i q/r} U V.
inline TorusRep clock_shift_rep(const CoprimePair& p, cplx s = 1.0, cplx t = 1.0) {
    const long long r = p.r(), q = p.q();
    CMat U(r, r), V(r, r);
    for (long long j = 0; j < r; ++j) {
        U(j, j) = s * unit_phase(j * q, r);
        V((j - 1 + r) % r, j) = t;
    }
    return TorusRep{p, std::move(U), std::move(V), unit_pow(s, r), unit_pow(t, r)};
}

inline std::vector<NamedResidual> verify_rep(const TorusRep& rep) {
    const std::size_t r = rep.U.rows();
    const CMat I = CMat::identity(r);
    const cplx phase = unit_phase(rep.pair.q(), rep.pair.r());
    std::vector<NamedResidual> out;
    out.push_back({"unitarity_u", max_abs(sub(matmul(adjoint(rep.U), rep.U), I))});
    out.push_back({"unitarity_v", max_abs(sub(matmul(adjoint(rep.V), rep.V), I))});
    out.push_back({"commutation_phase",
                   max_abs(sub(matmul(rep.V, rep.U), scaled(matmul(rep.U, rep.V), phase)))});
    out.push_back({"scalar_u_power", max_abs(sub(unitary_power(rep.U, rep.pair.r()), scaled(I, rep.a)))});
    out.push_back({"scalar_v_power", max_abs(sub(unitary_power(rep.V, rep.pair.r()), scaled(I, rep.b)))});
    return out;
}

inline bool rep_valid(const TorusRep& rep, double tol) {
    return max_residual(verify_rep(rep)) <= tol;
}

// The scalars (a, b) of U^r, V^r classify irreducibles of fixed theta.
inline bool equivalent(const TorusRep& r1, const TorusRep& r2, double tol) {
    if (!(r1.pair == r2.pair)) throw std::invalid_argument("equivalent: pair mismatch");
    return std::abs(r1.a - r2.a) <= tol && std::abs(r1.b - r2.b) <= tol;
}

// theta -> 1/theta, i.e. (r, q) -> (q, r).
inline CoprimePair dual_pair(const CoprimePair& p) { return p.dual(); }

}  // namespace htorus

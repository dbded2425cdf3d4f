// Number operator Delta = A+ A on sections through the atom calculus.
// A = d/dzbar (the connection form has no dzbar part), and its formal adjoint
// in the h-weighted inner product is A+ = -d/dz + alpha zbar, giving
// [A, A+] = alpha identically on atoms. Applying A+ n times to the q
// holomorphic sections produces the n-th eigenspace basis: Delta acts there
// as n alpha, the dimension stays q, and the dual-step operators preserve
// each level.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "htorus/bundle.hpp"
#include "htorus/matsushima.hpp"
#include "htorus/section.hpp"

namespace htorus {

inline SectionExpr annihilate(const BundleData& bd, const SectionExpr& s) {
    (void)bd;
    return s.dzbar().simplified();
}

inline SectionExpr create(const BundleData& bd, const SectionExpr& s) {
    return (s.dz().scaled(-1.0) + s.mul_zbar().scaled(bd.alpha())).simplified();
}

// [A, A+] = c with c = alpha = theta pi / Im(tau).
inline double commutator_constant(const BundleData& bd) { return bd.alpha(); }

struct LandauLevel {
    int n = 0;
    std::vector<SectionExpr> basis;  // A+^n applied to the holomorphic basis
    CMat gram;
    double eigen_residual = 0.0;  // coefficient-level |Delta phi - n c phi| / scale
};

inline LandauLevel landau_level(const BundleData& bd, const VectorThetaBasis& holo, int n,
                                std::size_t grid_m = 64) {
    if (n < 0 || n > 6) throw std::invalid_argument("landau_level: need 0 <= n <= 6");
    LandauLevel lvl;
    lvl.n = n;
    lvl.basis = holo.sections;
    for (int i = 0; i < n; ++i)
        for (SectionExpr& s : lvl.basis) s = create(bd, s);

    const double c = commutator_constant(bd);
    for (const SectionExpr& s : lvl.basis) {
        const SectionExpr delta = create(bd, annihilate(bd, s));
        lvl.eigen_residual = std::max(
            lvl.eigen_residual, atom_identity_residual(delta, s.scaled(static_cast<double>(n) * c)));
    }

    const QuadratureGrid grid(bd, grid_m);
    std::vector<std::vector<cplx>> vals;
    for (const SectionExpr& s : lvl.basis) vals.push_back(grid.evaluate(s));
    const std::size_t q = lvl.basis.size();
    lvl.gram = CMat(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) lvl.gram(i, j) = grid.inner(vals[i], vals[j]);

    if (gram_rank(lvl.gram, 1e-6) != q)
        throw std::runtime_error("landau_level: eigenspace basis is rank deficient");
    if (lvl.eigen_residual > 1e-8)
        throw std::runtime_error("landau_level: eigenvalue relation failed");
    return lvl;
}

// Worst relative out-of-span component of u^ and v^ applied to the level basis.
inline double level_preservation(const BundleData& bd, const LandauLevel& lvl,
                                 std::size_t grid_m = 32) {
    const QuadratureGrid grid(bd, grid_m);
    const std::size_t q = lvl.basis.size();
    std::vector<std::vector<cplx>> vals;
    for (const SectionExpr& s : lvl.basis) vals.push_back(grid.evaluate(s));
    CMat gram(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) gram(i, j) = grid.inner(vals[i], vals[j]);

    double worst = 0.0;
    for (const SectionExpr& s : lvl.basis) {
        for (const SectionExpr& mapped : {hat_u(bd, s), hat_v(bd, s)}) {
            const std::vector<cplx> ov = grid.evaluate(mapped);
            const double onorm = grid.norm(ov);
            if (onorm == 0.0) continue;
            std::vector<cplx> rhs(q);
            for (std::size_t j = 0; j < q; ++j) rhs[j] = grid.inner(vals[j], ov);
            const std::vector<cplx> coef = solve(gram, rhs);
            std::vector<cplx> diff = ov;
            for (std::size_t j = 0; j < q; ++j)
                for (std::size_t t = 0; t < diff.size(); ++t) diff[t] -= coef[j] * vals[j][t];
            worst = std::max(worst, grid.norm(diff) / onorm);
        }
    }
    return worst;
}

}  // namespace htorus

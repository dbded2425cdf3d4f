// The rank-r degree-q holomorphic bundle over C/<1, tau> built from a torus
// representation, in computable form:
//
//   multiplier   J_g(z) = e^{alpha(z gbar + |g|^2/2)} e^{i pi theta n m} U^{-n} V^{-m},
//                g = n + tau m,  alpha = theta pi / Im(tau),
//   sections     s(z+1)   = e^{alpha(z + 1/2)}          U* s(z)
//                s(z+tau) = e^{alpha(z taubar + |tau|^2/2)} V* s(z),
//   metric       h(z) = e^{-alpha |z|^2}, pairing antilinear in the first slot,
//   connection   d - alpha zbar dz, so Q = i(dx - alpha zbar),
//                P = i(dy - alpha tau zbar) and [Q, P] = 2 pi i theta.
//
// The dual-step operators (translations by 1/theta and tau/theta)
//   (u^ s)(z) = e^{alpha(z/theta    - |1/theta|^2/2)}   s(z - 1/theta)
//   (v^ s)(z) = e^{alpha(taubar z/theta - |tau/theta|^2/2)} s(z - tau/theta)
// compose with u^(v^ s) = e^{2 pi i / theta} v^(u^ s); read as a right action
// this is the A_{1/theta} relation. The unit parallel transports
//   (u~ s)(z) = e^{alpha(zbar - 1/2)} s(z - 1)
//   (v~ s)(z) = e^{alpha(tau zbar - |tau|^2/2)} s(z - tau)
// satisfy v~ u~ = e^{2 pi i theta} u~ v~ as a left action and commute with
// u^, v^ exactly on atoms.
//
// Residuals of identities whose raw values grow like e^{alpha |z|^2 /2} are
// reported relative to max(1, scale of either side); at double precision the
// absolute versions are unattainable for large lattice arguments.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "htorus/linalg.hpp"
#include "htorus/nctorus.hpp"
#include "htorus/section.hpp"
#include "htorus/thetafun.hpp"
#include "htorus/util.hpp"

namespace htorus {

struct LatticePoint {
    long long n = 0;
    long long m = 0;  // gamma = n + tau m
};

class BundleData {
  public:
    BundleData(TorusRep rep, ModuliPoint m) : rep_(std::move(rep)), m_(m) {
        if (!rep_valid(rep_, 1e-10))
            throw std::invalid_argument("BundleData: representation fails relation residuals");
        alpha_ = rep_.pair.theta() * pi / m_.tau.imag();
    }

    const TorusRep& rep() const { return rep_; }
    const CoprimePair& pair() const { return rep_.pair; }
    cplx tau() const { return m_.tau; }
    const ModuliPoint& moduli() const { return m_; }
    double theta() const { return rep_.pair.theta(); }
    double alpha() const { return alpha_; }

    long long rank() const { return rep_.pair.r(); }    // c0
    long long degree() const { return rep_.pair.q(); }  // c1

  private:
    TorusRep rep_;
    ModuliPoint m_;
    double alpha_;
};

inline CMat theta_multiplier(const BundleData& bd, const LatticePoint& g, cplx z) {
    const cplx gamma = cplx(static_cast<double>(g.n), 0.0) + bd.tau() * static_cast<double>(g.m);
    const cplx sc = std::exp(bd.alpha() * (z * std::conj(gamma) + 0.5 * std::norm(gamma))) *
                    unit_phase(bd.pair().q() * g.n * g.m, 2 * bd.pair().r());
    return scaled(matmul(unitary_power(bd.rep().U, -g.n), unitary_power(bd.rep().V, -g.m)), sc);
}

// || J_{g+d}(z) - J_g(z+d) J_d(z) || / max(1, ||J_{g+d}(z)||)
inline double cocycle_residual(const BundleData& bd, const LatticePoint& g, const LatticePoint& d,
                               cplx z) {
    const LatticePoint gd{g.n + d.n, g.m + d.m};
    const cplx delta = cplx(static_cast<double>(d.n), 0.0) + bd.tau() * static_cast<double>(d.m);
    const CMat lhs = theta_multiplier(bd, gd, z);
    const CMat rhs = matmul(theta_multiplier(bd, g, z + delta), theta_multiplier(bd, d, z));
    return max_abs(sub(lhs, rhs)) / std::max(1.0, max_abs(lhs));
}

// Residuals of the two section boundary conditions at z, each relative to
// max(1, ||lhs||, ||rhs||).
inline std::pair<double, double> boundary_residual(const BundleData& bd, const SectionExpr& s,
                                                   cplx z) {
    if (s.components() != static_cast<std::size_t>(bd.rank()))
        throw std::invalid_argument("boundary_residual: component count mismatch");
    const double al = bd.alpha();
    const cplx tau = bd.tau();
    const CMat Ud = adjoint(bd.rep().U);
    const CMat Vd = adjoint(bd.rep().V);
    const std::vector<cplx> v0 = s.eval(z);

    auto apply = [&](const CMat& m, const std::vector<cplx>& v, cplx f) {
        std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) out[i] += m(i, j) * v[j];
            out[i] *= f;
        }
        return out;
    };
    auto rel = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        double num = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]);
        return std::sqrt(num) / std::max({1.0, norm2(a), norm2(b)});
    };

    const std::vector<cplx> lhs1 = s.eval(z + 1.0);
    const std::vector<cplx> rhs1 = apply(Ud, v0, std::exp(al * (z + 0.5)));
    const std::vector<cplx> lhst = s.eval(z + tau);
    const std::vector<cplx> rhst =
        apply(Vd, v0, std::exp(al * (z * std::conj(tau) + 0.5 * std::norm(tau))));
    return {rel(lhs1, rhs1), rel(lhst, rhst)};
}

// <s(z), s'(z)> h(z), antilinear in the first slot.
inline cplx hermitian_pair(const BundleData& bd, const SectionExpr& s, const SectionExpr& sp,
                           cplx z) {
    if (s.components() != sp.components())
        throw std::invalid_argument("hermitian_pair: component mismatch");
    const std::vector<cplx> a = s.eval(z);
    const std::vector<cplx> b = sp.eval(z);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc * std::exp(-bd.alpha() * std::norm(z));
}

// Equispaced M x M quadrature of hermitian_pair over {x + tau y : x, y in [0,1)},
// cell measure Im(tau)/M^2; summation order fixed row-major in (a, b).
inline cplx l2_inner(const BundleData& bd, const SectionExpr& s, const SectionExpr& sp,
                     std::size_t grid_m) {
    if (grid_m < 8) throw std::invalid_argument("l2_inner: grid must be at least 8");
    const cplx tau = bd.tau();
    cplx acc = 0.0;
    for (std::size_t a = 0; a < grid_m; ++a)
        for (std::size_t b = 0; b < grid_m; ++b) {
            const cplx z = cplx(static_cast<double>(a) / grid_m, 0.0) +
                           tau * (static_cast<double>(b) / grid_m);
            acc += hermitian_pair(bd, s, sp, z);
        }
    return acc * (tau.imag() / static_cast<double>(grid_m * grid_m));
}

inline double l2_norm(const BundleData& bd, const SectionExpr& s, std::size_t grid_m) {
    return std::sqrt(std::abs(l2_inner(bd, s, s, grid_m)));
}

// Q = i nabla_{d/dx} with dx = dz + dzbar and connection term -alpha zbar.
inline SectionExpr apply_Q(const BundleData& bd, const SectionExpr& s) {
    return (s.dz() + s.dzbar() + s.mul_zbar().scaled(-bd.alpha())).scaled(cplx(0.0, 1.0)).simplified();
}

// P = i nabla_{d/dy} with dy = tau dz + taubar dzbar and connection term
// -alpha tau zbar; the tau (not taubar) coefficient is what makes
// [Q, P] = 2 pi i theta hold identically on atoms.
inline SectionExpr apply_P(const BundleData& bd, const SectionExpr& s) {
    const cplx tau = bd.tau();
    return (s.dz().scaled(tau) + s.dzbar().scaled(std::conj(tau)) +
            s.mul_zbar().scaled(-bd.alpha() * tau))
        .scaled(cplx(0.0, 1.0))
        .simplified();
}

inline SectionExpr hat_u(const BundleData& bd, const SectionExpr& s) {
    const double al = bd.alpha();
    const double w = 1.0 / bd.theta();
    return s.translate(w).mul_exp(al * w, 0.0).scaled(std::exp(-0.5 * al * w * w));
}

inline SectionExpr hat_v(const BundleData& bd, const SectionExpr& s) {
    const double al = bd.alpha();
    const cplx w = bd.tau() / bd.theta();
    return s.translate(w).mul_exp(al * std::conj(bd.tau()) / bd.theta(), 0.0)
        .scaled(std::exp(-0.5 * al * std::norm(w)));
}

inline SectionExpr check_u(const BundleData& bd, const SectionExpr& s) {
    const double al = bd.alpha();
    return s.translate(1.0).mul_exp(0.0, al).scaled(std::exp(-0.5 * al));
}

inline SectionExpr check_v(const BundleData& bd, const SectionExpr& s) {
    const double al = bd.alpha();
    const cplx tau = bd.tau();
    return s.translate(tau).mul_exp(0.0, al * tau).scaled(std::exp(-0.5 * al * std::norm(tau)));
}

inline SectionExpr intertwine(const CMat& u, const SectionExpr& s) {
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("intertwine: matrix not unitary");
    return s.apply_matrix(u);
}

// Pointwise relative deviation of s1 from s2 over the given sample points.
inline double section_deviation(const SectionExpr& s1, const SectionExpr& s2,
                                const std::vector<cplx>& pts) {
    double worst = 0.0;
    for (cplx z : pts) {
        const std::vector<cplx> a = s1.eval(z);
        const std::vector<cplx> b = s2.eval(z);
        double num = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]);
        worst = std::max(worst, std::sqrt(num) / std::max({1.0, norm2(a), norm2(b)}));
    }
    return worst;
}

// Coefficient-level residual of s1 = s2, relative to the larger coefficient
// scale. Exact coalescing first; atoms that survive are clustered with a key
// tolerance, since composing exponential factors in different orders can
// leave the same analytic exponent one ulp apart.
inline double atom_identity_residual(const SectionExpr& s1, const SectionExpr& s2) {
    const double scale = std::max({1.0, s1.max_coeff(), s2.max_coeff()});
    const SectionExpr diff = (s1 - s2).simplified();
    const std::vector<Atom>& rem = diff.atoms();
    std::vector<bool> used(rem.size(), false);
    double worst = 0.0;
    auto near = [](cplx a, cplx b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)); };
    for (std::size_t i = 0; i < rem.size(); ++i) {
        if (used[i]) continue;
        cplx acc = rem[i].c;
        for (std::size_t j = i + 1; j < rem.size(); ++j) {
            if (used[j] || rem[j].comp != rem[i].comp || rem[j].pow_zbar != rem[i].pow_zbar)
                continue;
            if (near(rem[i].mu, rem[j].mu) && near(rem[i].nu, rem[j].nu)) {
                acc += rem[j].c;
                used[j] = true;
            }
        }
        worst = std::max(worst, std::abs(acc));
    }
    return worst / scale;
}

}  // namespace htorus

// Holomorphic section basis of the rank-r degree-q bundle and the finite
// matrices of the dual-step operators on it.
//
// Construction: the boundary conditions say a section is a fixed point of the
// two commuting enforcement operators
//   (T1 s)(z)   = e^{alpha(z - 1/2)} U* s(z - 1),
//   (Ttau s)(z) = e^{alpha(z taubar - |tau|^2/2)} V* s(z - tau),
// so averaging a seed atom e^{rho z} e_{j0} over T1^n Ttau^m produces a
// section as a lattice sum of exponential atoms with Gaussian coefficients:
//   T1^n Ttau^m seed has mu = rho + alpha(n + m taubar) and coefficient
//   e^{alpha(-n^2/2 - m^2|tau|^2/2 - m n taubar) - rho(n + m tau)} (u*)^n (v*)^m e_{j0}.
// Seeds rho_b = b alpha (r/q) taubar, b = 0..q-1, form a ladder permuted by
// v^; the v^-eigenvector combinations s_m (eigenvalue nu^{1/q} e^{-2 pi i m r/q})
// are the returned basis. v^ is unitary on the weighted L^2 space, so the
// basis is orthogonal up to truncation, and u^ shifts m by one. At r = 1 this
// reproduces the k-level thetas in their delta-translate form.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "htorus/bundle.hpp"
#include "htorus/linalg.hpp"
#include "htorus/modarith.hpp"
#include "htorus/nctorus.hpp"
#include "htorus/section.hpp"
#include "htorus/thetafun.hpp"
#include "htorus/util.hpp"

namespace htorus {

struct VectorThetaBasis {
    CoprimePair pair;
    ModuliPoint m;
    std::vector<SectionExpr> sections;  // q sections, r components each
    long long trunc;                    // lattice box radius used by the averaging
};

// Quadrature grid over the fundamental domain with the metric weight folded in.
class QuadratureGrid {
  public:
    QuadratureGrid(const BundleData& bd, std::size_t grid_m)
        : m_(grid_m), comps_(static_cast<std::size_t>(bd.rank())) {
        if (grid_m < 8) throw std::invalid_argument("QuadratureGrid: grid must be at least 8");
        const cplx tau = bd.tau();
        const double cell = tau.imag() / static_cast<double>(grid_m * grid_m);
        pts_.reserve(grid_m * grid_m);
        w_.reserve(grid_m * grid_m);
        for (std::size_t a = 0; a < grid_m; ++a)
            for (std::size_t b = 0; b < grid_m; ++b) {
                const cplx z = cplx(static_cast<double>(a) / grid_m, 0.0) +
                               tau * (static_cast<double>(b) / grid_m);
                pts_.push_back(z);
                w_.push_back(std::exp(-bd.alpha() * std::norm(z)) * cell);
            }
    }

    std::size_t size() const { return pts_.size(); }
    std::size_t components() const { return comps_; }

    std::vector<cplx> evaluate(const SectionExpr& s) const {
        std::vector<cplx> out(pts_.size() * comps_);
        for (std::size_t p = 0; p < pts_.size(); ++p) {
            const std::vector<cplx> v = s.eval(pts_[p]);
            for (std::size_t c = 0; c < comps_; ++c) out[p * comps_ + c] = v[c];
        }
        return out;
    }

    cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) const {
        cplx acc = 0.0;
        for (std::size_t p = 0; p < pts_.size(); ++p) {
            cplx dot = 0.0;
            for (std::size_t c = 0; c < comps_; ++c)
                dot += std::conj(a[p * comps_ + c]) * b[p * comps_ + c];
            acc += w_[p] * dot;
        }
        return acc;
    }

    double norm(const std::vector<cplx>& a) const { return std::sqrt(std::abs(inner(a, a))); }

  private:
    std::size_t m_, comps_;
    std::vector<cplx> pts_;
    std::vector<double> w_;
};

namespace detail {

// max over the box {x + tau y : x in [x0,x1], y in [y0,y1]} of Re(mu z)
inline double max_re_on_box(cplx mu, cplx tau, double x0, double x1, double y0, double y1) {
    const double rx = mu.real();
    const double ry = (mu * tau).real();
    return std::max(x0 * rx, x1 * rx) + std::max(y0 * ry, y1 * ry);
}

// Average of T1^n Ttau^m over the lattice, applied to the seed e^{rho z} e_{j0}.
// Atoms are kept while their peak magnitude over the evaluation box (the
// fundamental domain widened by the full dual-step excursions, up to r periods)
// stays above eps.
inline SectionExpr averaged_seed(const BundleData& bd, cplx rho, std::size_t j0, double eps,
                                 long long* box_used = nullptr) {
    const long long r = bd.pair().r(), q = bd.pair().q();
    const cplx tau = bd.tau();
    const cplx tb = std::conj(tau);
    const double al = bd.alpha();
    const cplx s_tw = bd.rep().U(0, 0);              // clock twist s
    const cplx t_tw = bd.rep().V(r > 1 ? r - 1 : 0, 0);  // shift twist t
    const double x0 = -(static_cast<double>(r) + 1.25), x1 = 2.25;
    const double y0 = x0, y1 = x1;

    SectionExpr out(static_cast<std::size_t>(r));
    for (long long box = 4; box <= 80; ++box) {
        bool found = false;
        for (long long n = -box; n <= box; ++n)
            for (long long m = -box; m <= box; ++m) {
                if (box > 4 && std::max(std::llabs(n), std::llabs(m)) != box) continue;
                const double nn = static_cast<double>(n), mm = static_cast<double>(m);
                const cplx expo = al * (-0.5 * nn * nn - 0.5 * mm * mm * std::norm(tau)) -
                                  al * mm * nn * tb - rho * (nn + mm * tau);
                const cplx coef = std::exp(expo);
                const long long jj = ((static_cast<long long>(j0) + m) % r + r) % r;
                const cplx vec = unit_pow(std::conj(t_tw), m) * unit_pow(std::conj(s_tw), n) *
                                 unit_phase(-n * q * jj, r);
                const cplx mu = rho + al * (nn + mm * tb);
                const double wgt =
                    std::abs(coef) * std::exp(max_re_on_box(mu, tau, x0, x1, y0, y1));
                if (wgt >= eps) {
                    out.add_atom(static_cast<std::size_t>(jj), 0, mu, 0.0, coef * vec);
                    found = true;
                }
            }
        if (box > 4 && !found) {
            if (box_used) *box_used = box;
            break;
        }
    }
    return out;
}

}  // namespace detail

inline BundleData make_bundle(const CoprimePair& p, const ModuliPoint& m, cplx s = 1.0,
                              cplx t = 1.0) {
    return BundleData(clock_shift_rep(p, s, t), m);
}

// Gram of weighted inner products, each section evaluated on the grid once.
inline CMat weighted_gram(const BundleData& bd, const std::vector<SectionExpr>& secs,
                          std::size_t grid_m) {
    const QuadratureGrid grid(bd, grid_m);
    std::vector<std::vector<cplx>> vals;
    vals.reserve(secs.size());
    for (const SectionExpr& s : secs) vals.push_back(grid.evaluate(s));
    CMat g(secs.size(), secs.size());
    for (std::size_t i = 0; i < secs.size(); ++i)
        for (std::size_t j = 0; j < secs.size(); ++j) g(i, j) = grid.inner(vals[i], vals[j]);
    return g;
}

// Rectangular matrix of inner products between two section lists.
inline CMat weighted_cross_gram(const BundleData& bd, const std::vector<SectionExpr>& rows,
                                const std::vector<SectionExpr>& cols, std::size_t grid_m) {
    const QuadratureGrid grid(bd, grid_m);
    std::vector<std::vector<cplx>> rv, cv;
    for (const SectionExpr& s : rows) rv.push_back(grid.evaluate(s));
    for (const SectionExpr& s : cols) cv.push_back(grid.evaluate(s));
    CMat g(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) g(i, j) = grid.inner(rv[i], cv[j]);
    return g;
}

// Build the q-section basis for the clock/shift representation with the given
// twists. Sections are normalized to unit weighted-L^2 norm and checked
// against the boundary conditions at 20 sample points; failure to reach tol
// after tightening the atom cutoff signals a convention fault and throws.
inline VectorThetaBasis build_vector_thetas(const CoprimePair& p, const ModuliPoint& mod,
                                            double tol, cplx s_tw = 1.0, cplx t_tw = 1.0,
                                            std::size_t grid_m = 64) {
    const long long r = p.r(), q = p.q();
    const BundleData bd = make_bundle(p, mod, s_tw, t_tw);
    const cplx tau = mod.tau;
    const cplx tb = std::conj(tau);
    const double al = bd.alpha();
    const double step = static_cast<double>(r) / static_cast<double>(q);

    double eps = 1e-13;
    for (int attempt = 0; attempt < 3; ++attempt, eps *= 1e-3) {
        std::vector<SectionExpr> ladder;
        std::vector<cplx> w;
        long long box = 0;
        for (long long b = 0; b < q; ++b) {
            const cplx rho = static_cast<double>(b) * al * step * tb;
            long long used = 0;
            ladder.push_back(detail::averaged_seed(bd, rho, 0, eps, &used));
            box = std::max(box, used);
            w.push_back(std::exp(-rho * step * tau - 0.5 * al * std::norm(tau * step)));
        }
        // wrap of the v^-ladder around the torus: W = nu exactly
        cplx W = w[q - 1] * std::exp(0.5 * al * static_cast<double>(r * r) * std::norm(tau)) *
                 bd.rep().b;
        for (long long b = 0; b + 1 < q; ++b) W *= w[b];
        const cplx lam0 = std::exp(std::log(W) / static_cast<double>(q));

        std::vector<SectionExpr> basis;
        for (long long m = 0; m < q; ++m) {
            const cplx lam = lam0 * unit_phase(-m * r, q);
            SectionExpr sm = ladder[0];
            cplx pw = 1.0, lam_pow = 1.0;
            for (long long b = 1; b < q; ++b) {
                pw *= w[b - 1];
                lam_pow *= lam;
                sm = sm + ladder[b].scaled(pw / lam_pow);
            }
            basis.push_back(sm.simplified());
        }

        const QuadratureGrid grid(bd, grid_m);
        for (SectionExpr& s : basis) {
            const double nr = grid.norm(grid.evaluate(s));
            if (!(nr > 0.0)) throw std::runtime_error("build_vector_thetas: degenerate section");
            s = s.scaled(1.0 / nr);
        }

        Rng rng(427531);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const cplx z = rng.in_fundamental_domain(tau);
            for (const SectionExpr& s : basis) {
                const auto [r1, rt] = boundary_residual(bd, s, z);
                worst = std::max({worst, r1, rt});
            }
        }
        if (worst <= tol) return VectorThetaBasis{p, mod, std::move(basis), box};
    }
    throw std::runtime_error("build_vector_thetas: boundary residual did not reach tolerance");
}

// max over samples and sections of ||dzbar s||; vanishes termwise for the
// constructed bases (atoms have nu = 0, p = 0).
inline double holomorphy_residual(const VectorThetaBasis& basis, const std::vector<cplx>& pts) {
    double worst = 0.0;
    for (const SectionExpr& s : basis.sections) {
        const SectionExpr ds = s.dzbar().simplified();
        for (cplx z : pts) worst = std::max(worst, norm2(ds.eval(z)));
    }
    return worst;
}

struct HatMatrices {
    CMat U, V;                 // row convention: op s_m = sum_j M[m][j] s_j
    double expansion_residual;  // worst relative L^2 misfit of the expansions
};

// Least-squares expansion of u^ s_m and v^ s_m in the given basis on a sampled
// grid with the h-weighted inner product. The row-index convention makes the
// matrices those of the right action, for which V^ U^ = e^{2 pi i r / q} U^ V^.
inline HatMatrices hat_matrices(const BundleData& bd, const std::vector<SectionExpr>& basis,
                                std::size_t grid_m = 32) {
    const std::size_t n = basis.size();
    if (n == 0) throw std::invalid_argument("hat_matrices: empty basis");
    const QuadratureGrid grid(bd, grid_m);
    std::vector<std::vector<cplx>> vals;
    vals.reserve(n);
    for (const SectionExpr& s : basis) vals.push_back(grid.evaluate(s));

    CMat gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram(i, j) = grid.inner(vals[i], vals[j]);
    if (gram_rank(gram, 1e-6) != n)
        throw std::runtime_error("hat_matrices: basis Gram is rank deficient");

    double worst = 0.0;
    auto matrix_of = [&](SectionExpr (*op)(const BundleData&, const SectionExpr&)) {
        CMat m(n, n);
        for (std::size_t row = 0; row < n; ++row) {
            const std::vector<cplx> ov = grid.evaluate(op(bd, basis[row]));
            std::vector<cplx> rhs(n);
            for (std::size_t j = 0; j < n; ++j) rhs[j] = grid.inner(vals[j], ov);
            const std::vector<cplx> coef = solve(gram, rhs);
            std::vector<cplx> recon(ov.size(), cplx(0.0, 0.0));
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t t = 0; t < ov.size(); ++t) recon[t] += coef[j] * vals[j][t];
            std::vector<cplx> diff(ov.size());
            for (std::size_t t = 0; t < ov.size(); ++t) diff[t] = ov[t] - recon[t];
            worst = std::max(worst, grid.norm(diff) / std::max(grid.norm(ov), 1e-300));
            for (std::size_t j = 0; j < n; ++j) m(row, j) = coef[j];
        }
        return m;
    };

    HatMatrices out{matrix_of(&hat_u), matrix_of(&hat_v), 0.0};
    out.expansion_residual = worst;
    if (worst > 1e-6)
        throw std::runtime_error("hat_matrices: expansion residual exceeds tolerance");
    return out;
}

// Gram-Schmidt in section space against the weighted L^2 inner product.
inline std::vector<SectionExpr> orthonormalize(const BundleData& bd,
                                               const std::vector<SectionExpr>& secs,
                                               std::size_t grid_m = 32) {
    const QuadratureGrid grid(bd, grid_m);
    std::vector<SectionExpr> out;
    std::vector<std::vector<cplx>> vals;
    for (const SectionExpr& s : secs) {
        SectionExpr cur = s;
        std::vector<cplx> cv = grid.evaluate(cur);
        for (std::size_t j = 0; j < out.size(); ++j) {
            const cplx proj = grid.inner(vals[j], cv);
            cur = cur + out[j].scaled(-proj);
            cv = grid.evaluate(cur);
        }
        const double nr = grid.norm(cv);
        if (!(nr > 0.0)) throw std::runtime_error("orthonormalize: dependent input");
        cur = cur.scaled(1.0 / nr);
        vals.push_back(grid.evaluate(cur));
        out.push_back(std::move(cur));
    }
    return out;
}

// The index bijection (m, l) <-> k with k = q l + r m (mod rq); entry [m*r + l]
// holds k. This is the basis map of the section-space tensor isomorphism.
inline std::vector<long long> section_space_iso(const CoprimePair& p) {
    std::vector<long long> out(static_cast<std::size_t>(p.rq()));
    for (long long m = 0; m < p.q(); ++m)
        for (long long l = 0; l < p.r(); ++l)
            out[static_cast<std::size_t>(m * p.r() + l)] = crt_join(p, l, m);
    return out;
}

struct FmnStar {
    CoprimePair left, right, star;
    long long h0_left, h0_right, h0_star;
};

// (r,q) star (q,r) = (1, rq) with section counts q * r = rq.
inline FmnStar fmn_star(const CoprimePair& p) {
    FmnStar out{p, p.dual(), CoprimePair(1, p.rq()), p.q(), p.r(), p.rq()};
    if (out.h0_left * out.h0_right != out.h0_star)
        throw std::logic_error("fmn_star: section count mismatch");
    return out;
}

}  // namespace htorus

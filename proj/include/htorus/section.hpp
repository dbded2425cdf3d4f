// Closed-form sections as finite atom sums: component j accumulates
//   c * zbar^p * e^{mu z + nu zbar}.
// The family is closed under d/dz, d/dzbar, multiplication by zbar, by
// e^{c z + d zbar}, translation z -> z - w, and componentwise matrix action,
// all of which are exact on the coefficients. Coalescing merges atoms whose
// (component, p, mu, nu) keys agree bitwise, so operator identities can be
// certified at the coefficient level.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "htorus/linalg.hpp"
#include "htorus/util.hpp"

namespace htorus {

struct Atom {
    std::size_t comp = 0;
    int pow_zbar = 0;
    cplx mu{0.0, 0.0};
    cplx nu{0.0, 0.0};
    cplx c{0.0, 0.0};
};

class SectionExpr {
  public:
    explicit SectionExpr(std::size_t components) : comps_(components) {
        if (components == 0) throw std::invalid_argument("SectionExpr: need >= 1 component");
    }

    std::size_t components() const { return comps_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    void add_atom(std::size_t comp, int p, cplx mu, cplx nu, cplx c) {
        if (comp >= comps_) throw std::out_of_range("SectionExpr: component out of range");
        if (p < 0) throw std::invalid_argument("SectionExpr: negative zbar power");
        atoms_.push_back({comp, p, mu, nu, c});
    }

    std::vector<cplx> eval(cplx z) const {
        std::vector<cplx> out(comps_, cplx(0.0, 0.0));
        const cplx zb = std::conj(z);
        for (const Atom& a : atoms_) {
            cplx v = a.c * std::exp(a.mu * z + a.nu * zb);
            for (int i = 0; i < a.pow_zbar; ++i) v *= zb;
            out[a.comp] += v;
        }
        return out;
    }

    SectionExpr dz() const {
        SectionExpr r(comps_);
        r.atoms_.reserve(atoms_.size());
        for (const Atom& a : atoms_) r.atoms_.push_back({a.comp, a.pow_zbar, a.mu, a.nu, a.c * a.mu});
        return r;
    }

    SectionExpr dzbar() const {
        SectionExpr r(comps_);
        for (const Atom& a : atoms_) {
            if (a.pow_zbar > 0)
                r.atoms_.push_back({a.comp, a.pow_zbar - 1, a.mu, a.nu,
                                    a.c * static_cast<double>(a.pow_zbar)});
            if (a.nu != cplx(0.0, 0.0))
                r.atoms_.push_back({a.comp, a.pow_zbar, a.mu, a.nu, a.c * a.nu});
        }
        return r;
    }

    SectionExpr mul_zbar() const {
        SectionExpr r(comps_);
        r.atoms_.reserve(atoms_.size());
        for (const Atom& a : atoms_) r.atoms_.push_back({a.comp, a.pow_zbar + 1, a.mu, a.nu, a.c});
        return r;
    }

    // * e^{c z + d zbar}
    SectionExpr mul_exp(cplx c, cplx d) const {
        SectionExpr r(comps_);
        r.atoms_.reserve(atoms_.size());
        for (const Atom& a : atoms_) r.atoms_.push_back({a.comp, a.pow_zbar, a.mu + c, a.nu + d, a.c});
        return r;
    }

    // s(z) -> s(z - w); binomial expansion of (zbar - wbar)^p keeps atoms exact
    SectionExpr translate(cplx w) const {
        const cplx wb = std::conj(w);
        SectionExpr r(comps_);
        for (const Atom& a : atoms_) {
            const cplx base = a.c * std::exp(-a.mu * w - a.nu * wb);
            double binom = 1.0;
            std::vector<cplx> pows(a.pow_zbar + 1);
            pows[0] = 1.0;
            for (int i = 1; i <= a.pow_zbar; ++i) pows[i] = pows[i - 1] * (-wb);
            for (int k = 0; k <= a.pow_zbar; ++k) {
                r.atoms_.push_back({a.comp, k, a.mu, a.nu, base * binom * pows[a.pow_zbar - k]});
                binom = binom * static_cast<double>(a.pow_zbar - k) / static_cast<double>(k + 1);
            }
        }
        return r;
    }

    SectionExpr scaled(cplx f) const {
        SectionExpr r(comps_);
        r.atoms_.reserve(atoms_.size());
        for (const Atom& a : atoms_) r.atoms_.push_back({a.comp, a.pow_zbar, a.mu, a.nu, a.c * f});
        return r;
    }

    SectionExpr operator+(const SectionExpr& o) const {
        if (o.comps_ != comps_) throw std::invalid_argument("SectionExpr: component mismatch");
        SectionExpr r(comps_);
        r.atoms_ = atoms_;
        r.atoms_.insert(r.atoms_.end(), o.atoms_.begin(), o.atoms_.end());
        return r;
    }

    SectionExpr operator-(const SectionExpr& o) const { return *this + o.scaled(-1.0); }

    // componentwise matrix action (psi_M s)(z) = M s(z)
    SectionExpr apply_matrix(const CMat& m) const {
        if (m.rows() != comps_ || m.cols() != comps_)
            throw std::invalid_argument("apply_matrix: shape mismatch");
        SectionExpr r(comps_);
        for (const Atom& a : atoms_)
            for (std::size_t i = 0; i < comps_; ++i) {
                const cplx f = m(i, a.comp);
                if (f != cplx(0.0, 0.0))
                    r.atoms_.push_back({i, a.pow_zbar, a.mu, a.nu, a.c * f});
            }
        return r;
    }

    double max_coeff() const {
        double w = 0.0;
        for (const Atom& a : atoms_) w = std::max(w, std::abs(a.c));
        return w;
    }

    // Merge atoms with bitwise-equal keys; drop merged coefficients whose
    // magnitude falls below drop_rel times the largest one.
    SectionExpr simplified(double drop_rel = 0.0) const {
        std::vector<Atom> v = atoms_;
        auto key = [](const Atom& a) {
            return std::make_tuple(a.comp, a.pow_zbar, a.mu.real(), a.mu.imag(), a.nu.real(),
                                   a.nu.imag());
        };
        std::sort(v.begin(), v.end(), [&](const Atom& x, const Atom& y) { return key(x) < key(y); });
        SectionExpr r(comps_);
        std::size_t i = 0;
        while (i < v.size()) {
            Atom acc = v[i];
            std::size_t j = i + 1;
            while (j < v.size() && key(v[j]) == key(v[i])) {
                acc.c += v[j].c;
                ++j;
            }
            if (acc.c != cplx(0.0, 0.0)) r.atoms_.push_back(acc);
            i = j;
        }
        if (drop_rel > 0.0) {
            const double cut = drop_rel * r.max_coeff();
            std::vector<Atom> kept;
            for (const Atom& a : r.atoms_)
                if (std::abs(a.c) > cut) kept.push_back(a);
            r.atoms_ = std::move(kept);
        }
        return r;
    }

  private:
    std::size_t comps_;
    std::vector<Atom> atoms_;
};

inline double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace htorus

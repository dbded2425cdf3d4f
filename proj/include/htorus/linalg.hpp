// Dense complex matrix kernel. Deliberately minimal: products with a fixed
// accumulation order (results are bit-reproducible across runs), Kronecker
// products, permutation conjugation, unitarity tests and a pivoted-Cholesky
// Gram rank. Everything here acts on values and is safe to call concurrently.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "htorus/util.hpp"

namespace htorus {

class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

    bool all_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline CMat adjoint(const CMat& m) {
    CMat r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline CMat scaled(const CMat& m, cplx a) {
    CMat r = m;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= a;
    return r;
}

inline CMat add(const CMat& x, const CMat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("add: shape mismatch");
    CMat r = x;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) += y(i, j);
    return r;
}

inline CMat sub(const CMat& x, const CMat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("sub: shape mismatch");
    CMat r = x;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= y(i, j);
    return r;
}

inline double max_abs(const CMat& m) {
    double w = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, std::abs(m(i, j)));
    return w;
}

inline cplx trace(const CMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace: square required");
    cplx t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// Left-to-right accumulation over k, fixed for reproducibility.
inline CMat matmul(const CMat& x, const CMat& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    CMat r(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < x.cols(); ++k) acc += x(i, k) * y(k, j);
            r(i, j) = acc;
        }
    return r;
}

// (X (x) Y)[(i*Y.rows + k), (j*Y.cols + l)] = X[i,j] * Y[k,l]
inline CMat kron(const CMat& x, const CMat& y) {
    CMat r(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            for (std::size_t k = 0; k < y.rows(); ++k)
                for (std::size_t l = 0; l < y.cols(); ++l)
                    r(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
    return r;
}

// P M P^{-1} with (P_sigma)[sigma(i), i] = 1, computed by index relabeling.
inline CMat perm_conjugate(const std::vector<std::size_t>& sigma, const CMat& m) {
    if (m.rows() != m.cols() || sigma.size() != m.rows())
        throw std::invalid_argument("perm_conjugate: size mismatch");
    CMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(sigma[i], sigma[j]) = m(i, j);
    return r;
}

inline bool is_unitary(const CMat& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_unitary: square required");
    return max_abs(sub(matmul(adjoint(m), m), CMat::identity(m.rows()))) <= tol;
}

// M^n for unitary M; negative powers go through the adjoint.
inline CMat unitary_power(const CMat& m, long long n) {
    if (m.rows() != m.cols()) throw std::invalid_argument("unitary_power: square required");
    if (n < 0) return unitary_power(adjoint(m), -n);
    CMat acc = CMat::identity(m.rows());
    CMat base = m;
    while (n > 0) {
        if (n & 1) acc = matmul(acc, base);
        n >>= 1;
        if (n > 0) base = matmul(base, base);
    }
    return acc;
}

// Rank of a Hermitian PSD Gram matrix: pivoted Cholesky, counting pivots
// above tol * max(1, ||G||_max). Rejects visibly non-Hermitian input.
inline std::size_t gram_rank(const CMat& g, double tol) {
    if (g.rows() != g.cols()) throw std::invalid_argument("gram_rank: square required");
    const std::size_t n = g.rows();
    const double scale = std::max(1.0, max_abs(g));
    if (max_abs(sub(g, adjoint(g))) > tol * scale)
        throw std::invalid_argument("gram_rank: input not Hermitian within tol");
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));

    const double thresh = tol * scale;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::size_t rank = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = step;
        for (std::size_t i = step + 1; i < n; ++i)
            if (h(perm[i], perm[i]).real() > h(perm[piv], perm[piv]).real()) piv = i;
        std::swap(perm[step], perm[piv]);
        const double d = h(perm[step], perm[step]).real();
        if (d <= thresh) break;
        ++rank;
        for (std::size_t i = step + 1; i < n; ++i)
            for (std::size_t j = step + 1; j < n; ++j)
                h(perm[i], perm[j]) -= h(perm[i], perm[step]) * h(perm[step], perm[j]) / d;
    }
    return rank;
}

// General dense solve (partial pivoting); used for small Gram systems.
inline std::vector<cplx> solve(CMat a, std::vector<cplx> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) == 0.0) throw std::runtime_error("solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const cplx f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        cplx acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x[j];
        x[ii] = acc / a(ii, ii);
    }
    return x;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CSV: one line per matrix row, entries as re,im pairs.
inline std::string to_csv(const CMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j).real());
            out += ',';
            out += format_double(m(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

// {rows, cols, entries:[[re,im],...]} with entries row-major.
inline std::string to_json(const CMat& m) {
    std::string out = "{\"rows\":" + std::to_string(m.rows()) +
                      ",\"cols\":" + std::to_string(m.cols()) + ",\"entries\":[";
    for (std::size_t idx = 0; idx < m.rows() * m.cols(); ++idx) {
        if (idx) out += ',';
        const cplx& v = m.entries()[idx];
        out += '[' + format_double(v.real()) + ',' + format_double(v.imag()) + ']';
    }
    out += "]}";
    return out;
}

}  // namespace htorus

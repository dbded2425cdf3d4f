// k-level theta series
//   theta_l(z, tau) = sum_n e^{i pi (l + k n)^2 tau / k} e^{2 pi i (l + k n) z},
// their mode-wise Gaussian damping (the transform sending a boundary mode
// e^{2 pi i lambda x} to the coefficient e^{i pi tau lambda^2 / k}), a tail
// bound that picks the truncation, and a heat-equation residual
//   | d^2/dz^2 theta - 4 pi i k d/dtau theta |
// with the z-derivative exact per mode and the tau-derivative by a central
// difference along a purely imaginary step.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "htorus/util.hpp"

namespace htorus {

struct ModuliPoint {
    cplx tau;
    explicit ModuliPoint(cplx t) : tau(t) {
        if (!(t.imag() > 0.0)) throw std::invalid_argument("ModuliPoint: Im(tau) must be positive");
    }
};

struct ThetaSpec {
    long long level;  // k >= 1
    long long index;  // 0 <= l < k
    long long trunc;  // sum over |n| <= trunc

    ThetaSpec(long long k, long long l, long long n) : level(k), index(l), trunc(n) {
        if (k < 1) throw std::invalid_argument("ThetaSpec: level must be positive");
        if (l < 0 || l >= k) throw std::invalid_argument("ThetaSpec: index out of range");
        if (n < 1) throw std::invalid_argument("ThetaSpec: trunc must be positive");
    }
};

// Raw series over n = -N..N; any integer index is accepted here so that the
// l -> l + k reindexing identity can be exercised directly.
inline cplx theta_series(long long k, long long l, long long n_max, cplx z, cplx tau) {
    cplx acc = 0.0;
    for (long long n = -n_max; n <= n_max; ++n) {
        const double lam = static_cast<double>(l + k * n);
        const cplx expo = cplx(0.0, pi) * lam * lam * tau / static_cast<double>(k) +
                          cplx(0.0, 2.0 * pi) * lam * z;
        acc += std::exp(expo);
    }
    return acc;
}

inline cplx theta_eval(const ThetaSpec& spec, cplx z, const ModuliPoint& m) {
    return theta_series(spec.level, spec.index, spec.trunc, z, m.tau);
}

// Smallest N >= 1 whose two one-sided tails, bounded by the boundary term
// times a geometric majorant, sum below tol.
inline long long auto_trunc(long long k, long long l, cplx z, const ModuliPoint& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("auto_trunc: tol must be positive");
    const double it = m.tau.imag();
    const double iz = std::abs(z.imag());
    auto log_term = [&](long long n) {
        const double lam = static_cast<double>(l + k * n);
        return -pi * it * lam * lam / static_cast<double>(k) + 2.0 * pi * std::abs(lam) * iz;
    };
    auto side_bound = [&](long long first, long long step) {
        const double t0 = log_term(first);
        const double ratio = std::exp(log_term(first + step) - t0);
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return std::exp(t0) / (1.0 - ratio);
    };
    for (long long n = 1; n <= 1000000; ++n) {
        if (side_bound(n + 1, 1) + side_bound(-(n + 1), -1) < tol) return n;
    }
    throw std::runtime_error("auto_trunc: no admissible truncation found");
}

// Mode-wise damping coefficients at level k: lambda -> e^{i pi tau lambda^2 / k}.
inline std::vector<std::pair<long long, cplx>> cst_modes(std::span<const long long> freqs,
                                                         long long k, const ModuliPoint& m) {
    if (k < 1) throw std::invalid_argument("cst_modes: level must be positive");
    std::vector<std::pair<long long, cplx>> out;
    out.reserve(freqs.size());
    for (long long lam : freqs) {
        const double l2 = static_cast<double>(lam) * static_cast<double>(lam);
        out.emplace_back(lam, std::exp(cplx(0.0, pi) * m.tau * l2 / static_cast<double>(k)));
    }
    return out;
}

inline double heat_residual(const ThetaSpec& spec, cplx z, const ModuliPoint& m, double h) {
    if (!(h > 0.0) || h >= m.tau.imag())
        throw std::invalid_argument("heat_residual: need 0 < h < Im(tau)");
    const long long k = spec.level, l = spec.index;
    // one truncation for all three evaluations, adequate at the reduced Im(tau)
    const long long n_max =
        std::max(spec.trunc, auto_trunc(k, l, z, ModuliPoint(m.tau - cplx(0.0, h)), 1e-18));
    cplx d2z = 0.0;
    for (long long n = -n_max; n <= n_max; ++n) {
        const double lam = static_cast<double>(l + k * n);
        const cplx mode = std::exp(cplx(0.0, pi) * lam * lam * m.tau / static_cast<double>(k) +
                                   cplx(0.0, 2.0 * pi) * lam * z);
        d2z += cplx(-4.0 * pi * pi * lam * lam, 0.0) * mode;
    }
    const cplx up = theta_series(k, l, n_max, z, m.tau + cplx(0.0, h));
    const cplx dn = theta_series(k, l, n_max, z, m.tau - cplx(0.0, h));
    const cplx dtau = (up - dn) / cplx(0.0, 2.0 * h);
    return std::abs(d2z - cplx(0.0, 4.0 * pi * static_cast<double>(k)) * dtau);
}

}  // namespace htorus

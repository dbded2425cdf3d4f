// Exact integer arithmetic: extended gcd with Bezout certificates and the
// residue bijection Z_r x Z_q <-> Z_{rq} through q*l + r*m = k (mod rq).
#pragma once

#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace htorus {

// g = gcd(r, q) together with a, b such that a*r + b*q = g.
inline std::tuple<long long, long long, long long> ext_gcd(long long r, long long q) {
    if (r < 1 || q < 1) throw std::invalid_argument("ext_gcd: arguments must be positive");
    long long old_r = r, cur_r = q;
    long long old_a = 1, cur_a = 0;
    long long old_b = 0, cur_b = 1;
    while (cur_r != 0) {
        const long long f = old_r / cur_r;
        old_r -= f * cur_r; std::swap(old_r, cur_r);
        old_a -= f * cur_a; std::swap(old_a, cur_a);
        old_b -= f * cur_b; std::swap(old_b, cur_b);
    }
    return {old_r, old_a, old_b};
}

struct BezoutCert {
    long long a = 0;
    long long b = 0;  // a*r + b*q = 1
};

// Coprime (r, q): rank and degree data, theta = q/r.
class CoprimePair {
  public:
    CoprimePair(long long r, long long q) : r_(r), q_(q) {
        if (r < 1 || q < 1) throw std::invalid_argument("CoprimePair: r, q must be positive");
        auto [g, a, b] = ext_gcd(r, q);
        if (g != 1) throw std::invalid_argument("CoprimePair: gcd(r, q) must be 1");
        cert_ = {a, b};
    }

    long long r() const { return r_; }
    long long q() const { return q_; }
    long long rq() const { return r_ * q_; }
    const BezoutCert& bezout() const { return cert_; }
    double theta() const { return static_cast<double>(q_) / static_cast<double>(r_); }

    CoprimePair dual() const { return {q_, r_}; }

    friend bool operator==(const CoprimePair& x, const CoprimePair& y) {
        return x.r_ == y.r_ && x.q_ == y.q_;
    }

  private:
    long long r_, q_;
    BezoutCert cert_;
};

// k = (q*l + r*m) mod rq, residues canonical in [0, n).
inline long long crt_join(const CoprimePair& p, long long l, long long m) {
    if (l < 0 || l >= p.r()) throw std::out_of_range("crt_join: l out of range");
    if (m < 0 || m >= p.q()) throw std::out_of_range("crt_join: m out of range");
    return (p.q() * l + p.r() * m) % p.rq();
}

// Inverse of crt_join via the Bezout certificate: with a*r + b*q = 1,
// l = b*k (mod r) and m = a*k (mod q).
inline std::pair<long long, long long> crt_split(const CoprimePair& p, long long k) {
    if (k < 0 || k >= p.rq()) throw std::out_of_range("crt_split: k out of range");
    long long l = (p.bezout().b % p.r()) * (k % p.r()) % p.r();
    if (l < 0) l += p.r();
    long long m = (p.bezout().a % p.q()) * (k % p.q()) % p.q();
    if (m < 0) m += p.q();
    return {l, m};
}

}  // namespace htorus

// Small shared helpers: exact root-of-unity phases, deterministic sampling.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace htorus {

using cplx = std::complex<double>;

struct NamedResidual {
    std::string name;
    double value;
};

inline double max_residual(const std::vector<NamedResidual>& rs) {
    double w = 0.0;
    for (const auto& r : rs) w = std::max(w, r.value);
    return w;
}

inline constexpr double pi = 3.141592653589793238462643383279502884;

// e^{2 pi i num/den} with the fraction reduced to a canonical residue first,
// so large integer arguments lose no phase accuracy.
inline cplx unit_phase(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("unit_phase: den must be positive");
    long long n = num % den;
    if (n < 0) n += den;
    const double ang = 2.0 * pi * static_cast<double>(n) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

// z^n for unit-modulus z, evaluated through the argument so |result| = 1.
inline cplx unit_pow(cplx z, long long n) {
    const double ang = std::arg(z) * static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

// Deterministic sampler. std::mt19937_64 has a standard-pinned sequence; the
// distributions in <random> do not, so the double conversion is done by hand.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    long long uniform_int(long long lo, long long hi) {  // inclusive bounds
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(eng_() % span);
    }

    cplx unit() {
        const double ang = 2.0 * pi * uniform();
        return {std::cos(ang), std::sin(ang)};
    }

    // point x + tau y with x, y in [0, 1)
    cplx in_fundamental_domain(cplx tau) {
        const double x = uniform();
        const double y = uniform();
        return cplx(x, 0.0) + tau * y;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace htorus

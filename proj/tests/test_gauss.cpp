#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "htorus/deltamodel.hpp"
#include "htorus/gauss.hpp"

using namespace htorus;

namespace {

// independent oracle: direct summation through std::polar, no phase reduction
cplx direct_sum(long long mu, long long r) {
    cplx acc = 0.0;
    for (long long l = 0; l < r; ++l)
        acc += std::polar(1.0, 2.0 * pi * static_cast<double>(l * l) * static_cast<double>(mu) /
                                   static_cast<double>(r));
    return acc;
}

// independent oracle: the classical closed form of S(1, n) by n mod 4
cplx closed_form(long long n) {
    const double s = std::sqrt(static_cast<double>(n));
    switch (n % 4) {
        case 0: return cplx(s, s);
        case 1: return cplx(s, 0.0);
        case 2: return cplx(0.0, 0.0);
        default: return cplx(0.0, s);
    }
}

}  // namespace

TEST_CASE("gauss_sum small values") {
    CHECK(std::abs(gauss_sum(1, 1) - cplx(1.0, 0.0)) == 0.0);
    CHECK(std::abs(gauss_sum(1, 2)) <= 1e-15);                          // 1 + e^{i pi}
    CHECK(std::abs(gauss_sum(1, 3) - cplx(0.0, std::sqrt(3.0))) <= 1e-14);
    CHECK_THROWS_AS(gauss_sum(1, 0), std::invalid_argument);
}

TEST_CASE("gauss_sum matches direct summation and the closed form") {
    for (long long r = 1; r <= 200; ++r) {
        CHECK(std::abs(gauss_sum(1, r) - closed_form(r)) <= 1e-11 * (1.0 + std::sqrt(double(r))));
        for (long long mu : {1LL, 2LL, 7LL, -3LL})
            CHECK(std::abs(gauss_sum(mu, r) - direct_sum(mu, r)) <=
                  1e-11 * (1.0 + std::sqrt(double(r))));
    }
}

TEST_CASE("periodicity in mu") {
    for (long long r : {2LL, 5LL, 12LL, 97LL})
        for (long long mu : {0LL, 1LL, 4LL, -6LL})
            CHECK(std::abs(gauss_sum(mu + r, r) - gauss_sum(mu, r)) <= 1e-12);
}

TEST_CASE("multiplicative identity examples") {
    CHECK(std::abs(gauss_sum(2, 3) - cplx(0.0, -std::sqrt(3.0))) <= 1e-14);
    CHECK(std::abs(gauss_sum(3, 2)) <= 1e-15);
    CHECK(check_multiplicativity(1, CoprimePair(3, 2)) <= 1e-14);
    CHECK(check_multiplicativity(1, CoprimePair(1, 1)) == 0.0);
    CHECK(check_multiplicativity(2, CoprimePair(3, 5)) <= 1e-10);
}

TEST_CASE("multiplicative identity sweep over coprime r, q <= 40") {
    long long bad = 0;
    for (long long r = 1; r <= 40; ++r)
        for (long long q = 1; q <= 40; ++q) {
            if (std::gcd(r, q) != 1) continue;
            const CoprimePair p(r, q);
            const double tol = 1e-9 * (1.0 + std::sqrt(static_cast<double>(p.rq())));
            for (long long mu = 1; mu <= 5; ++mu)
                if (check_multiplicativity(mu, p) > tol) ++bad;
        }
    REQUIRE(bad == 0);
}

TEST_CASE("trace of the r x r phase matrix is the conjugated Gauss sum") {
    for (auto [r, q] : {std::pair{3LL, 2LL}, {5LL, 3LL}, {8LL, 9LL}, {1LL, 4LL}}) {
        const CoprimePair p(r, q);
        CHECK(std::abs(trace(build_A(p, 1)) - std::conj(gauss_sum(q, r))) <= 1e-10);
    }
}

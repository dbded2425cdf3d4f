#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "htorus/nctorus.hpp"
#include "htorus/util.hpp"

using namespace htorus;

TEST_CASE("clock/shift at (2,1) gives the hand-computed matrices") {
    const TorusRep rep = clock_shift_rep(CoprimePair(2, 1));
    CHECK(std::abs(rep.U(0, 0) - cplx(1, 0)) <= 1e-15);
    CHECK(std::abs(rep.U(1, 1) - cplx(-1, 0)) <= 1e-15);
    CHECK(std::abs(rep.V(0, 1) - cplx(1, 0)) <= 1e-15);
    CHECK(std::abs(rep.V(1, 0) - cplx(1, 0)) <= 1e-15);
    // V U = e^{i pi} U V
    const CMat lhs = matmul(rep.V, rep.U);
    const CMat rhs = scaled(matmul(rep.U, rep.V), unit_phase(1, 2));
    CHECK(max_abs(sub(lhs, rhs)) <= 1e-14);
}

TEST_CASE("scalar representation r = 1") {
    const TorusRep rep = clock_shift_rep(CoprimePair(1, 5));
    CHECK(rep.U.rows() == 1);
    CHECK(std::abs(rep.U(0, 0) - cplx(1, 0)) <= 1e-15);
    CHECK(std::abs(rep.V(0, 0) - cplx(1, 0)) <= 1e-15);
    CHECK(max_residual(verify_rep(rep)) == 0.0);
}

TEST_CASE("relation residual at (3,2)") {
    const TorusRep rep = clock_shift_rep(CoprimePair(3, 2));
    const CMat lhs = matmul(rep.V, rep.U);
    const CMat rhs = scaled(matmul(rep.U, rep.V), unit_phase(2, 3));
    CHECK(max_abs(sub(lhs, rhs)) <= 1e-14);
}

TEST_CASE("verify_rep reports and flags tampering") {
    CHECK(max_residual(verify_rep(clock_shift_rep(CoprimePair(2, 1)))) <= 1e-14);

    TorusRep bad = clock_shift_rep(CoprimePair(3, 2));
    bad.U(0, 0) *= 1.01;
    double uni = 0.0;
    for (const NamedResidual& r : verify_rep(bad))
        if (r.name == "unitarity_u") uni = r.value;
    CHECK(uni > 1e-3);
    CHECK(uni < 1e-1);

    CHECK(max_residual(verify_rep(clock_shift_rep(CoprimePair(1, 1)))) == 0.0);
}

TEST_CASE("verify_rep over coprime pairs with twist grid") {
    long long bad = 0;
    for (long long r = 1; r <= 20; ++r)
        for (long long q = 1; q <= 20; ++q) {
            if (std::gcd(r, q) != 1) continue;
            const CoprimePair p(r, q);
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b) {
                    const cplx s = unit_phase(a, 8), t = unit_phase(b, 8);
                    if (max_residual(verify_rep(clock_shift_rep(p, s, t))) > 1e-12) ++bad;
                }
        }
    REQUIRE(bad == 0);
    // larger sizes, sampled twists
    Rng rng(21);
    for (auto [r, q] : {std::pair{64LL, 63LL}, {61LL, 64LL}, {64LL, 1LL}, {37LL, 64LL}}) {
        REQUIRE(max_residual(verify_rep(clock_shift_rep(CoprimePair(r, q), rng.unit(), rng.unit()))) <=
                1e-12);
    }
}

TEST_CASE("equivalence is decided by the scalars of U^r, V^r") {
    const CoprimePair p(3, 2);
    const TorusRep r1 = clock_shift_rep(p);
    CHECK(equivalent(r1, r1, 1e-12));
    // s^r = 1 for s a cube root of unity: same class
    CHECK(equivalent(r1, clock_shift_rep(p, unit_phase(1, 3), 1.0), 1e-12));
    // s^r != 1: distinct class
    CHECK_FALSE(equivalent(r1, clock_shift_rep(p, unit_phase(1, 14), 1.0), 1e-6));
    CHECK_THROWS_AS(equivalent(r1, clock_shift_rep(CoprimePair(2, 3)), 1e-12),
                    std::invalid_argument);
}

TEST_CASE("equivalence orbits are constant in the twist") {
    const CoprimePair p(4, 3);
    Rng rng(22);
    const TorusRep base = clock_shift_rep(p, unit_phase(1, 11), unit_phase(2, 9));
    for (int i = 0; i < 10; ++i) {
        // multiplying s by an r-th root of unity fixes s^r
        const cplx root = unit_phase(rng.uniform_int(0, 3), 4);
        const TorusRep other =
            clock_shift_rep(p, unit_phase(1, 11) * root, unit_phase(2, 9) * root);
        CHECK(equivalent(base, other, 1e-12));
        CHECK(equivalent(other, base, 1e-12));
    }
}

TEST_CASE("group commutator is the scalar relation phase") {
    for (auto [r, q] : {std::pair{3LL, 2LL}, {5LL, 3LL}, {7LL, 4LL}}) {
        const TorusRep rep = clock_shift_rep(CoprimePair(r, q));
        const CMat comm =
            matmul(matmul(rep.V, rep.U), matmul(adjoint(rep.V), adjoint(rep.U)));
        CHECK(max_abs(sub(comm, scaled(CMat::identity(r), unit_phase(q, r)))) <= 1e-12);
        // phase^r = e^{2 pi i q} = 1
        CHECK(std::abs(unit_pow(unit_phase(q, r), r) - cplx(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("dual_pair is the involution (r,q) -> (q,r)") {
    CHECK(dual_pair(CoprimePair(3, 2)) == CoprimePair(2, 3));
    CHECK(dual_pair(CoprimePair(1, 7)) == CoprimePair(7, 1));
    const CoprimePair p(9, 8);
    CHECK(dual_pair(dual_pair(p)) == p);
}

#include <catch2/catch_amalgamated.hpp>

#include "htorus/matsushima.hpp"
#include "htorus/oscillator.hpp"
#include "htorus/thetafun.hpp"
#include "htorus/util.hpp"

using namespace htorus;

namespace {

std::vector<cplx> sample_points(cplx tau, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.in_fundamental_domain(tau));
    return pts;
}

}  // namespace

TEST_CASE("basis has q sections with r components and tight boundary residuals") {
    for (auto [r, q] : {std::pair{3LL, 2LL}, {2LL, 3LL}, {2LL, 1LL}}) {
        const CoprimePair p(r, q);
        const ModuliPoint mod(cplx(0, 1));
        const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
        REQUIRE(basis.sections.size() == static_cast<std::size_t>(q));
        const BundleData bd = make_bundle(p, mod);
        for (const SectionExpr& s : basis.sections) {
            REQUIRE(s.components() == static_cast<std::size_t>(r));
            for (cplx z : sample_points(mod.tau, 20, 51)) {
                const auto [r1, rt] = boundary_residual(bd, s, z);
                REQUIRE(r1 <= 1e-8);
                REQUIRE(rt <= 1e-8);
            }
        }
    }
}

TEST_CASE("r = 1 reproduces the k-level thetas in delta-translate form") {
    // with trivial twists the m-th section is proportional to
    // e^{alpha z^2/2} sum_l e^{-2 pi i l m / k} theta_l(z, tau)
    const long long k = 4;
    const cplx tau(0, 1);
    const CoprimePair p(1, k);
    const VectorThetaBasis basis = build_vector_thetas(p, ModuliPoint(tau), 1e-8);
    const BundleData bd = make_bundle(p, ModuliPoint(tau));
    const double al = bd.alpha();
    const long long n_max = auto_trunc(k, 0, cplx(1.0, 1.0), ModuliPoint(tau), 1e-18) + 1;

    Rng rng(52);
    for (long long m = 0; m < k; ++m) {
        cplx ratio0 = 0.0;
        for (int i = 0; i < 8; ++i) {
            const cplx z(0.8 * rng.uniform(), 0.8 * rng.uniform());
            cplx ref = 0.0;
            for (long long l = 0; l < k; ++l)
                ref += unit_phase(-l * m, k) * theta_series(k, l, n_max, z, tau);
            ref *= std::exp(0.5 * al * z * z);
            const cplx val = basis.sections[m].eval(z)[0];
            if (i == 0) {
                ratio0 = val / ref;
                continue;
            }
            REQUIRE(std::abs(val / ref - ratio0) <= 1e-8 * std::abs(ratio0));
        }
    }
}

TEST_CASE("gram matrix has full rank q with healthy pivots") {
    for (auto [r, q] : {std::pair{3LL, 2LL}, {2LL, 3LL}, {1LL, 4LL}, {3LL, 5LL}}) {
        const CoprimePair p(r, q);
        const ModuliPoint mod(cplx(0, 1));
        const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
        const BundleData bd = make_bundle(p, mod);
        const CMat g = weighted_gram(bd, basis.sections, 64);
        REQUIRE(gram_rank(g, 1e-6) == static_cast<std::size_t>(q));
        // sections are unit normalized, so diagonal pivots are near one
        for (std::size_t i = 0; i < basis.sections.size(); ++i)
            REQUIRE(g(i, i).real() > 1e-6);
    }
}

TEST_CASE("holomorphy residual") {
    const CoprimePair p(2, 3);
    const ModuliPoint mod(cplx(0, 1));
    const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
    const auto pts = sample_points(mod.tau, 10, 53);
    CHECK(holomorphy_residual(basis, pts) == 0.0);

    const BundleData bd = make_bundle(p, mod);
    VectorThetaBasis raised = basis;
    for (SectionExpr& s : raised.sections) s = create(bd, s);
    CHECK(holomorphy_residual(raised, pts) > 1e-3);
}

TEST_CASE("dual-step matrices: commutation phase, powers, twists") {
    for (auto [r, q] : {std::pair{3LL, 2LL}, {2LL, 3LL}, {1LL, 4LL}, {3LL, 5LL}}) {
        const CoprimePair p(r, q);
        const ModuliPoint mod(cplx(0, 1));
        const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
        const BundleData bd = make_bundle(p, mod);
        const HatMatrices hm = hat_matrices(bd, basis.sections);
        REQUIRE(hm.expansion_residual <= 1e-6);
        const cplx phase = unit_phase(r, q);
        CHECK(max_abs(sub(matmul(hm.V, hm.U), scaled(matmul(hm.U, hm.V), phase))) <= 1e-6);
        const CMat iq = CMat::identity(static_cast<std::size_t>(q));
        CHECK(max_abs(sub(unitary_power(hm.U, q), iq)) <= 1e-6);
        CHECK(max_abs(sub(unitary_power(hm.V, q), iq)) <= 1e-6);
    }

    // nontrivial twists: the powers pick up the scalars of u^r and v^r
    const CoprimePair p(2, 3);
    const ModuliPoint mod(cplx(0, 1));
    const cplx s_tw = unit_phase(1, 10), t_tw = unit_phase(2, 7);
    const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8, s_tw, t_tw);
    const BundleData bd = make_bundle(p, mod, s_tw, t_tw);
    const HatMatrices hm = hat_matrices(bd, basis.sections);
    const CMat iq = CMat::identity(3);
    CHECK(max_abs(sub(unitary_power(hm.U, 3), scaled(iq, unit_pow(s_tw, 2)))) <= 1e-6);
    CHECK(max_abs(sub(unitary_power(hm.V, 3), scaled(iq, unit_pow(t_tw, 2)))) <= 1e-6);
}

TEST_CASE("r = 1 matrices are the shift and clock up to phases") {
    const CoprimePair p(1, 4);
    const ModuliPoint mod(cplx(0, 1));
    const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
    const BundleData bd = make_bundle(p, mod);
    const HatMatrices hm = hat_matrices(bd, basis.sections);
    // V^ is diagonal with unit-modulus entries stepping by e^{-2 pi i / 4}
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) {
                CHECK(std::abs(std::abs(hm.V(i, j)) - 1.0) <= 1e-8);
            } else {
                CHECK(std::abs(hm.V(i, j)) <= 1e-8);
                // U^ is a cyclic one-step shift in the row convention
                const bool on_shift = j == (i + 1) % 4;
                if (!on_shift) CHECK(std::abs(hm.U(i, j)) <= 1e-8);
            }
        }
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(std::abs(hm.U(i, (i + 1) % 4)) - 1.0) <= 1e-8);
        CHECK(std::abs(hm.V(i, i) / hm.V(0, 0) - unit_phase(-static_cast<long long>(i), 4)) <= 1e-8);
    }
}

TEST_CASE("matrices are unitary after orthonormalizing the basis") {
    const CoprimePair p(3, 2);
    const ModuliPoint mod(cplx(0.3, 1.2));
    const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
    const BundleData bd = make_bundle(p, mod);
    const std::vector<SectionExpr> ortho = orthonormalize(bd, basis.sections);
    const HatMatrices hm = hat_matrices(bd, ortho);
    CHECK(is_unitary(hm.U, 1e-5));
    CHECK(is_unitary(hm.V, 1e-5));
}

TEST_CASE("matrix entries are stable under grid doubling") {
    const CoprimePair p(2, 3);
    const ModuliPoint mod(cplx(0, 1));
    const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
    const BundleData bd = make_bundle(p, mod);
    const HatMatrices a = hat_matrices(bd, basis.sections, 32);
    const HatMatrices b = hat_matrices(bd, basis.sections, 64);
    CHECK(max_abs(sub(a.U, b.U)) <= 1e-8);
    CHECK(max_abs(sub(a.V, b.V)) <= 1e-8);
}

TEST_CASE("duality swaps the left and right commutation phases") {
    // the dual-step matrices realize the 1/theta relation with phase
    // e^{2 pi i r/q}; the unit transports realize the theta relation with
    // phase e^{2 pi i q/r}; the two swap under (r, q) -> (q, r)
    const ModuliPoint mod(cplx(0, 1));
    auto hat_phase = [&](const CoprimePair& p) {
        const VectorThetaBasis basis = build_vector_thetas(p, mod, 1e-8);
        const BundleData bd = make_bundle(p, mod);
        const HatMatrices hm = hat_matrices(bd, basis.sections);
        // recover the scalar from V U (U V)^{-1} acting on the first basis entry
        const CMat lhs = matmul(hm.V, hm.U);
        const CMat rhs = matmul(hm.U, hm.V);
        for (std::size_t i = 0; i < lhs.rows(); ++i)
            for (std::size_t j = 0; j < lhs.cols(); ++j)
                if (std::abs(rhs(i, j)) > 0.5) return lhs(i, j) / rhs(i, j);
        return cplx(0, 0);
    };
    auto transport_phase = [&](const CoprimePair& p) {
        const BundleData bd = make_bundle(p, mod);
        SectionExpr s(static_cast<std::size_t>(p.r()));
        s.add_atom(0, 1, cplx(0.3, 0.2), cplx(-0.1, 0.5), 1.0);
        const SectionExpr vu = check_v(bd, check_u(bd, s));
        const SectionExpr uv = check_u(bd, check_v(bd, s));
        const cplx z(0.37, 0.21);
        return vu.eval(z)[0] / uv.eval(z)[0];
    };
    const CoprimePair p(3, 2);
    CHECK(std::abs(hat_phase(p) - unit_phase(3, 2)) <= 1e-6);
    CHECK(std::abs(transport_phase(p) - unit_phase(2, 3)) <= 1e-10);
    CHECK(std::abs(hat_phase(dual_pair(p)) - transport_phase(p)) <= 1e-6);
    CHECK(std::abs(transport_phase(dual_pair(p)) - hat_phase(p)) <= 1e-6);
}

TEST_CASE("section space tensor bijection") {
    const CoprimePair p(3, 2);
    const std::vector<long long> iso = section_space_iso(p);
    CHECK(iso[1 * 3 + 1] == 5);  // (m=1, l=1) -> k=5
    for (auto [r, q] : {std::pair{3LL, 2LL}, {5LL, 4LL}, {10LL, 9LL}, {1LL, 12LL}}) {
        const CoprimePair pp(r, q);
        const std::vector<long long> table = section_space_iso(pp);
        std::vector<bool> seen(table.size(), false);
        for (long long m = 0; m < q; ++m)
            for (long long l = 0; l < r; ++l) {
                const long long k = table[m * r + l];
                REQUIRE(!seen[k]);
                seen[k] = true;
                // inverse agrees with the residue split
                const auto [l2, m2] = crt_split(pp, k);
                REQUIRE(l2 == l);
                REQUIRE(m2 == m);
            }
    }
}

TEST_CASE("star duality bookkeeping") {
    {
        const FmnStar fs = fmn_star(CoprimePair(3, 2));
        CHECK(fs.left == CoprimePair(3, 2));
        CHECK(fs.right == CoprimePair(2, 3));
        CHECK(fs.star == CoprimePair(1, 6));
        CHECK(fs.h0_left * fs.h0_right == fs.h0_star);
    }
    {
        const FmnStar fs = fmn_star(CoprimePair(1, 1));
        CHECK(fs.star == CoprimePair(1, 1));
    }
    {
        const FmnStar fs = fmn_star(CoprimePair(5, 7));
        CHECK(fs.right == CoprimePair(7, 5));
        CHECK(fs.star == CoprimePair(1, 35));
        CHECK(fs.h0_star == 35);
    }
}

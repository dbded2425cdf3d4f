// Full residual suite for a given (r, q, tau): every identity the library
// implements, each reported as {name, residual, tolerance}. The names label
// the mathematical identity being checked; the driver exits nonzero when any
// residual exceeds its tolerance.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "htorus/bundle.hpp"
#include "htorus/deltamodel.hpp"
#include "htorus/gauss.hpp"
#include "htorus/matsushima.hpp"
#include "htorus/modarith.hpp"
#include "htorus/nctorus.hpp"
#include "htorus/oscillator.hpp"
#include "htorus/section.hpp"
#include "htorus/thetafun.hpp"
#include "htorus/util.hpp"

namespace htorus {

struct Check {
    std::string name;
    double residual;
    double tol;
    bool pass() const { return residual <= tol; }
};

namespace detail {

inline std::vector<SectionExpr> ccr_test_atoms(std::size_t comps) {
    std::vector<SectionExpr> out;
    const cplx mus[] = {cplx(0.0, 0.0), cplx(0.7, -0.3), cplx(-0.2, 1.1)};
    const cplx nus[] = {cplx(0.0, 0.0), cplx(0.4, 0.9)};
    for (int p = 0; p <= 3; ++p)
        for (cplx mu : mus)
            for (cplx nu : nus) {
                SectionExpr s(comps);
                s.add_atom(0, p, mu, nu, cplx(1.0, 0.25));
                if (comps > 1) s.add_atom(comps - 1, p, nu, mu, cplx(-0.5, 0.6));
                out.push_back(s);
            }
    return out;
}

}  // namespace detail

inline std::vector<Check> run_verify(long long r, long long q, cplx tau, std::uint64_t seed) {
    std::vector<Check> out;
    const CoprimePair pair(r, q);
    const ModuliPoint mod(tau);
    Rng rng(seed);

    // representation relations
    const TorusRep rep = clock_shift_rep(pair);
    for (const NamedResidual& res : verify_rep(rep))
        out.push_back({"rep_" + res.name, res.value, 1e-12});

    // residue bijection round trip, exhaustive over Z_r x Z_q
    {
        long long bad = 0;
        for (long long l = 0; l < r; ++l)
            for (long long m = 0; m < q; ++m) {
                const auto [l2, m2] = crt_split(pair, crt_join(pair, l, m));
                if (l2 != l || m2 != m) ++bad;
            }
        for (long long k = 0; k < pair.rq(); ++k) {
            const auto [l, m] = crt_split(pair, k);
            if (crt_join(pair, l, m) != k) ++bad;
        }
        out.push_back({"crt_round_trip_failures", static_cast<double>(bad), 0.5});
    }

    // Gauss multiplicative identity
    {
        double worst = 0.0;
        for (long long mu = 1; mu <= 5; ++mu)
            worst = std::max(worst, check_multiplicativity(mu, pair));
        out.push_back({"gauss_multiplicativity", worst,
                       1e-9 * (1.0 + std::sqrt(static_cast<double>(pair.rq())))});
    }

    // delta model: tensor conjugation, trace identity, family relations
    {
        double conj = 0.0, tr = 0.0;
        for (long long mu = 1; mu <= 3; ++mu) {
            const TensorIdentity ti = verify_tensor_identity(pair, mu);
            conj = std::max(conj, ti.conjugation_residual);
            tr = std::max(tr, ti.trace_residual);
        }
        out.push_back({"delta_tensor_conjugation", conj, 1e-12});
        out.push_back({"delta_trace_multiplicativity", tr, 1e-10});
        out.push_back({"gauss_trace_of_A",
                       std::abs(trace(build_A(pair, 1)) - std::conj(gauss_sum(q, r))), 1e-10});

        const OperatorFamily fam = build_operator_family(pair);
        for (const NamedResidual& res : family_residuals(fam))
            out.push_back({"delta_" + res.name, res.value,
                           res.name == "family_unitarity" || res.name == "power_scalars" ? 1e-12
                                                                                         : 1e-13});
        out.push_back({"delta_mutual_commutation", mutual_commutation(fam), 1e-13});
        if (pair.rq() <= 42) {
            out.push_back({"delta_blackboard_phase_law", blackboard_phase_law(fam), 1e-12});
        } else {
            double worst = 0.0;
            for (int i = 0; i < 40; ++i) {
                const long long k = rng.uniform_int(0, pair.rq() - 1);
                const long long kp = rng.uniform_int(0, pair.rq() - 1);
                auto [uk, vk] = blackboard_generators(fam, k);
                auto [ukp, vkp] = blackboard_generators(fam, kp);
                worst = std::max(worst,
                                 max_abs(sub(matmul(uk, vkp),
                                             scaled(matmul(vkp, uk),
                                                    unit_phase(-k * kp, pair.rq())))));
            }
            out.push_back({"delta_blackboard_phase_law_sampled", worst, 1e-12});
        }
    }

    // bundle: cocycle, CCR, transports
    const BundleData bd = make_bundle(pair, mod);
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const LatticePoint g{rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)};
            const LatticePoint d{rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)};
            worst = std::max(worst, cocycle_residual(bd, g, d, rng.in_fundamental_domain(tau)));
        }
        out.push_back({"multiplier_cocycle", worst, 1e-9});

        const cplx two_pi_i_theta = cplx(0.0, 2.0 * pi * bd.theta());
        const cplx dual_phase = std::exp(cplx(0.0, 2.0 * pi / bd.theta()));
        const cplx left_phase = std::exp(two_pi_i_theta);
        double ccr_atom = 0.0, ccr_pt = 0.0, dual = 0.0, left = 0.0, cross = 0.0;
        std::vector<cplx> pts;
        for (int i = 0; i < 50; ++i) pts.push_back(rng.in_fundamental_domain(tau));
        for (const SectionExpr& s : detail::ccr_test_atoms(static_cast<std::size_t>(r))) {
            const SectionExpr comm =
                (apply_Q(bd, apply_P(bd, s)) - apply_P(bd, apply_Q(bd, s))).simplified();
            ccr_atom = std::max(ccr_atom, atom_identity_residual(comm, s.scaled(two_pi_i_theta)));
            ccr_pt = std::max(ccr_pt, section_deviation(comm, s.scaled(two_pi_i_theta), pts));
            dual = std::max(dual, atom_identity_residual(
                                      hat_u(bd, hat_v(bd, s)),
                                      hat_v(bd, hat_u(bd, s)).scaled(dual_phase)));
            left = std::max(left, atom_identity_residual(
                                      check_v(bd, check_u(bd, s)),
                                      check_u(bd, check_v(bd, s)).scaled(left_phase)));
            cross = std::max(cross, atom_identity_residual(check_u(bd, hat_u(bd, s)),
                                                           hat_u(bd, check_u(bd, s))));
            cross = std::max(cross, atom_identity_residual(check_u(bd, hat_v(bd, s)),
                                                           hat_v(bd, check_u(bd, s))));
            cross = std::max(cross, atom_identity_residual(check_v(bd, hat_u(bd, s)),
                                                           hat_u(bd, check_v(bd, s))));
            cross = std::max(cross, atom_identity_residual(check_v(bd, hat_v(bd, s)),
                                                           hat_v(bd, check_v(bd, s))));
        }
        out.push_back({"ccr_atom_level", ccr_atom, 1e-12});
        out.push_back({"ccr_pointwise", ccr_pt, 1e-10});
        out.push_back({"dual_step_commutation", dual, 1e-10});
        out.push_back({"transport_commutation", left, 1e-10});
        out.push_back({"bimodule_cross_commutators", cross, 1e-10});
        out.push_back({"chern_rank_defect",
                       std::abs(static_cast<double>(bd.rank() - r)) +
                           std::abs(static_cast<double>(bd.degree() - q)),
                       0.5});
    }

    // section basis and the dual action on it
    {
        const VectorThetaBasis basis = build_vector_thetas(pair, mod, 1e-8);
        double bres = 0.0, herm = 0.0;
        std::vector<cplx> pts;
        for (int i = 0; i < 20; ++i) pts.push_back(rng.in_fundamental_domain(tau));
        for (const SectionExpr& s : basis.sections)
            for (cplx z : pts) {
                const auto [r1, rt] = boundary_residual(bd, s, z);
                bres = std::max({bres, r1, rt});
            }
        for (cplx z : pts) {
            const cplx v0 = hermitian_pair(bd, basis.sections[0], basis.sections.back(), z);
            const cplx v1 = hermitian_pair(bd, basis.sections[0], basis.sections.back(), z + 1.0);
            const cplx vt = hermitian_pair(bd, basis.sections[0], basis.sections.back(), z + tau);
            herm = std::max({herm, std::abs(v1 - v0), std::abs(vt - v0)});
        }
        out.push_back({"section_boundary_conditions", bres, 1e-8});
        out.push_back({"hermitian_pair_descends", herm, 1e-8});
        out.push_back({"holomorphy", holomorphy_residual(basis, pts), 1e-12});

        const CMat gram = weighted_gram(bd, basis.sections, 48);
        out.push_back({"section_count_defect",
                       std::abs(static_cast<double>(basis.sections.size()) -
                                static_cast<double>(q)),
                       0.5});
        out.push_back({"gram_rank_defect",
                       std::abs(static_cast<double>(gram_rank(gram, 1e-6)) -
                                static_cast<double>(q)),
                       0.5});

        const HatMatrices hm = hat_matrices(bd, basis.sections, 32);
        const cplx hat_phase = unit_phase(r, q);
        out.push_back({"hat_matrix_commutation",
                       max_abs(sub(matmul(hm.V, hm.U), scaled(matmul(hm.U, hm.V), hat_phase))),
                       1e-6});
        out.push_back({"hat_matrix_power_u",
                       max_abs(sub(unitary_power(hm.U, q),
                                   scaled(CMat::identity(basis.sections.size()), rep.a))),
                       1e-6});
        out.push_back({"hat_matrix_power_v",
                       max_abs(sub(unitary_power(hm.V, q),
                                   scaled(CMat::identity(basis.sections.size()), rep.b))),
                       1e-6});
        out.push_back({"hat_expansion_residual", hm.expansion_residual, 1e-6});

        // u^ and v^ composed q times act as the scalars of u^r and v^r
        double pw = 0.0;
        SectionExpr su = basis.sections[0], sv = basis.sections[0];
        for (long long i = 0; i < q; ++i) {
            su = hat_u(bd, su);
            sv = hat_v(bd, sv);
        }
        pw = std::max(pw, section_deviation(su, basis.sections[0].scaled(rep.a), pts));
        pw = std::max(pw, section_deviation(sv, basis.sections[0].scaled(rep.b), pts));
        out.push_back({"dual_step_power_scalars", pw, 1e-8});

        // oscillator ladder on the same basis
        const LandauLevel l0 = landau_level(bd, basis, 0, 48);
        const LandauLevel l1 = landau_level(bd, basis, 1, 48);
        out.push_back({"landau_eigen_residual",
                       std::max(l0.eigen_residual, l1.eigen_residual), 1e-8});
        out.push_back({"landau_rank_defect",
                       std::abs(static_cast<double>(gram_rank(l0.gram, 1e-6)) -
                                static_cast<double>(q)) +
                           std::abs(static_cast<double>(gram_rank(l1.gram, 1e-6)) -
                                    static_cast<double>(q)),
                       0.5});
        double crossl = 0.0;
        const CMat cross = weighted_cross_gram(bd, l0.basis, l1.basis, 48);
        for (std::size_t i = 0; i < cross.rows(); ++i)
            for (std::size_t j = 0; j < cross.cols(); ++j) {
                const double na = std::sqrt(l0.gram(i, i).real());
                const double nb = std::sqrt(l1.gram(j, j).real());
                crossl = std::max(crossl, std::abs(cross(i, j)) / (na * nb));
            }
        out.push_back({"landau_cross_level_orthogonality", crossl, 1e-8});
        out.push_back({"landau_level_preservation",
                       std::max(level_preservation(bd, l0, 32), level_preservation(bd, l1, 32)),
                       1e-6});
        std::vector<SectionExpr> raised, lowered;
        for (const SectionExpr& s : basis.sections) {
            raised.push_back(create(bd, s));
            lowered.push_back(annihilate(bd, raised.back()));
        }
        const double adj = max_abs(sub(weighted_gram(bd, raised, 48),
                                       weighted_cross_gram(bd, basis.sections, lowered, 48)));
        out.push_back({"creation_adjointness", adj, 1e-8});
    }

    // scalar theta facts (level fixed, independent of the pair)
    {
        const ModuliPoint mi(cplx(0.0, 1.0));
        const ThetaSpec spec(1, 0, auto_trunc(1, 0, 0.0, mi, 1e-18));
        out.push_back({"theta_reference_value",
                       std::abs(theta_eval(spec, 0.0, mi) - cplx(1.08643481121330803, 0.0)),
                       1e-10});
        const cplx z(0.3, 0.1);
        const double r1 = heat_residual(spec, z, mi, 1e-3);
        const double r2 = heat_residual(spec, z, mi, 0.5e-3);
        out.push_back({"heat_ratio_deviation", std::abs(r1 / r2 - 4.0), 0.8});
    }

    // duality bookkeeping
    {
        const FmnStar fs = fmn_star(pair);
        double resid = std::abs(static_cast<double>(fs.h0_left * fs.h0_right - fs.h0_star));
        const CoprimePair dd = dual_pair(dual_pair(pair));
        if (!(dd == pair)) resid += 1.0;
        const std::vector<long long> iso = section_space_iso(pair);
        std::vector<bool> seen(iso.size(), false);
        for (long long k : iso) {
            if (k < 0 || k >= static_cast<long long>(iso.size()) || seen[k]) resid += 1.0;
            else seen[k] = true;
        }
        out.push_back({"fmn_star_bookkeeping", resid, 0.5});
    }

    return out;
}

}  // namespace htorus

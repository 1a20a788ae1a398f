#include "doctest.h"

#include <cmath>

#include "ggl/bernoulli.hpp"
#include "ggl/cocycle.hpp"
#include "ggl/errors.hpp"
#include "ggl/rng.hpp"
#include "ggl/sampling.hpp"
#include "formal.hpp"

using namespace ggl;

namespace {

const EvalConfig cfg{};
const LatticeVector E1{{1, 0, 0}};
const LatticeVector E2{{0, 1, 0}};
const LatticeVector E3{{0, 0, 1}};

double rel_err(cplx got, cplx want) {
    double scale = std::max(std::abs(want), 1e-30);
    return std::abs(got - want) / scale;
}

// x with all requested charts active and all requested pairs moderate.
template <class Pred>
cvec3 find_x(CounterRng& rng, Pred&& ok, int tries = 4000) {
    for (int t = 0; t < tries; ++t) {
        cvec3 x = sample_x_chart(rng, 3);
        if (ok(x)) return x;
    }
    throw std::runtime_error("find_x: no admissible point found");
}

bool pairs_moderate(const cvec3& x, std::initializer_list<std::pair<LatticeVector, LatticeVector>> ps) {
    for (const auto& [a, b] : ps)
        if (!moderate_pair(pair_factorization(a, b), x)) return false;
    return true;
}

} // namespace

TEST_CASE("formal cancellation: tetrahedron") {
    formal::Product P;
    P.phi3("p", "b", "c", "d", +1);
    P.phi3("p", "a", "c", "d", -1);
    P.phi3("p", "a", "b", "d", +1);
    P.phi3("p", "a", "b", "c", -1);
    CHECK(P.trivial());
}

TEST_CASE("formal cancellation: phi_ab antisymmetry") {
    formal::Product P;
    P.phi2("p", "gp", "g", "a", "b", +1);
    P.phi2("p", "gp", "g", "b", "a", +1);
    CHECK(P.trivial());
}

TEST_CASE("formal cancellation: equivariant component") {
    // phi_{g a, g b, g c}(pulled) phi_{abc}^-1 = phi_bc phi_ac^-1 phi_ab
    formal::Product P;
    P.phi3("gp", "g:a", "g:b", "g:c", +1);
    P.phi3("p", "a", "b", "c", -1);
    P.phi2("p", "gp", "g", "b", "c", -1);
    P.phi2("p", "gp", "g", "a", "c", +1);
    P.phi2("p", "gp", "g", "a", "b", -1);
    CHECK(P.trivial());
}

TEST_CASE("formal cancellation: group component") {
    // phi_a(g,h at p) = D(p,a,gh) - D(p,a,g) - D(gp, g:a, h) in log form
    auto phi_a_formal = [](formal::Product& P, const std::string& base_pt,
                           const std::string& pulled_pt, const std::string& idx,
                           const std::string& g, const std::string& h,
                           const std::string& gh, const std::string& pulled_idx, int e) {
        P.delta(base_pt, idx, gh, e);
        P.delta(base_pt, idx, g, -e);
        P.delta(pulled_pt, pulled_idx, h, -e);
    };
    formal::Product P;
    // lhs: phi_a(g,h) phi_a(gh,j); rhs: phi_a(g,hj) phi_{g:a}(h,j at gp)
    phi_a_formal(P, "p", "gp", "a", "g", "h", "gh", "g:a", +1);
    phi_a_formal(P, "p", "ghp", "a", "gh", "j", "ghj", "gh:a", +1);
    phi_a_formal(P, "p", "gp", "a", "g", "hj", "ghj", "g:a", -1);
    phi_a_formal(P, "gp", "ghp", "g:a", "h", "j", "hj", "gh:a", -1);
    CHECK(P.trivial());
}

TEST_CASE("phi_abc degenerate and symmetry properties") {
    CounterRng rng(31, 1);
    for (int trial = 0; trial < 8; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 3);
        cvec3 x = sample_x_standard(rng);
        if (!moderate_pair(pair_factorization(a, b), x)) continue;
        cplx w = sample_w(rng);
        try {
            // c = a: phi_{a,b,a} = 1 exactly through the antisymmetry pair
            auto v = phi_abc(a, b, a, w, x, cfg);
            CHECK(rel_err(v.value, cplx(1.0, 0.0)) < 1e-10);
        } catch (const pole_error&) {
            continue;
        }
    }

    CounterRng rng2(31, 2);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 8; ++trial) {
        auto a = sample_primitive(rng2, 2);
        auto b = sample_primitive(rng2, 2);
        auto c = sample_primitive(rng2, 2);
        cvec3 x = sample_x_chart(rng2, 2);
        cplx w = sample_w(rng2);
        try {
            cplx base = phi_abc(a, b, c, w, x, cfg).value;
            // cyclic invariance
            CHECK(rel_err(phi_abc(b, c, a, w, x, cfg).value, base) < 1e-9);
            // transposition inverts
            cplx swapped = phi_abc(b, a, c, w, x, cfg).value;
            CHECK(rel_err(swapped * base, cplx(1.0, 0.0)) < 1e-9);
            ++checked;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(checked == 8);
}

TEST_CASE("phi_abc modulus is generally nontrivial") {
    // in-domain configuration with |phi| != 1
    cvec3 x{cplx(1.0, 0.0), std::polar(1.1, -2.0), std::polar(0.9, 2.2)};
    REQUIRE(in_domain(E1, x));
    REQUIRE(in_domain(E2, x));
    REQUIRE(in_domain(E3, x));
    auto v = phi_abc(E1, E2, E3, cplx(-0.2, 0.1), x, cfg);
    CHECK(std::abs(std::abs(v.value) - 1.0) > 1e-3);
}

TEST_CASE("phi_ab identity cases") {
    CounterRng rng(31, 3);
    cvec3 x = find_x(rng, [&](const cvec3& y) {
        return in_domain(E1, y) && in_domain(E2, y) &&
               pairs_moderate(y, {{E1, E2}});
    });
    cplx w = sample_w(rng);

    CHECK(rel_err(phi_ab(E1, E2, GroupElement::identity(), w, x, cfg).value,
                  cplx(1.0, 0.0)) < 1e-10);
    auto g = sample_group_element(rng, 4);
    // a = b: gamma factors are 1, deltas cancel
    try {
        CHECK(rel_err(phi_ab(E1, E1, g, w, x, cfg).value, cplx(1.0, 0.0)) < 1e-10);
    } catch (const std::exception&) {
    }
}

TEST_CASE("phi_ab pure translation has polynomial log with small residual") {
    CounterRng rng(31, 4);
    cvec3 x = find_x(rng, [&](const cvec3& y) {
        return in_domain(E1, y) && in_domain(E2, y) && pairs_moderate(y, {{E1, E2}});
    });
    auto t = make_group_element(Mat3::identity(), DualVector{{2, -1, 1}});
    std::vector<std::pair<cplx, cplx>> vals;
    for (int i = 0; i < 25; ++i) {
        cplx w = cplx(-0.15 + 0.012 * i, 0.07 + 0.006 * i);
        vals.push_back({w, phi_ab(E1, E2, t, w, x, cfg).value});
    }
    auto fit = fit_phase(vals, 4, 1e-6);
    CHECK(fit.residual < 1e-6);
}

TEST_CASE("phi_a identity cases and inverse consistency") {
    CounterRng rng(31, 5);
    cvec3 x = find_x(rng, [&](const cvec3& y) { return in_domain(E1, y); });
    cplx w = sample_w(rng);
    auto id = GroupElement::identity();
    auto g = sample_group_element(rng, 4);

    CHECK(rel_err(phi_a(E1, id, g, w, x, cfg).value, cplx(1.0, 0.0)) < 1e-10);
    CHECK(rel_err(phi_a(E1, g, id, w, x, cfg).value, cplx(1.0, 0.0)) < 1e-10);

    // h = g^-1: finite, nonzero, and polynomial in w (negative-count
    // convention consistency through the composed identity)
    int done = 0;
    for (int trial = 0; trial < 60 && done < 3; ++trial) {
        auto gg = sample_group_element(rng, 4);
        try {
            std::vector<std::pair<cplx, cplx>> vals;
            for (int i = 0; i < 25; ++i) {
                cplx wi = cplx(-0.12 + 0.011 * i, 0.05 + 0.005 * i);
                cplx v = phi_a(E1, gg, inverse(gg), wi, x, cfg).value;
                CHECK(std::isfinite(std::abs(v)));
                CHECK(std::abs(v) > 0.0);
                vals.push_back({wi, v});
            }
            auto fit = fit_phase(vals, 4, 1e-6);
            CHECK(fit.residual < 1e-6);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 3);
}

TEST_CASE("check_tetrahedron on random quadruples") {
    CounterRng rng(31, 6);
    int checked = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 400 && checked < 30; ++trial) {
        auto a = sample_primitive(rng, 3);
        auto b = sample_primitive(rng, 3);
        auto c = sample_primitive(rng, 3);
        auto d = sample_primitive(rng, 3);
        cvec3 x = sample_x_chart(rng, 2);
        cplx w = sample_w(rng);
        try {
            auto r = check_tetrahedron(a, b, c, d, w, x, cfg);
            worst = std::max(worst, r.residual);
            ++checked;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(checked == 30);
    CHECK(worst < 1e-8);
}

TEST_CASE("check_tetrahedron degenerate and stress cases") {
    CounterRng rng(31, 7);
    cvec3 x = sample_x_standard(rng);
    cplx w = sample_w(rng);
    auto r = check_tetrahedron(E1, E2, E3, E3, w, x, cfg);
    CHECK(r.residual < 1e-12);

    // larger fundamental sets (s > 1 pairs)
    LatticeVector a{{1, 2, 0}}, b{{1, 0, 2}}, c{{0, 1, 2}}, d{{2, 1, 0}};
    int done = 0;
    for (int trial = 0; trial < 200 && done < 5; ++trial) {
        cvec3 y = sample_x_chart(rng, 2);
        cplx v = sample_w(rng);
        try {
            auto rr = check_tetrahedron(a, b, c, d, v, y, cfg);
            CHECK(rr.residual < 1e-7);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 5);
}

TEST_CASE("check_equivariant identity, translations, generic words") {
    CounterRng rng(31, 8);
    cvec3 x = find_x(rng, [&](const cvec3& y) {
        return in_domain(E1, y) && in_domain(E2, y) && in_domain(E3, y);
    });
    cplx w = sample_w(rng);
    auto r0 = check_equivariant(E1, E2, E3, GroupElement::identity(), w, x, cfg);
    CHECK(r0.residual < 1e-12);

    int done = 0;
    for (int trial = 0; trial < 400 && done < 20; ++trial) {
        auto a = sample_primitive(rng, 2);
        auto b = sample_primitive(rng, 2);
        auto c = sample_primitive(rng, 2);
        auto t = sample_translation(rng, 2);
        cvec3 y = sample_x_chart(rng, 2);
        cplx v = sample_w(rng);
        try {
            if (!in_domain(a, y) || !in_domain(b, y) || !in_domain(c, y)) continue;
            auto r = check_equivariant(a, b, c, t, v, y, cfg);
            CHECK(r.residual < 1e-7);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 20);

    done = 0;
    for (int trial = 0; trial < 600 && done < 20; ++trial) {
        auto a = sample_primitive(rng, 2);
        auto b = sample_primitive(rng, 2);
        auto c = sample_primitive(rng, 2);
        auto g = sample_group_element(rng, 4);
        cvec3 y = sample_x_chart(rng, 2);
        cplx v = sample_w(rng);
        try {
            if (!in_domain(a, y) || !in_domain(b, y) || !in_domain(c, y)) continue;
            auto r = check_equivariant(a, b, c, g, v, y, cfg);
            CHECK(r.residual < 1e-6);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 20);
}

TEST_CASE("check_group identity, translations, generic words") {
    CounterRng rng(31, 9);
    cvec3 x = find_x(rng, [&](const cvec3& y) { return in_domain(E1, y); });
    cplx w = sample_w(rng);
    auto g1 = sample_group_element(rng, 3);
    auto g2 = sample_group_element(rng, 3);
    auto id = GroupElement::identity();
    try {
        CHECK(check_group(E1, id, g1, g2, w, x, cfg).residual < 1e-10);
        CHECK(check_group(E1, g1, id, g2, w, x, cfg).residual < 1e-10);
        CHECK(check_group(E1, g1, g2, id, w, x, cfg).residual < 1e-10);
    } catch (const std::exception&) {
    }

    int done = 0;
    for (int trial = 0; trial < 400 && done < 20; ++trial) {
        auto a = sample_primitive(rng, 2);
        auto t1 = sample_translation(rng, 2);
        auto t2 = sample_translation(rng, 2);
        auto t3 = sample_translation(rng, 2);
        cvec3 y = sample_x_chart(rng, 2);
        cplx v = sample_w(rng);
        try {
            if (!in_domain(a, y)) continue;
            auto r = check_group(a, t1, t2, t3, v, y, cfg);
            CHECK(r.residual < 1e-7);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 20);

    done = 0;
    for (int trial = 0; trial < 600 && done < 20; ++trial) {
        auto a = sample_primitive(rng, 2);
        auto g = sample_group_element(rng, 3);
        auto h = sample_group_element(rng, 3);
        auto j = sample_group_element(rng, 3);
        cvec3 y = sample_x_chart(rng, 2);
        cplx v = sample_w(rng);
        try {
            if (!in_domain(a, y)) continue;
            auto r = check_group(a, g, h, j, v, y, cfg);
            CHECK(r.residual < 1e-6);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 20);
}

TEST_CASE("fit_phase synthetic recovery") {
    // e^{i pi w^2}: quadratic with coefficient i pi
    std::vector<std::pair<cplx, cplx>> vals;
    for (int i = 0; i < 20; ++i) {
        cplx w = cplx(0.02 * i - 0.2, 0.015 * i);
        vals.push_back({w, std::exp(cplx(0, M_PI) * w * w)});
    }
    auto fit = fit_phase(vals, 4, 1e-9);
    CHECK(fit.degree_used == 2);
    REQUIRE(fit.coefficients.size() >= 3);
    CHECK(std::abs(fit.coefficients[2] - cplx(0, M_PI)) < 1e-9);
    CHECK(std::abs(fit.coefficients[1]) < 1e-9);

    // identically 1: zero polynomial
    std::vector<std::pair<cplx, cplx>> ones;
    for (int i = 0; i < 12; ++i) ones.push_back({cplx(0.05 * i, 0.0), cplx(1.0, 0.0)});
    auto fz = fit_phase(ones, 3, 1e-9);
    CHECK(fz.degree_used == 0);
    CHECK(fz.residual < 1e-12);
    CHECK(std::abs(fz.coefficients[0]) < 1e-12);
}

TEST_CASE("fit_phase rejects too-coarse paths") {
    // per-step phase increment 1.75 > pi/2
    std::vector<std::pair<cplx, cplx>> vals;
    for (int i = 0; i < 12; ++i) {
        cplx w = cplx(0.5 * i, 0.0);
        vals.push_back({w, std::exp(cplx(0, 3.5) * w)});
    }
    CHECK_THROWS_AS(fit_phase(vals, 3, 1e-6), resample_error);
}

TEST_CASE("fit_phase on phi_abc paths stays within degree 3") {
    CounterRng rng(31, 10);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 6; ++trial) {
        auto a = sample_primitive(rng, 2);
        auto b = sample_primitive(rng, 2);
        auto c = sample_primitive(rng, 2);
        cvec3 x = sample_x_chart(rng, 2);
        try {
            std::vector<std::pair<cplx, cplx>> vals;
            for (int i = 0; i < 25; ++i) {
                cplx w = cplx(-0.15 + 0.012 * i, 0.06 + 0.005 * i);
                auto v = phi_abc(a, b, c, w, x, cfg);
                if (v.near_pole || v.near_zero) throw pole_error("skip", 0, 0);
                vals.push_back({w, v.value});
            }
            auto fit = fit_phase(vals, 5, 1e-6);
            CHECK(fit.degree_used <= 3);
            CHECK(fit.residual < 1e-6);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 6);
}

TEST_CASE("cocycle components are scale invariant") {
    CounterRng rng(31, 11);
    cvec3 x = find_x(rng, [&](const cvec3& y) {
        return in_domain(E1, y) && in_domain(E2, y) && pairs_moderate(y, {{E1, E2}, {E2, E3}});
    });
    cplx w = sample_w(rng);
    auto t = make_group_element(Mat3::identity(), DualVector{{1, 1, 0}});
    cplx p1 = phi_abc(E1, E2, E3, w, x, cfg).value;
    cplx p2 = phi_ab(E1, E2, t, w, x, cfg).value;
    cplx p3 = phi_a(E1, t, t, w, x, cfg).value;
    for (int i = 0; i < 10; ++i) {
        cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
        cvec3 lx{lam * x[0], lam * x[1], lam * x[2]};
        CHECK(rel_err(phi_abc(E1, E2, E3, lam * w, lx, cfg).value, p1) < 1e-9);
        CHECK(rel_err(phi_ab(E1, E2, t, lam * w, lx, cfg).value, p2) < 1e-9);
        CHECK(rel_err(phi_a(E1, t, t, lam * w, lx, cfg).value, p3) < 1e-9);
    }
}

TEST_CASE("hermitian weights pair exactly under the swap") {
    CounterRng rng(31, 12);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 20; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 3);
        cvec3 x = sample_x_chart(rng, 2);
        try {
            if (!moderate_pair(pair_factorization(a, b), x)) continue;
            cplx w = sample_w(rng);
            double prod = h_ab(a, b, w, x) * h_ab(b, a, w, x);
            CHECK(std::abs(prod - 1.0) < 1e-10);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 20);
}

TEST_CASE("hermitian triple gap vanishes for degenerate triples") {
    // c = a: both sides are 1 for every convention in the search set
    CounterRng rng(31, 13);
    int done = 0;
    for (int trial = 0; trial < 100 && done < 5; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 2);
        cvec3 x = sample_x_chart(rng, 2);
        try {
            if (!moderate_pair(pair_factorization(a, b), x)) continue;
            cplx w = sample_w(rng);
            HermitianTripleSample s{a, b, a, w, x};
            for (int eps : {1, 2})
                for (int sg : {+1, -1}) {
                    CHECK(hermitian_triple_gap(s, cfg, {eps, sg, 1.0, true}) < 1e-9);
                    CHECK(hermitian_triple_gap(s, cfg, {eps, sg, 1.0, false}) < 1e-9);
                }
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 5);
}

TEST_CASE("hermitian equivariant gap vanishes for translations along e1") {
    // mu = dual e1 at the standard pair: |phi_ab| = 1 and the weight
    // ratios cancel through H3(z + t1) - H3(z) = 3 H2(z, t2)
    CounterRng rng(31, 14);
    auto t = make_group_element(Mat3::identity(), DualVector{{1, 0, 0}});
    for (int trial = 0; trial < 10; ++trial) {
        cvec3 x = sample_x_standard(rng);
        cplx w = sample_w(rng);
        HermitianEquivSample s{E1, E2, t, w, x};
        for (int eps : {1, 2})
            for (int sg : {+1, -1})
                CHECK(hermitian_equivariant_gap(s, cfg, {eps, sg, 1.0, true}) < 1e-10);
    }
}

TEST_CASE("hermitian weight h_ab is choice independent") {
    // same invariance as the factorized gamma: the value does not depend
    // on which valid annihilator pair and fundamental set are used
    CounterRng rng(31, 20);
    auto h_ab_with = [&](const LatticeVector& a, const LatticeVector& b,
                         const DualVector& alpha, const DualVector& beta, cplx w,
                         const cvec3& x) {
        auto gp = primitive_gamma(a, b);
        auto F = fundamental_set(a, b, alpha, beta);
        cplx gx = gp.gamma(x);
        cplx tau = alpha(x) / gx, sigma = beta(x) / gx;
        double v = 1.0;
        for (const auto& d : F) v *= h_metric(3, (w + d(x)) / gx, {tau, sigma});
        return v;
    };
    int done = 0;
    for (int trial = 0; trial < 200 && done < 10; ++trial) {
        try {
            auto [a, b] = sample_independent_pair(rng, 2);
            auto pf = pair_factorization(a, b);
            cvec3 x = sample_x_chart(rng, 2);
            if (!moderate_pair(pf, x)) continue;
            cplx w = sample_w(rng);
            double base = h_ab(a, b, w, x);
            double v1 = h_ab_with(a, b, pf.alpha + 3 * pf.gamma, pf.beta - 2 * pf.gamma, w, x);
            double v2 = h_ab_with(a, b, 2 * pf.alpha + pf.gamma, 3 * pf.beta, w, x);
            CHECK(std::abs(v1 / base - 1.0) < 1e-10);
            CHECK(std::abs(v2 / base - 1.0) < 1e-10);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 10);
}

TEST_CASE("hermitian equivariant identity is exact on the unit-modulus stratum") {
    // wherever |phi_ab| = 1, the weight coboundary cancels exactly under
    // (exponent, sign) = (2, -1)
    CounterRng rng(31, 21);
    HermitianConvention conv{2, -1, 1.0, true};
    int done = 0;
    for (int trial = 0; trial < 2000 && done < 15; ++trial) {
        try {
            auto [a, b] = sample_independent_pair(rng, 2);
            GroupElement g = sample_group_element(rng, 4);
            cvec3 x = sample_x_chart(rng, 3);
            if (!in_domain(a, x) || !in_domain(b, x)) continue;
            if (!moderate_pair(pair_factorization(a, b), x)) continue;
            Mat3 gi = inverse_unimodular(g.g);
            ModuliArg gp = inv_act(g, cplx(0.0, 0.0), x);
            if (!moderate_pair(pair_factorization(mul(gi, a), mul(gi, b)), gp.x)) continue;
            cplx w = sample_w(rng);
            auto v = phi_ab(a, b, g, w, x, cfg);
            if (v.near_pole || v.near_zero) continue;
            if (std::abs(std::abs(v.value) - 1.0) > 1e-9) continue;
            CHECK(hermitian_equivariant_gap({a, b, g, w, x}, cfg, conv) < 1e-9);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 15);
}

TEST_CASE("hermitian equivariant log-gap is independent of w") {
    // the weights reproduce the entire polynomial w-dependence of
    // log|phi_ab|; only a configuration constant can remain
    CounterRng rng(31, 22);
    int done = 0;
    for (int trial = 0; trial < 2000 && done < 6; ++trial) {
        try {
            auto [a, b] = sample_independent_pair(rng, 2);
            GroupElement t = sample_translation(rng, 3);
            cvec3 x = sample_x_chart(rng, 3);
            if (!in_domain(a, x) || !in_domain(b, x)) continue;
            if (!moderate_pair(pair_factorization(a, b), x)) continue;
            cplx w0 = sample_w(rng);
            auto defect = [&](cplx w) {
                ModuliArg gp = inv_act(t, w, x);
                Mat3 gi = inverse_unimodular(t.g);
                double X = std::log(h_ab(mul(gi, a), mul(gi, b), gp.w, gp.x)) -
                           std::log(h_ab(a, b, w, x)) + std::log(h_a(b, t, w, x)) -
                           std::log(h_a(a, t, w, x));
                auto v = phi_ab(a, b, t, w, x, cfg);
                if (v.near_pole || v.near_zero) throw pole_error("skip", 0, 0);
                return -X - 2.0 * v.logv.real();
            };
            double d0 = defect(w0);
            double d1 = defect(w0 + cplx(0.21, 0.0));
            double d2 = defect(w0 + cplx(0.0, 0.17));
            CHECK(std::abs(d1 - d0) < 1e-8);
            CHECK(std::abs(d2 - d0) < 1e-8);
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    CHECK(done == 6);
}

TEST_CASE("hermitian search reports a full table and a best convention") {
    CounterRng rng(31, 15);
    std::vector<HermitianTripleSample> triples;
    std::vector<HermitianEquivSample> equivs;
    auto t = make_group_element(Mat3::identity(), DualVector{{1, 0, 0}});
    for (int i = 0; i < 4; ++i) {
        cvec3 x = sample_x_standard(rng);
        cplx w = sample_w(rng);
        triples.push_back({E1, E2, E1, w, x});  // degenerate: exact for all
        equivs.push_back({E1, E2, t, w, x});
    }
    auto res = check_hermitian(triples, equivs, cfg);
    CHECK(res.table.size() == 16);
    CHECK(res.max_residual < 1e-9);
    for (const auto& [conv, r] : res.table) CHECK(r >= res.max_residual - 1e-30);
}

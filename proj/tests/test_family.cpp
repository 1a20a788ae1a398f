#include "doctest.h"

#include <cmath>

#include "ggl/bernoulli.hpp"
#include "ggl/errors.hpp"
#include "ggl/family.hpp"
#include "ggl/rng.hpp"
#include "ggl/sampling.hpp"
#include "oracles.hpp"

using namespace ggl;

namespace {

const EvalConfig cfg{};
const LatticeVector e1{{1, 0, 0}};
const LatticeVector e2{{0, 1, 0}};

double rel_err(cplx got, cplx want) {
    double scale = std::max(std::abs(want), 1e-30);
    return std::abs(got - want) / scale;
}

// Product of ordinary gamma factors for a user-supplied annihilator pair;
// used to test choice independence of the factorized form.
cplx gamma_ab_with(const LatticeVector& a, const LatticeVector& b, const DualVector& alpha,
                   const DualVector& beta, cplx w, const cvec3& x) {
    auto gp = primitive_gamma(a, b);
    auto F = fundamental_set(a, b, alpha, beta);
    cplx gx = gp.gamma(x);
    cplx tau = alpha(x) / gx, sigma = beta(x) / gx;
    cplx v = 1.0;
    for (const auto& d : F) v *= elliptic_gamma((w + d(x)) / gx, tau, sigma, cfg);
    return v;
}

} // namespace

TEST_CASE("gamma_ab recovers the ordinary elliptic gamma function") {
    CounterRng rng(21, 1);
    for (int i = 0; i < 20; ++i) {
        cplx w = sample_w(rng);
        cvec3 x = sample_x_standard(rng);
        cplx lhs = gamma_ab(e1, e2, w, x, cfg);
        cplx rhs = elliptic_gamma(w, x[0], x[1], cfg);
        CHECK(rel_err(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("gamma_{a,+-a} = 1") {
    CounterRng rng(21, 2);
    for (int i = 0; i < 10; ++i) {
        auto a = sample_primitive(rng, 3);
        cplx w = sample_w(rng);
        cvec3 x = sample_x_chart(rng, 3);
        CHECK(gamma_ab(a, a, w, x, cfg) == cplx(1.0, 0.0));
        CHECK(gamma_ab(a, -a, w, x, cfg) == cplx(1.0, 0.0));
    }
}

TEST_CASE("antisymmetry gamma_ab * gamma_ba = 1") {
    CounterRng rng(21, 3);
    int checked = 0;
    for (int trial = 0; trial < 500 && checked < 50; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 3);
        cvec3 x = sample_x_standard(rng);
        auto pf = pair_factorization(a, b);
        auto pg = pair_factorization(b, a);
        if (!moderate_pair(pf, x) || !moderate_pair(pg, x)) continue;
        cplx w = sample_w(rng);
        cplx prod;
        try {
            prod = gamma_ab(a, b, w, x, cfg) * gamma_ab(b, a, w, x, cfg);
        } catch (const pole_error&) {
            continue;
        }
        CHECK(rel_err(prod, cplx(1.0, 0.0)) < 1e-9);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("factorized value is independent of the annihilator choice") {
    CounterRng rng(21, 4);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 12; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 2);
        auto pf = pair_factorization(a, b);
        cvec3 x = sample_x_standard(rng);
        if (!moderate_pair(pf, x)) continue;
        cplx w = sample_w(rng);

        cplx base;
        try {
            base = gamma_ab(a, b, w, x, cfg);
        } catch (const pole_error&) {
            continue;
        }

        // shift by gamma: same box sizes, different representatives
        DualVector a1 = pf.alpha + 3 * pf.gamma;
        DualVector b1 = pf.beta - 2 * pf.gamma;
        // enlarge: doubles/triples the fundamental set
        DualVector a2 = 2 * pf.alpha + pf.gamma;
        DualVector b2 = 3 * pf.beta;

        try {
            cplx v1 = gamma_ab_with(a, b, a1, b1, w, x);
            CHECK(rel_err(v1, base) < 1e-9);
            cplx v2 = gamma_ab_with(a, b, a2, b2, w, x);
            CHECK(rel_err(v2, base) < 1e-9);
        } catch (const pole_error&) {
            continue;
        }
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("gamma_ab homogeneity in (w, x)") {
    CounterRng rng(21, 5);
    for (int trial = 0; trial < 10; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 3);
        cvec3 x = sample_x_standard(rng);
        auto pf = pair_factorization(a, b);
        if (!moderate_pair(pf, x)) continue;
        cplx w = sample_w(rng);
        cplx base;
        try {
            base = gamma_ab(a, b, w, x, cfg);
        } catch (const pole_error&) {
            continue;
        }
        for (int i = 0; i < 10; ++i) {
            cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
            cvec3 lx{lam * x[0], lam * x[1], lam * x[2]};
            CHECK(rel_err(gamma_ab(a, b, lam * w, lx, cfg), base) < 1e-9);
        }
    }
}

TEST_CASE("cone product certifies and agrees with the factorized form") {
    CounterRng rng(21, 6);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 20; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 2);
        auto pf = pair_factorization(a, b);
        // place the effective periods in the cone-convergence regime
        cplx tau_eff = rng.box(-0.4, 0.4, -1.3, -0.5);
        cplx sigma_eff = rng.box(-0.4, 0.4, 0.5, 1.3);
        cvec3 x = x_from_effective(pf, tau_eff, sigma_eff);
        cplx w = sample_w(rng);

        ConeProductReport rep;
        cplx direct;
        try {
            rep = gamma_ab_cone(a, b, w, x, cfg);
            direct = gamma_ab(a, b, w, x, cfg);
        } catch (const pole_error&) {
            continue;
        }
        REQUIRE(rep.certified());
        CHECK(rep.edge_decay[0] > 0.0);
        CHECK(rep.edge_decay[1] > 0.0);
        CHECK(rel_err(*rep.value, direct) < 1e-8);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("cone product declines divergent regimes") {
    CounterRng rng(21, 7);
    // at the standard point the m-edge of C_{+-} grows for (e1, e2)
    cvec3 x = sample_x_standard(rng);
    auto rep = gamma_ab_cone(e1, e2, cplx(0.11, 0.07), x, cfg);
    CHECK_FALSE(rep.certified());
    CHECK(rep.edge_decay[0] <= 0.0);
}

TEST_CASE("cone product antisymmetry where both sides certify") {
    CounterRng rng(21, 8);
    int checked = 0;
    for (int trial = 0; trial < 100 && checked < 10; ++trial) {
        auto [a, b] = sample_independent_pair(rng, 2);
        auto pf = pair_factorization(a, b);
        cplx tau_eff = rng.box(-0.4, 0.4, -1.2, -0.5);
        cplx sigma_eff = rng.box(-0.4, 0.4, 0.5, 1.2);
        cvec3 x = x_from_effective(pf, tau_eff, sigma_eff);
        cplx w = sample_w(rng);
        try {
            auto r1 = gamma_ab_cone(a, b, w, x, cfg);
            auto r2 = gamma_ab_cone(b, a, w, x, cfg);
            if (!r1.certified() || !r2.certified()) continue;
            CHECK(rel_err(*r1.value * *r2.value, cplx(1.0, 0.0)) < 1e-8);
            ++checked;
        } catch (const pole_error&) {
            continue;
        }
    }
    CHECK(checked == 10);
}

TEST_CASE("delta basics") {
    CounterRng rng(21, 9);
    cvec3 x = sample_x_standard(rng);
    cplx w = sample_w(rng);

    CHECK(delta(e1, GroupElement::identity(), w, x, cfg) == cplx(1.0, 0.0));

    // one-factor case: mu = dual e1, a = e1 gives theta0(w, sigma)
    auto t = make_group_element(Mat3::identity(), DualVector{{1, 0, 0}});
    cplx lhs = delta(e1, t, w, x, cfg);
    cplx rhs = theta0(w, x[1], cfg);
    CHECK(rel_err(lhs, rhs) < 1e-12);
    CHECK(rel_err(lhs, oracles::theta0_direct(w, x[1], 40)) < 1e-10);
}

TEST_CASE("delta concatenation law across the negative-count convention") {
    CounterRng rng(21, 10);
    cvec3 x = sample_x_standard(rng);
    cplx w = sample_w(rng);
    cplx A1 = x[0];  // alpha1(x) for the canonical framing of e1

    auto elem = [&](std::int64_t n) {
        return make_group_element(Mat3::identity(), DualVector{{n, 0, 0}});
    };
    for (std::int64_t n = -2; n <= 3; ++n)
        for (std::int64_t m = -2; m <= 3; ++m) {
            cplx whole = delta(e1, elem(n + m), w, x, cfg);
            cplx split = delta(e1, elem(n), w, x, cfg) *
                         delta(e1, elem(m), w + double(n) * A1, x, cfg);
            CHECK(rel_err(whole, split) < 1e-10);
        }
}

TEST_CASE("delta domain and degeneracy errors") {
    CounterRng rng(21, 11);
    cvec3 x = sample_x_standard(rng);
    cplx w = sample_w(rng);

    // the canonical framing of e2 has effective period -tau at the
    // standard point, so the theta argument leaves the upper half plane
    auto t2 = make_group_element(Mat3::identity(), DualVector{{0, 1, 0}});
    CHECK_THROWS_AS(delta(e2, t2, w, x, cfg), domain_error);

    cvec3 xdeg{x[0], x[1], cplx(1e-15, 0.0)};
    auto t1 = make_group_element(Mat3::identity(), DualVector{{1, 0, 0}});
    CHECK_THROWS_AS(delta(e1, t1, w, xdeg, cfg), degenerate_error);
    CHECK_THROWS_AS(gamma_ab(e1, e2, w, xdeg, cfg), degenerate_error);
}

TEST_CASE("gamma_ab pole reporting") {
    cvec3 x{cplx(0.1, 0.9), cplx(-0.2, 0.7), cplx(1.0, 0.0)};
    CHECK_THROWS_AS(gamma_ab(e1, e2, cplx(1e-13, 0.0), x, cfg), pole_error);
}

TEST_CASE("delta homogeneity in (w, x)") {
    CounterRng rng(21, 12);
    auto t = make_group_element(Mat3::identity(), DualVector{{2, 1, 0}});
    for (int trial = 0; trial < 5; ++trial) {
        cvec3 x = sample_x_standard(rng);
        cplx w = sample_w(rng);
        cplx base = delta(e1, t, w, x, cfg);
        for (int i = 0; i < 4; ++i) {
            cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
            cvec3 lx{lam * x[0], lam * x[1], lam * x[2]};
            CHECK(rel_err(delta(e1, t, lam * w, lx, cfg), base) < 1e-9);
        }
    }
}

#include "ggl/sampling.hpp"

#include <cmath>

namespace ggl {

LatticeVector sample_primitive(CounterRng& rng, std::int64_t bound) {
    for (;;) {
        LatticeVector v;
        for (int i = 0; i < 3; ++i) v[i] = rng.uniform_int(-bound, bound);
        if (v.is_zero()) continue;
        if (is_primitive(v)) return v;
    }
}

std::pair<LatticeVector, LatticeVector> sample_independent_pair(CounterRng& rng,
                                                                std::int64_t bound) {
    for (;;) {
        LatticeVector a = sample_primitive(rng, bound);
        LatticeVector b = sample_primitive(rng, bound);
        if (cross(DualVector{a.e}, DualVector{b.e}).is_zero()) continue;
        return {a, b};
    }
}

GroupElement sample_group_element(CounterRng& rng, int max_len) {
    GroupElement g = GroupElement::identity();
    int len = int(rng.uniform_int(0, max_len));
    for (int i = 0; i < len; ++i) {
        int pick = int(rng.uniform_int(0, 17));
        if (pick < 12) {
            static const int pairs[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
            Mat3 m = Mat3::identity();
            m(pairs[pick / 2][0], pairs[pick / 2][1]) = (pick % 2) ? -1 : 1;
            g = compose(g, make_group_element(m, DualVector{}));
        } else {
            DualVector mu;
            mu[(pick - 12) / 2] = ((pick - 12) % 2) ? -1 : 1;
            g = compose(g, make_group_element(Mat3::identity(), mu));
        }
    }
    return g;
}

GroupElement sample_translation(CounterRng& rng, std::int64_t bound) {
    DualVector mu;
    for (int i = 0; i < 3; ++i) mu[i] = rng.uniform_int(-bound, bound);
    return make_group_element(Mat3::identity(), mu);
}

cvec3 sample_x_standard(CounterRng& rng) {
    cplx tau = rng.box(-0.5, 0.5, 0.4, 1.5);
    cplx sigma = rng.box(-0.5, 0.5, 0.4, 1.5);
    return cvec3{tau, sigma, cplx(1.0, 0.0)};
}

cvec3 sample_x_chart(CounterRng& rng, int max_word) {
    cvec3 x = sample_x_standard(rng);
    GroupElement g = sample_group_element(rng, max_word);
    return mul(g.g, x);
}

cplx sample_w(CounterRng& rng) {
    double r = 0.4 * std::sqrt(rng.uniform());
    double ph = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    return std::polar(r, ph);
}

cvec3 x_from_effective(const PairFactorization& pf, cplx tau_eff, cplx sigma_eff, cplx g0) {
    // Rows alpha, beta, gamma are independent over Q; invert by adjugate.
    Mat3 M;
    for (int j = 0; j < 3; ++j) {
        M(0, j) = pf.alpha[j];
        M(1, j) = pf.beta[j];
        M(2, j) = pf.gamma[j];
    }
    std::int64_t d = det(M);
    // adjugate: adj(i,j) = cofactor(j,i)
    Mat3 adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
            int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            adj(i, j) = checked_sub(checked_mul(M(i1, j1), M(i2, j2)),
                                    checked_mul(M(i1, j2), M(i2, j1)));
        }
    cvec3 target{tau_eff * g0, sigma_eff * g0, g0};
    cvec3 x = mul(adj, target);
    for (auto& xi : x) xi /= double(d);
    return x;
}

bool moderate_pair(const PairFactorization& pf, const cvec3& x, double lo, double hi) {
    cplx gx = pf.gamma(x);
    double scale = 0.0;
    for (const auto& xi : x) scale = std::max(scale, std::abs(xi));
    if (std::abs(gx) < 0.05 * scale) return false;
    cplx tau = pf.alpha(x) / gx;
    cplx sigma = pf.beta(x) / gx;
    double it = std::abs(tau.imag()), is = std::abs(sigma.imag());
    return it >= lo && it <= hi && is >= lo && is <= hi;
}

} // namespace ggl

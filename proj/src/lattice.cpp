#include "ggl/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "ggl/errors.hpp"

namespace ggl {

std::int64_t det(const Mat3& g) {
    const auto& m = g.m;
    std::int64_t c0 = checked_sub(checked_mul(m[1][1], m[2][2]), checked_mul(m[1][2], m[2][1]));
    std::int64_t c1 = checked_sub(checked_mul(m[1][0], m[2][2]), checked_mul(m[1][2], m[2][0]));
    std::int64_t c2 = checked_sub(checked_mul(m[1][0], m[2][1]), checked_mul(m[1][1], m[2][0]));
    return checked_add(checked_sub(checked_mul(m[0][0], c0), checked_mul(m[0][1], c1)),
                       checked_mul(m[0][2], c2));
}

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < 3; ++k)
                s = checked_add(s, checked_mul(a(i, k), b(k, j)));
            r(i, j) = s;
        }
    return r;
}

LatticeVector mul(const Mat3& g, const LatticeVector& v) {
    LatticeVector r;
    for (int i = 0; i < 3; ++i) {
        std::int64_t s = 0;
        for (int k = 0; k < 3; ++k) s = checked_add(s, checked_mul(g(i, k), v[k]));
        r[i] = s;
    }
    return r;
}

cvec3 mul(const Mat3& g, const cvec3& x) {
    cvec3 r;
    for (int i = 0; i < 3; ++i) {
        cplx s = 0.0;
        for (int k = 0; k < 3; ++k) s += double(g(i, k)) * x[k];
        r[size_t(i)] = s;
    }
    return r;
}

DualVector mul(const DualVector& d, const Mat3& g) {
    DualVector r;
    for (int j = 0; j < 3; ++j) {
        std::int64_t s = 0;
        for (int k = 0; k < 3; ++k) s = checked_add(s, checked_mul(d[k], g(k, j)));
        r[j] = s;
    }
    return r;
}

Mat3 inverse_unimodular(const Mat3& g) {
    if (det(g) != 1) throw std::invalid_argument("inverse_unimodular: det != 1");
    Mat3 r;  // adjugate
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
            int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            r(i, j) = checked_sub(checked_mul(g(i1, j1), g(i2, j2)),
                                  checked_mul(g(i1, j2), g(i2, j1)));
        }
    return r;
}

GroupElement make_group_element(const Mat3& g, const DualVector& mu) {
    if (det(g) != 1)
        throw std::invalid_argument("group element requires det(g) = 1, got " +
                                    std::to_string(det(g)));
    return GroupElement{g, mu};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    return GroupElement{mul(a.g, b.g), b.mu + mul(a.mu, b.g)};
}

GroupElement inverse(const GroupElement& a) {
    Mat3 gi = inverse_unimodular(a.g);
    return GroupElement{gi, -mul(a.mu, gi)};
}

ModuliArg act(const GroupElement& ghat, const cplx& w, const cvec3& x) {
    return ModuliArg{w - ghat.mu(x), mul(ghat.g, x)};
}

ModuliArg inv_act(const GroupElement& ghat, const cplx& w, const cvec3& x) {
    Mat3 gi = inverse_unimodular(ghat.g);
    cvec3 xi = mul(gi, x);
    return ModuliArg{w + ghat.mu(xi), xi};
}

namespace {

std::int64_t content3(const std::array<std::int64_t, 3>& e) {
    return gcd64(gcd64(e[0], e[1]), e[2]);
}

} // namespace

bool is_primitive(const LatticeVector& v) {
    if (v.is_zero()) throw std::invalid_argument("is_primitive: zero vector");
    return content3(v.e) == 1;
}

bool is_primitive(const DualVector& v) {
    if (v.is_zero()) throw std::invalid_argument("is_primitive: zero vector");
    return content3(v.e) == 1;
}

LatticeVector cross(const DualVector& u, const DualVector& v) {
    LatticeVector r;
    r[0] = checked_sub(checked_mul(u[1], v[2]), checked_mul(u[2], v[1]));
    r[1] = checked_sub(checked_mul(u[2], v[0]), checked_mul(u[0], v[2]));
    r[2] = checked_sub(checked_mul(u[0], v[1]), checked_mul(u[1], v[0]));
    return r;
}

std::int64_t det_rows(const DualVector& r1, const DualVector& r2, const DualVector& r3) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
        m(0, j) = r1[j];
        m(1, j) = r2[j];
        m(2, j) = r3[j];
    }
    return det(m);
}

GammaPair primitive_gamma(const LatticeVector& a, const LatticeVector& b) {
    // det(a, b, c) = c . (a x b), so the covector is the integer cross product.
    DualVector d;
    d[0] = checked_sub(checked_mul(a[1], b[2]), checked_mul(a[2], b[1]));
    d[1] = checked_sub(checked_mul(a[2], b[0]), checked_mul(a[0], b[2]));
    d[2] = checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0]));
    if (d.is_zero()) throw degenerate_error("primitive_gamma: a, b are parallel");
    std::int64_t s = content3(d.e);
    DualVector gamma;
    for (int i = 0; i < 3; ++i) gamma[i] = d[i] / s;
    return GammaPair{gamma, s};
}

namespace {

// Row pair (image point, tracked preimage) for the Hermite reduction of
// the map d |-> (d(a), d(b)).
struct TrackedRow {
    std::int64_t m, n;
    DualVector pre;
};

void row_sub(TrackedRow& r, const TrackedRow& o, std::int64_t q) {
    r.m = checked_sub(r.m, checked_mul(q, o.m));
    r.n = checked_sub(r.n, checked_mul(q, o.n));
    r.pre = r.pre - q * o.pre;
}

void row_negate(TrackedRow& r) {
    r.m = checked_neg(r.m);
    r.n = checked_neg(r.n);
    r.pre = -r.pre;
}

} // namespace

bool ConeBasis::contains(std::int64_t m, std::int64_t n) const {
    if (n % d2 != 0) return false;
    std::int64_t c2 = n / d2;
    return (m - checked_mul(c2, e)) % d1 == 0;
}

DualVector ConeBasis::section(std::int64_t m, std::int64_t n) const {
    if (n % d2 != 0) throw std::invalid_argument("section: point not in image lattice");
    std::int64_t c2 = n / d2;
    std::int64_t rem = checked_sub(m, checked_mul(c2, e));
    if (rem % d1 != 0) throw std::invalid_argument("section: point not in image lattice");
    std::int64_t c1 = rem / d1;
    return c1 * u + c2 * v;
}

ConeBasis cone_basis(const LatticeVector& a, const LatticeVector& b) {
    if (!is_primitive(a) || !is_primitive(b))
        throw std::invalid_argument("cone_basis: a, b must be primitive");
    GammaPair gp = primitive_gamma(a, b);  // throws on parallel input

    std::array<TrackedRow, 3> rows;
    for (int i = 0; i < 3; ++i) {
        DualVector ei;
        ei[i] = 1;
        rows[size_t(i)] = TrackedRow{a[i], b[i], ei};
    }

    auto euclid_column = [&](auto getcol, int skip) -> int {
        // Reduce the chosen column to a single nonzero entry; returns its row.
        for (;;) {
            int piv = -1;
            for (int i = 0; i < 3; ++i) {
                if (i == skip) continue;
                std::int64_t c = getcol(rows[size_t(i)]);
                if (c == 0) continue;
                if (piv < 0 || abs64(c) < abs64(getcol(rows[size_t(piv)]))) piv = i;
            }
            if (piv < 0) return -1;
            bool others = false;
            for (int i = 0; i < 3; ++i) {
                if (i == skip || i == piv) continue;
                std::int64_t c = getcol(rows[size_t(i)]);
                if (c == 0) continue;
                std::int64_t q = c / getcol(rows[size_t(piv)]);
                row_sub(rows[size_t(i)], rows[size_t(piv)], q);
                if (getcol(rows[size_t(i)]) != 0) others = true;
            }
            if (!others) {
                if (getcol(rows[size_t(piv)]) < 0) row_negate(rows[size_t(piv)]);
                return piv;
            }
        }
    };

    int p2 = euclid_column([](const TrackedRow& r) { return r.n; }, -1);
    if (p2 < 0) throw degenerate_error("cone_basis: b pairs to zero");
    int p1 = euclid_column([](const TrackedRow& r) { return r.m; }, p2);
    if (p1 < 0) throw degenerate_error("cone_basis: image lattice has rank < 2");

    ConeBasis cb;
    cb.a = a;
    cb.b = b;
    cb.gamma = gp.gamma;
    cb.s = gp.s;
    cb.d1 = rows[size_t(p1)].m;
    cb.d2 = rows[size_t(p2)].n;
    // Reduce the (e, d2) row's first entry into [0, d1).
    std::int64_t q = floor_div(rows[size_t(p2)].m, cb.d1);
    row_sub(rows[size_t(p2)], rows[size_t(p1)], q);
    cb.e = rows[size_t(p2)].m;
    cb.u = rows[size_t(p1)].pre;
    cb.v = rows[size_t(p2)].pre;

    // The image-lattice index equals the invariant s from det(a,b,.) = s*gamma.
    if (checked_mul(cb.d1, cb.d2) != cb.s)
        throw std::logic_error("cone_basis: index mismatch (d1*d2 != s)");
    return cb;
}

namespace {

// Canonical representative of d modulo Z*gamma: minimal Euclidean norm,
// lexicographically smallest on ties.
DualVector reduce_mod_gamma(const DualVector& d, const DualVector& gamma) {
    auto norm2 = [](const DualVector& z) {
        std::int64_t s = 0;
        for (int i = 0; i < 3; ++i) s = checked_add(s, checked_mul(z[i], z[i]));
        return s;
    };
    std::int64_t gg = norm2(gamma);
    std::int64_t dg = 0;
    for (int i = 0; i < 3; ++i) dg = checked_add(dg, checked_mul(d[i], gamma[i]));
    std::int64_t t0 = floor_div(-dg, gg);  // floor of the real minimiser
    DualVector best = d + t0 * gamma;
    DualVector cand = d + (t0 + 1) * gamma;
    std::int64_t nb = norm2(best), nc = norm2(cand);
    if (nc < nb || (nc == nb && cand.e < best.e)) best = cand;
    return best;
}

} // namespace

AnnihilatorPair annihilator_pair(const LatticeVector& a, const LatticeVector& b) {
    ConeBasis cb = cone_basis(a, b);
    // Minimal positive value on a among covectors annihilating b is the
    // Hermite pivot d1; symmetrically the minimal beta(b) is the least
    // positive n with (0, n) in the image lattice.
    DualVector alpha = cb.section(cb.d1, 0);
    std::int64_t c2 = cb.d1 / gcd64(cb.e, cb.d1);  // gcd(0, d1) = d1 when e = 0
    std::int64_t n0 = checked_mul(c2, cb.d2);
    DualVector beta = cb.section(0, n0);
    return AnnihilatorPair{reduce_mod_gamma(alpha, cb.gamma),
                           reduce_mod_gamma(beta, cb.gamma)};
}

std::vector<DualVector> fundamental_set(const LatticeVector& a, const LatticeVector& b,
                                        const DualVector& alpha, const DualVector& beta) {
    ConeBasis cb = cone_basis(a, b);
    std::int64_t A = alpha(a), B = beta(b);
    if (alpha(b) != 0 || beta(a) != 0 || A <= 0 || B <= 0)
        throw std::invalid_argument(
            "fundamental_set: need alpha(b) = beta(a) = 0, alpha(a) > 0, beta(b) > 0");

    std::vector<DualVector> out;
    out.reserve(size_t((A / cb.d1) * (B / cb.d2)));
    for (std::int64_t n = 0; n < B; n += cb.d2) {
        std::int64_t c2 = n / cb.d2;
        std::int64_t r = (checked_mul(c2, cb.e) % cb.d1 + cb.d1) % cb.d1;
        for (std::int64_t m = r; m < A; m += cb.d1)
            out.push_back(cb.section(m, n));
    }
    return out;
}

namespace {

// Unimodular M (det = 1) with M v = e1, built by deterministic integer
// row operations; rows 2 and 3 are then a basis of the annihilator of v.
Mat3 unimodular_completion(const LatticeVector& v) {
    std::array<std::int64_t, 3> r = v.e;
    Mat3 M = Mat3::identity();

    auto row_op = [&](int i, int j, std::int64_t q) {
        // row_i -= q * row_j
        r[size_t(i)] = checked_sub(r[size_t(i)], checked_mul(q, r[size_t(j)]));
        for (int c = 0; c < 3; ++c) M(i, c) = checked_sub(M(i, c), checked_mul(q, M(j, c)));
    };
    auto swap_negate = [&](int i, int j) {
        // (row_i, row_j) <- (row_j, -row_i), determinant preserving
        std::swap(r[size_t(i)], r[size_t(j)]);
        r[size_t(j)] = checked_neg(r[size_t(j)]);
        for (int c = 0; c < 3; ++c) {
            std::swap(M(i, c), M(j, c));
            M(j, c) = checked_neg(M(j, c));
        }
    };

    auto euclid_pair = [&](int i, int j) {
        // Zero out r[j] by Euclid between rows i and j.
        while (r[size_t(j)] != 0) {
            std::int64_t q = floor_div(r[size_t(i)], r[size_t(j)]);
            row_op(i, j, q);
            swap_negate(i, j);
        }
    };

    euclid_pair(1, 2);
    euclid_pair(0, 1);
    if (r[0] < 0) {
        // Negate rows 1 and 2 together to keep det = 1.
        r[0] = checked_neg(r[0]);
        for (int c = 0; c < 3; ++c) {
            M(0, c) = checked_neg(M(0, c));
            M(1, c) = checked_neg(M(1, c));
        }
    }
    assert(r[0] == 1 && r[1] == 0 && r[2] == 0);
    assert(det(M) == 1);
    return M;
}

int leftmost_nonzero(const DualVector& d) {
    for (int j = 0; j < 3; ++j)
        if (d[j] != 0) return j;
    return 3;
}

} // namespace

Framing framing(const LatticeVector& a) {
    if (!is_primitive(a)) throw std::invalid_argument("framing: a must be primitive");
    Mat3 M = unimodular_completion(a);
    DualVector a1{{M(0, 0), M(0, 1), M(0, 2)}};
    DualVector h1{{M(1, 0), M(1, 1), M(1, 2)}};
    DualVector h2{{M(2, 0), M(2, 1), M(2, 2)}};

    // Hermite form of the annihilator rows (h1, h2).
    int j1 = std::min(leftmost_nonzero(h1), leftmost_nonzero(h2));
    while (h1[j1] != 0 && h2[j1] != 0) {
        if (abs64(h1[j1]) > abs64(h2[j1])) std::swap(h1, h2);
        std::int64_t q = h2[j1] / h1[j1];
        h2 = h2 - q * h1;
    }
    if (h1[j1] == 0) std::swap(h1, h2);
    if (h1[j1] < 0) h1 = -h1;
    int j2 = leftmost_nonzero(h2);
    if (h2[j2] < 0) h2 = -h2;
    h1 = h1 - floor_div(h1[j2], h2[j2]) * h2;  // 0 <= h1[j2] < h2[j2]

    DualVector a2 = h1, a3 = h2;
    std::int64_t d = det_rows(a1, a2, a3);
    if (d < 0) a3 = -a3;

    // Reduce a1 into the canonical box modulo the annihilator plane.
    a1 = a1 - floor_div(a1[j1], a2[j1]) * a2;
    std::int64_t p = a3[j2];
    std::int64_t pp = abs64(p);
    std::int64_t rem = ((a1[j2] % pp) + pp) % pp;
    a1 = a1 - ((a1[j2] - rem) / p) * a3;

    Framing f{a1, a2, a3};
    assert(f.alpha1(a) == 1 && f.alpha2(a) == 0 && f.alpha3(a) == 0);
    assert(det_rows(f.alpha1, f.alpha2, f.alpha3) > 0);
    return f;
}

} // namespace ggl

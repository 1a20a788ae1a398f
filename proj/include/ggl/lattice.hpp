#ifndef GGL_LATTICE_HPP
#define GGL_LATTICE_HPP

// Exact integer linear algebra on the rank-3 lattice L = Z^3 and its dual.
//
// The conventions used throughout:
//   - LatticeVector: column vector a in Z^3.
//   - DualVector: covector d, d(v) = d1 v1 + d2 v2 + d3 v3; also evaluated
//     on complex 3-vectors by the same formula.
//   - primitive_gamma(a,b): the unique primitive gamma with
//     det(a, b, c) = s * gamma(c) for all c, s > 0 (gamma = (a x b)/s).
//   - cone_basis(a,b): image lattice of d |-> (d(a), d(b)) in Hermite form,
//     with a linear section back into the dual lattice; the kernel of the
//     map is exactly Z*gamma.
//   - framing(a): canonical oriented dual basis (a1, a2, a3) with
//     a1(a) = 1, a2(a) = a3(a) = 0 and det(a1, a2, a3) > 0.
//   - GroupElement (g, mu) in SL3(Z) x| Z^3 acting on (w, x) by
//     (w, x) |-> (w - mu(x), g x); the product is fixed by requiring
//     act(gh) = act(g) o act(h).

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "ggl/ints.hpp"

namespace ggl {

using cplx = std::complex<double>;
using cvec3 = std::array<cplx, 3>;

struct LatticeVector {
    std::array<std::int64_t, 3> e{0, 0, 0};

    std::int64_t operator[](int i) const { return e[static_cast<size_t>(i)]; }
    std::int64_t& operator[](int i) { return e[static_cast<size_t>(i)]; }
    bool operator==(const LatticeVector&) const = default;
    bool is_zero() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }
};

struct DualVector {
    std::array<std::int64_t, 3> e{0, 0, 0};

    std::int64_t operator[](int i) const { return e[static_cast<size_t>(i)]; }
    std::int64_t& operator[](int i) { return e[static_cast<size_t>(i)]; }
    bool operator==(const DualVector&) const = default;
    bool is_zero() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }

    std::int64_t operator()(const LatticeVector& v) const {
        return checked_add(checked_add(checked_mul(e[0], v.e[0]),
                                       checked_mul(e[1], v.e[1])),
                           checked_mul(e[2], v.e[2]));
    }
    cplx operator()(const cvec3& x) const {
        return double(e[0]) * x[0] + double(e[1]) * x[1] + double(e[2]) * x[2];
    }
};

inline LatticeVector operator+(LatticeVector a, const LatticeVector& b) {
    for (int i = 0; i < 3; ++i) a[i] = checked_add(a[i], b[i]);
    return a;
}
inline LatticeVector operator-(const LatticeVector& a) {
    LatticeVector r;
    for (int i = 0; i < 3; ++i) r[i] = checked_neg(a[i]);
    return r;
}
inline LatticeVector operator*(std::int64_t c, LatticeVector a) {
    for (int i = 0; i < 3; ++i) a[i] = checked_mul(c, a[i]);
    return a;
}
inline DualVector operator+(DualVector a, const DualVector& b) {
    for (int i = 0; i < 3; ++i) a[i] = checked_add(a[i], b[i]);
    return a;
}
inline DualVector operator-(DualVector a, const DualVector& b) {
    for (int i = 0; i < 3; ++i) a[i] = checked_sub(a[i], b[i]);
    return a;
}
inline DualVector operator-(const DualVector& a) {
    DualVector r;
    for (int i = 0; i < 3; ++i) r[i] = checked_neg(a[i]);
    return r;
}
inline DualVector operator*(std::int64_t c, DualVector a) {
    for (int i = 0; i < 3; ++i) a[i] = checked_mul(c, a[i]);
    return a;
}

// 3x3 integer matrix, row-major.
struct Mat3 {
    std::array<std::array<std::int64_t, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Mat3 identity() { return Mat3{}; }
    std::int64_t operator()(int i, int j) const { return m[size_t(i)][size_t(j)]; }
    std::int64_t& operator()(int i, int j) { return m[size_t(i)][size_t(j)]; }
    bool operator==(const Mat3&) const = default;
};

std::int64_t det(const Mat3& g);
Mat3 mul(const Mat3& a, const Mat3& b);
LatticeVector mul(const Mat3& g, const LatticeVector& v);
cvec3 mul(const Mat3& g, const cvec3& x);
// Row-covector times matrix: (d.g)(v) = d(g v).
DualVector mul(const DualVector& d, const Mat3& g);
// Inverse of a determinant-one matrix (the adjugate), exact.
Mat3 inverse_unimodular(const Mat3& g);

// Element (g, mu) of SL3(Z) x| Z^3.  det g = 1 is enforced on construction.
struct GroupElement {
    Mat3 g;
    DualVector mu;

    static GroupElement identity() { return GroupElement{Mat3::identity(), DualVector{}}; }
    bool operator==(const GroupElement&) const = default;
};

GroupElement make_group_element(const Mat3& g, const DualVector& mu);
// Product fixed by act(compose(g,h)) = act(g) o act(h):
// compose((g,mu),(h,nu)) = (g h, nu + mu.h).
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

// Action on (w, x): w' = w - mu(x), x' = g x.
struct ModuliArg {
    cplx w;
    cvec3 x;
};
ModuliArg act(const GroupElement& ghat, const cplx& w, const cvec3& x);
// The pullback point appearing in the cocycle identities:
// inv_act(ghat, p) = act(inverse(ghat), p) = (w + mu(g^-1 x), g^-1 x).
ModuliArg inv_act(const GroupElement& ghat, const cplx& w, const cvec3& x);

bool is_primitive(const LatticeVector& v);
bool is_primitive(const DualVector& v);

// The unique primitive gamma in the dual lattice with det(a,b,.) = s*gamma,
// s > 0.  Throws degenerate_error when a, b are parallel.
struct GammaPair {
    DualVector gamma;
    std::int64_t s;
};
GammaPair primitive_gamma(const LatticeVector& a, const LatticeVector& b);

// Image lattice of T: d |-> (d(a), d(b)) together with a linear section.
// Hermite basis of the image: (d1, 0) and (e, d2), d1, d2 > 0, 0 <= e < d1.
// section(m, n) is the tracked preimage, linear on the image lattice;
// section(T(d)) == d modulo Z*gamma for every dual vector d.
struct ConeBasis {
    LatticeVector a, b;
    DualVector gamma;
    std::int64_t s;          // index of the image lattice in Z^2 (= d1*d2)
    std::int64_t d1, e, d2;  // Hermite basis rows (d1,0), (e,d2)
    DualVector u, v;         // preimages: T(u) = (d1,0), T(v) = (e,d2)

    bool contains(std::int64_t m, std::int64_t n) const;
    DualVector section(std::int64_t m, std::int64_t n) const;
};
ConeBasis cone_basis(const LatticeVector& a, const LatticeVector& b);

// Canonical integral pair with alpha(b) = 0, beta(a) = 0, alpha(a) > 0
// minimal, beta(b) > 0 minimal; the residual Z*gamma freedom is fixed by
// norm minimisation with a lexicographic tie-break.
struct AnnihilatorPair {
    DualVector alpha, beta;
};
AnnihilatorPair annihilator_pair(const LatticeVector& a, const LatticeVector& b);

// One representative per class of F/Z*gamma where
// F = {d : 0 <= d(a) < alpha(a), 0 <= d(b) < beta(b)}.
// The list has exactly alpha(a)*beta(b)/s entries.
std::vector<DualVector> fundamental_set(const LatticeVector& a, const LatticeVector& b,
                                        const DualVector& alpha, const DualVector& beta);

// Canonical framing of a primitive a: alpha1(a) = 1, alpha2(a) = alpha3(a) = 0,
// det(alpha1, alpha2, alpha3) > 0.  (alpha2, alpha3) is the Hermite basis of
// the annihilator plane, alpha3 negated if needed for orientation, and alpha1
// reduced into the canonical box modulo the annihilator plane.
struct Framing {
    DualVector alpha1, alpha2, alpha3;
};
Framing framing(const LatticeVector& a);

// det of the 3x3 matrix with rows r1, r2, r3.
std::int64_t det_rows(const DualVector& r1, const DualVector& r2, const DualVector& r3);

// Integer cross product of covectors, landing back in the lattice:
// (u x v)(as a vector) pairs with any covector w as det(u;v;w).
LatticeVector cross(const DualVector& u, const DualVector& v);

} // namespace ggl

#endif

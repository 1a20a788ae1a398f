#ifndef GGL_BERNOULLI_HPP
#define GGL_BERNOULLI_HPP

// Multiple Bernoulli polynomials and the hermitian weights built from them.
//
// Convention:
//   sum_k B_{k,n}(z; t_1..t_{n-1}) x^k / k!
//     = x^n e^{z x} / ((e^{t_1 x} - 1) ... (e^{t_{n-1} x} - 1)(e^x - 1)),
// so B_{k,1}(z) is the classical Bernoulli polynomial and
// B_{1,2}(z, t) = (2z - t - 1)/(2t).
//
// Weights:
//   h_n(z, tau_1..tau_{n-1}) = exp(-(4 pi/n!) B_{n,n}(Im z + 1/2; Im tau_j)),
//   h_ab = product of h_3 over the same factorization as gamma_ab,
//   h_a  = product of h_2 mirroring delta factor for factor.
// The half-shifted degree-n exponent is the unique placement satisfying
// h_3(z,t1,t2) h_3(-z,-t2,-t1) = 1 and H3(z+t1) - H3(z) = 3 H2(z,t2),
// which the swap pairing of h_ab and the translation sector of the
// equivariance identity require; both are exercised in the tests.

#include <complex>
#include <vector>

#include "ggl/lattice.hpp"
#include "ggl/rational.hpp"

namespace ggl {

// Exact path (rational inputs).
Rational bernoulli_kn(int k, int n, const Rational& z, const std::vector<Rational>& periods);
// Float path (real inputs).
double bernoulli_kn(int k, int n, double z, const std::vector<double>& periods);

// Coefficients of B_{k,n} as a polynomial in z, exact; degree is exactly k.
std::vector<Rational> bernoulli_poly_coeffs(int k, int n,
                                            const std::vector<Rational>& periods);

// h_n for n in {2, 3}; depends only on imaginary parts, strictly positive.
double h_metric(int n, cplx z, const std::vector<cplx>& taus);

double h_ab(const LatticeVector& a, const LatticeVector& b, cplx w, const cvec3& x,
            double pole_eps = 1e-10);
double h_a(const LatticeVector& a, const GroupElement& ghat, cplx w, const cvec3& x,
           double pole_eps = 1e-10);

} // namespace ggl

#endif

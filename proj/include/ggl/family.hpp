#ifndef GGL_FAMILY_HPP
#define GGL_FAMILY_HPP

// The gamma function family and the theta cocycle.
//
//   gamma_ab(a,b; w,x) = prod_{d in F/Z gamma}
//       gamma_fn((w + d(x))/gamma(x), alpha(x)/gamma(x), beta(x)/gamma(x))
//
// over the canonical annihilator pair and fundamental set (the value is
// independent of that choice, which is tested, not assumed), with
// gamma_ab(a, +-a) = 1.  The cone-product evaluator enumerates
//
//   prod_{d(a)>0, d(b)<=0} (1 - e^{-2 pi i (d(x)-w)/gamma(x)})
//   prod_{d(b)>0, d(a)<=0} (1 - e^{+2 pi i (d(x)-w)/gamma(x)})^{-1}
//
// modulo Z gamma, certifying geometric decay along both cone edges before
// trusting the truncation; it is a verification oracle for the factorized
// form, convergent only in a sub-regime.
//
//   delta(a, (g,mu); w, x) = prod_{j=0}^{mu(g^-1 a)-1}
//       theta0((w + j alpha1(x))/alpha3(x), alpha2(x)/alpha3(x))
//
// in the canonical framing of a, with the negative-count convention
// prod_{j=0}^{n-1} := prod_{j=n}^{-1} (.)^{-1} for n < 0 (the unique
// convention preserving product concatenation).

#include <array>
#include <optional>
#include <vector>

#include "ggl/lattice.hpp"
#include "ggl/special.hpp"

namespace ggl {

// Canonical factorization data shared by gamma_ab and the hermitian weight
// h_ab so that their factors pair one-to-one.
struct PairFactorization {
    LatticeVector a, b;
    DualVector gamma;
    std::int64_t s = 1;
    DualVector alpha, beta;
    std::vector<DualVector> fset;
};
PairFactorization pair_factorization(const LatticeVector& a, const LatticeVector& b);

struct GammaFactorArgs {
    cplx z, tau, sigma;
};
// Evaluated arguments of each ordinary-gamma factor at (w, x); throws
// degenerate_error when gamma(x) is within pole_eps of zero.
std::vector<GammaFactorArgs> gamma_factor_args(const PairFactorization& pf, cplx w,
                                               const cvec3& x, double pole_eps);

ValueWithError gamma_ab_full(const LatticeVector& a, const LatticeVector& b, cplx w,
                             const cvec3& x, const EvalConfig& cfg);
cplx gamma_ab(const LatticeVector& a, const LatticeVector& b, cplx w, const cvec3& x,
              const EvalConfig& cfg);

struct ConeProductReport {
    std::optional<cplx> value;  // absent when convergence is not certified
    double err_bound = 0.0;
    long terms_used = 0;
    std::array<double, 2> edge_decay{0.0, 0.0};  // per-step log decay rates
    bool near_zero = false;

    bool certified() const { return value.has_value(); }
};
ConeProductReport gamma_ab_cone(const LatticeVector& a, const LatticeVector& b, cplx w,
                                const cvec3& x, const EvalConfig& cfg);

// Factor data shared by delta and the hermitian weight h_a.
struct DeltaFactorArgs {
    std::vector<cplx> zs;  // theta arguments in j order
    cplx tau;              // alpha2(x)/alpha3(x)
    bool inverted = false; // negative-count convention in effect
    std::int64_t count = 0;  // mu(g^-1 a)
};
DeltaFactorArgs delta_factor_args(const LatticeVector& a, const GroupElement& ghat, cplx w,
                                  const cvec3& x, double pole_eps);

std::int64_t delta_count(const LatticeVector& a, const GroupElement& ghat);

ValueWithError delta_full(const LatticeVector& a, const GroupElement& ghat, cplx w,
                          const cvec3& x, const EvalConfig& cfg);
cplx delta(const LatticeVector& a, const GroupElement& ghat, cplx w, const cvec3& x,
           const EvalConfig& cfg);

} // namespace ggl

#endif

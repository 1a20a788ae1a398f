#ifndef GGL_SPECIAL_HPP
#define GGL_SPECIAL_HPP

// theta0 and the elliptic gamma function.
//
//   theta0(z,tau) = prod_{j>=0} (1 - e^{2 pi i ((j+1) tau - z)})
//                              (1 - e^{2 pi i (j tau + z)}),     Im tau > 0
//
//   gamma_fn(z,tau,sigma) = prod_{j,k>=0}
//       (1 - e^{2 pi i ((j+1) tau + (k+1) sigma - z)})
//     / (1 - e^{2 pi i (j tau + k sigma + z)}),     Im tau > 0, Im sigma > 0
//
// satisfying gamma_fn(z+sigma,tau,sigma) = theta0(z,tau) gamma_fn(z,tau,sigma)
// and symmetric in (tau, sigma).  For Im sigma < 0 the function is extended by
// gamma_fn(z,tau,sigma) := 1/gamma_fn(z-sigma,tau,-sigma), and likewise in tau;
// the shift law survives the extension.
//
// Values are returned with a truncation error estimate and near-zero /
// near-pole flags; the throwing wrappers convert a near-pole into pole_error.

#include <complex>

#include "ggl/errors.hpp"
#include "ggl/lattice.hpp"

namespace ggl {

struct EvalConfig {
    double tol = 1e-14;       // term-size cutoff for infinite products
    int max_terms = 4096;     // per-index cap for product truncation
    double pole_eps = 1e-10;  // proximity threshold for pole/zero hits
    double unwrap_step = 0.013;  // w-path step for phase tracking
};

struct ValueWithError {
    cplx value{1.0, 0.0};
    cplx logv{0.0, 0.0};     // log of value; products/ratios of huge factors
                             // stay finite through this field
    double err_bound = 0.0;  // relative truncation estimate
    bool near_zero = false;  // some numerator factor within pole_eps of 0
    bool near_pole = false;  // some denominator factor within pole_eps of 0
    long pole_j = -1;        // offending indices when near_pole is set
    long pole_k = -1;
};

// Moduli point (w, x); valid iff [x] lies in CP^2 - RP^2, i.e. the pairwise
// products Im(x_i conj(x_j)) are not all zero.
struct ModuliPoint {
    cplx w;
    cvec3 x;
};
bool is_valid_moduli_x(const cvec3& x);

// Non-throwing evaluation; near_zero flags zeros hit within pole_eps.
ValueWithError theta0_full(cplx z, cplx tau, const EvalConfig& cfg);
cplx theta0(cplx z, cplx tau, const EvalConfig& cfg);

// Non-throwing core (flags only); the plain wrapper throws pole_error with
// the offending (j,k) when a denominator factor is within pole_eps of zero.
ValueWithError elliptic_gamma_full(cplx z, cplx tau, cplx sigma, const EvalConfig& cfg);
cplx elliptic_gamma(cplx z, cplx tau, cplx sigma, const EvalConfig& cfg);

// x in U_a^+, evaluated as Im(alpha2(x) conj(alpha3(x))) > 0 for the
// canonical framing of a.  The orientation convention is that (alpha, beta)
// is positively oriented iff cross(alpha, beta) is a positive multiple of a;
// the predicate is independent of the basis choice within that class.
// Exact boundary value 0 returns false.
bool in_domain(const LatticeVector& a, const cvec3& x);

// log(1+w) accurate for small |w|.
cplx clog1p(const cplx& w);

} // namespace ggl

#endif

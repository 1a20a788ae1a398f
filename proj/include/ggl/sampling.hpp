#ifndef GGL_SAMPLING_HPP
#define GGL_SAMPLING_HPP

// Seeded samplers for the verification suites.  Vectors come from the
// primitive box, group elements are words in elementary matrices and dual
// translations, moduli points sit near the standard point (tau, sigma, 1)
// with moderate imaginary parts, optionally pushed to other charts by a
// random group action.  Everything draws from CounterRng so runs are
// reproducible across schedules.

#include <utility>

#include "ggl/family.hpp"
#include "ggl/lattice.hpp"
#include "ggl/rng.hpp"

namespace ggl {

LatticeVector sample_primitive(CounterRng& rng, std::int64_t bound);
std::pair<LatticeVector, LatticeVector> sample_independent_pair(CounterRng& rng,
                                                                std::int64_t bound);
GroupElement sample_group_element(CounterRng& rng, int max_len);
GroupElement sample_translation(CounterRng& rng, std::int64_t bound);

// x = (tau, sigma, 1) with Im tau, Im sigma in [0.4, 1.5], Re in [-0.5, 0.5].
cvec3 sample_x_standard(CounterRng& rng);
// Standard point pushed to another chart by a random group action.
cvec3 sample_x_chart(CounterRng& rng, int max_word);
// w in a disc of radius 0.4.
cplx sample_w(CounterRng& rng);

// Solve alpha(x) = tau_eff * g0, beta(x) = sigma_eff * g0, gamma(x) = g0.
// Places the pair's effective periods exactly; the cone product for (a, b)
// certifies convergence iff Im tau_eff < 0 < Im sigma_eff.
cvec3 x_from_effective(const PairFactorization& pf, cplx tau_eff, cplx sigma_eff,
                       cplx g0 = cplx(1.0, 0.0));

// True when every factor of the pair's factorized form has effective
// periods with |Im| in [lo, hi] and gamma(x) is well away from zero.
bool moderate_pair(const PairFactorization& pf, const cvec3& x, double lo = 0.2,
                   double hi = 3.0);

} // namespace ggl

#endif

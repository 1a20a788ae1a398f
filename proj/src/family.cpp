#include "ggl/family.hpp"

#include <cmath>
#include <string>

#include "ggl/errors.hpp"

namespace ggl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx expi2pi(const cplx& z) {
    double m = std::exp(-kTwoPi * z.imag());
    double ph = kTwoPi * z.real();
    return cplx(m * std::cos(ph), m * std::sin(ph));
}

bool plus_minus_equal(const LatticeVector& a, const LatticeVector& b) {
    return a == b || a == -b;
}

} // namespace

PairFactorization pair_factorization(const LatticeVector& a, const LatticeVector& b) {
    PairFactorization pf;
    pf.a = a;
    pf.b = b;
    GammaPair gp = primitive_gamma(a, b);
    pf.gamma = gp.gamma;
    pf.s = gp.s;
    AnnihilatorPair ap = annihilator_pair(a, b);
    pf.alpha = ap.alpha;
    pf.beta = ap.beta;
    pf.fset = fundamental_set(a, b, ap.alpha, ap.beta);
    return pf;
}

std::vector<GammaFactorArgs> gamma_factor_args(const PairFactorization& pf, cplx w,
                                               const cvec3& x, double pole_eps) {
    cplx gx = pf.gamma(x);
    if (std::abs(gx) < pole_eps)
        throw degenerate_error("gamma_ab: gamma(x) within pole_eps of zero");
    cplx tau = pf.alpha(x) / gx;
    cplx sigma = pf.beta(x) / gx;
    std::vector<GammaFactorArgs> out;
    out.reserve(pf.fset.size());
    for (const auto& d : pf.fset) out.push_back({(w + d(x)) / gx, tau, sigma});
    return out;
}

ValueWithError gamma_ab_full(const LatticeVector& a, const LatticeVector& b, cplx w,
                             const cvec3& x, const EvalConfig& cfg) {
    if (plus_minus_equal(a, b)) return ValueWithError{};  // gamma_{a,+-a} = 1
    if (!is_primitive(a) || !is_primitive(b))
        throw std::invalid_argument("gamma_ab: a, b must be primitive");

    PairFactorization pf = pair_factorization(a, b);
    auto args = gamma_factor_args(pf, w, x, cfg.pole_eps);

    ValueWithError r;
    for (const auto& fa : args) {
        ValueWithError f = elliptic_gamma_full(fa.z, fa.tau, fa.sigma, cfg);
        r.logv += f.logv;
        r.err_bound += f.err_bound;
        r.near_zero = r.near_zero || f.near_zero;
        if (f.near_pole && !r.near_pole) {
            r.near_pole = true;
            r.pole_j = f.pole_j;
            r.pole_k = f.pole_k;
        }
    }
    r.value = std::exp(r.logv);
    return r;
}

cplx gamma_ab(const LatticeVector& a, const LatticeVector& b, cplx w, const cvec3& x,
              const EvalConfig& cfg) {
    ValueWithError r = gamma_ab_full(a, b, w, x, cfg);
    if (r.near_pole)
        throw pole_error("gamma_ab: factor within pole_eps of a pole", r.pole_j, r.pole_k);
    return r.value;
}

ConeProductReport gamma_ab_cone(const LatticeVector& a, const LatticeVector& b, cplx w,
                                const cvec3& x, const EvalConfig& cfg) {
    if (!is_primitive(a) || !is_primitive(b))
        throw std::invalid_argument("gamma_ab_cone: a, b must be primitive");
    ConeBasis cb = cone_basis(a, b);
    cplx gx = cb.gamma(x);
    if (std::abs(gx) < cfg.pole_eps)
        throw degenerate_error("gamma_ab_cone: gamma(x) within pole_eps of zero");

    // Edge steps of the two cones: (d1, 0) and -(0, n0) for {m>0, n<=0};
    // their negatives for the mirror cone.  Decay certified iff the factor
    // log-magnitude strictly decreases along both.
    DualVector u = cb.section(cb.d1, 0);
    std::int64_t n0 = checked_mul(cb.d1 / gcd64(cb.e, cb.d1), cb.d2);
    DualVector v0 = cb.section(0, n0);
    double r1 = -kTwoPi * std::imag(u(x) / gx);
    double r2 = kTwoPi * std::imag(v0(x) / gx);

    ConeProductReport rep;
    rep.edge_decay = {r1, r2};
    if (!(r1 > 0.0) || !(r2 > 0.0)) return rep;  // not convergent

    cplx logv = 0.0;
    double shell_max_prev = 1e300;
    long terms = 0;
    const int max_shells = cfg.max_terms;
    for (int R = 1; R <= max_shells; ++R) {
        double shell_max = 0.0;
        auto visit = [&](std::int64_t m, std::int64_t n, bool mirror) {
            if (!cb.contains(m, n)) return;
            DualVector d = cb.section(m, n);
            cplx uu = (d(x) - w) / gx;
            cplx E = mirror ? expi2pi(uu) : expi2pi(-uu);
            double mag = std::abs(E);
            shell_max = std::max(shell_max, mag);
            cplx f = cplx(1.0, 0.0) - E;
            if (std::abs(f) < cfg.pole_eps) {
                if (mirror)
                    throw pole_error("gamma_ab_cone: denominator factor near zero", m, n);
                rep.near_zero = true;
            }
            logv += mirror ? -clog1p(-E) : clog1p(-E);
            ++terms;
        };
        // C_{+-}: 1 <= m <= R, -R <= n <= 0, L-inf shell radius R,
        // lexicographic (m, n) within the shell
        for (std::int64_t m = 1; m <= R; ++m) {
            if (m < R) {
                visit(m, -R, false);
            } else {
                for (std::int64_t n = -R; n <= 0; ++n) visit(m, n, false);
            }
        }
        // C_{-+}: -R <= m <= 0, 1 <= n <= R
        for (std::int64_t m = -R; m <= 0; ++m) {
            if (m < 0 && -m < R) {
                visit(m, R, true);
            } else if (m == -R) {
                for (std::int64_t n = 1; n <= R; ++n) visit(m, n, true);
            } else {  // m == 0
                visit(m, R, true);
            }
        }
        if (shell_max < cfg.tol && shell_max_prev < cfg.tol) {
            rep.value = std::exp(logv);
            rep.terms_used = terms;
            double rmin = std::min(r1, r2);
            rep.err_bound = shell_max / (1.0 - std::exp(-rmin)) + 4e-16 * double(terms);
            return rep;
        }
        shell_max_prev = shell_max;
    }
    throw no_convergence_error("gamma_ab_cone: certified product exceeded max_terms shells");
}

std::int64_t delta_count(const LatticeVector& a, const GroupElement& ghat) {
    return ghat.mu(mul(inverse_unimodular(ghat.g), a));
}

DeltaFactorArgs delta_factor_args(const LatticeVector& a, const GroupElement& ghat, cplx w,
                                  const cvec3& x, double pole_eps) {
    Framing f = framing(a);
    cplx A1 = f.alpha1(x), A2 = f.alpha2(x), A3 = f.alpha3(x);
    if (std::abs(A3) < pole_eps)
        throw degenerate_error("delta: alpha3(x) within pole_eps of zero");
    DeltaFactorArgs out;
    out.tau = A2 / A3;
    out.count = delta_count(a, ghat);
    out.inverted = out.count < 0;
    std::int64_t lo = out.inverted ? out.count : 0;
    std::int64_t hi = out.inverted ? 0 : out.count;
    for (std::int64_t j = lo; j < hi; ++j) out.zs.push_back((w + double(j) * A1) / A3);
    return out;
}

ValueWithError delta_full(const LatticeVector& a, const GroupElement& ghat, cplx w,
                          const cvec3& x, const EvalConfig& cfg) {
    DeltaFactorArgs fa = delta_factor_args(a, ghat, w, x, cfg.pole_eps);
    if (fa.zs.empty()) return ValueWithError{};  // empty product
    if (!(fa.tau.imag() > 0.0))
        throw domain_error("delta: Im(alpha2(x)/alpha3(x)) must be positive");

    ValueWithError r;
    for (const cplx& z : fa.zs) {
        ValueWithError t = theta0_full(z, fa.tau, cfg);
        if (fa.inverted) {
            if (t.near_zero) {
                r.near_pole = true;  // a theta zero inside an inverse product
                r.pole_j = 0;
                r.pole_k = 0;
            }
            r.logv -= t.logv;
        } else {
            r.near_zero = r.near_zero || t.near_zero;
            r.logv += t.logv;
        }
        r.err_bound += t.err_bound;
    }
    r.value = std::exp(r.logv);
    return r;
}

cplx delta(const LatticeVector& a, const GroupElement& ghat, cplx w, const cvec3& x,
           const EvalConfig& cfg) {
    ValueWithError r = delta_full(a, ghat, w, x, cfg);
    if (r.near_pole)
        throw pole_error("delta: theta zero hit inside an inverse product", r.pole_j,
                         r.pole_k);
    return r.value;
}

} // namespace ggl

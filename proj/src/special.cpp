#include "ggl/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx expi2pi(const cplx& z) {
    // e^{2 pi i z}
    double m = std::exp(-kTwoPi * z.imag());
    double ph = kTwoPi * z.real();
    return cplx(m * std::cos(ph), m * std::sin(ph));
}

} // namespace

cplx clog1p(const cplx& w) {
    if (std::abs(w) < 1e-4) {
        // four series terms give ~1e-17 absolute error at |w| = 1e-4
        cplx w2 = w * w;
        return w - 0.5 * w2 + (1.0 / 3.0) * w2 * w - 0.25 * w2 * w2;
    }
    return std::log(cplx(1.0, 0.0) + w);
}

bool is_valid_moduli_x(const cvec3& x) {
    double scale = 0.0;
    for (const auto& xi : x) scale = std::max(scale, std::norm(xi));
    if (scale == 0.0) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double im = std::imag(x[size_t(i)] * std::conj(x[size_t(j)]));
            if (std::abs(im) > 1e-14 * scale) return true;
        }
    return false;
}

namespace {

void validate_config(const EvalConfig& cfg) {
    if (!(cfg.tol > 0.0) || cfg.tol >= 1.0 || cfg.max_terms < 1 || !(cfg.pole_eps > 0.0))
        throw std::invalid_argument("EvalConfig: need 0 < tol < 1, max_terms >= 1, pole_eps > 0");
}

} // namespace

ValueWithError theta0_full(cplx z, cplx tau, const EvalConfig& cfg) {
    validate_config(cfg);
    if (!(tau.imag() > 0.0))
        throw domain_error("theta0: Im tau must be positive, got " +
                           std::to_string(tau.imag()));
    const cplx q = expi2pi(tau);
    const double aq = std::abs(q);

    cplx A = q * expi2pi(-z);  // q^{j+1} e^{-2 pi i z} at j = 0
    cplx B = expi2pi(z);       // q^j e^{2 pi i z} at j = 0
    cplx logv = 0.0;
    bool near_zero = false;
    int j = 0;
    for (; j < cfg.max_terms; ++j) {
        if (std::abs(A) < cfg.tol && std::abs(B) < cfg.tol) break;
        if (std::abs(cplx(1.0, 0.0) - A) < cfg.pole_eps ||
            std::abs(cplx(1.0, 0.0) - B) < cfg.pole_eps)
            near_zero = true;
        logv += clog1p(-A) + clog1p(-B);
        A *= q;
        B *= q;
    }
    if (j == cfg.max_terms)
        throw no_convergence_error("theta0: product did not reach tol within max_terms");

    ValueWithError r;
    r.logv = logv;
    r.value = std::exp(logv);
    r.err_bound = (std::abs(A) + std::abs(B)) / (1.0 - aq) + 4.0 * j * 1e-16;
    r.near_zero = near_zero;
    return r;
}

cplx theta0(cplx z, cplx tau, const EvalConfig& cfg) {
    return theta0_full(z, tau, cfg).value;
}

namespace {

// Double product for Im tau > 0, Im sigma > 0, accumulated in log space
// with row-wise truncation: a row stops when its terms drop below tol,
// rows stop when a row's leading terms are already below tol.
ValueWithError gamma_base(cplx z, cplx tau, cplx sigma, const EvalConfig& cfg) {
    const cplx q = expi2pi(tau);
    const cplx p = expi2pi(sigma);
    const double aq = std::abs(q), ap = std::abs(p);
    const cplx En = expi2pi(-z);
    const cplx Ed = expi2pi(z);

    cplx logv = 0.0;
    ValueWithError r;

    cplx rowN = q * p * En;  // numerator term at (j,k) = (0,0)
    cplx rowD = Ed;          // denominator term at (j,k) = (0,0)
    double tail = 0.0;       // omitted-term estimate, per row plus final
    int j = 0;
    for (; j < cfg.max_terms; ++j) {
        if (std::abs(rowN) < cfg.tol && std::abs(rowD) < cfg.tol && j > 0) break;
        cplx tN = rowN, tD = rowD;
        int k = 0;
        for (; k < cfg.max_terms; ++k) {
            if (std::abs(tN) < cfg.tol && std::abs(tD) < cfg.tol) break;
            if (std::abs(cplx(1.0, 0.0) - tN) < cfg.pole_eps) r.near_zero = true;
            if (std::abs(cplx(1.0, 0.0) - tD) < cfg.pole_eps && !r.near_pole) {
                r.near_pole = true;
                r.pole_j = j;
                r.pole_k = k;
            }
            logv += clog1p(-tN) - clog1p(-tD);
            tN *= p;
            tD *= p;
        }
        if (k == cfg.max_terms)
            throw no_convergence_error("elliptic_gamma: row did not converge");
        tail += (std::abs(tN) + std::abs(tD)) / (1.0 - ap);  // this row's remainder
        rowN *= q;
        rowD *= q;
    }
    if (j == cfg.max_terms)
        throw no_convergence_error("elliptic_gamma: rows did not converge");

    r.logv = logv;
    r.value = std::exp(logv);
    r.err_bound = tail + (std::abs(rowN) + std::abs(rowD)) / ((1.0 - aq) * (1.0 - ap)) +
                  8.0 * double(j) * double(j) * 1e-16;
    return r;
}

} // namespace

ValueWithError elliptic_gamma_full(cplx z, cplx tau, cplx sigma, const EvalConfig& cfg) {
    validate_config(cfg);
    if (tau.imag() == 0.0 || sigma.imag() == 0.0)
        throw domain_error("elliptic_gamma: tau and sigma must be non-real");
    if (tau.imag() > 0.0 && sigma.imag() > 0.0) return gamma_base(z, tau, sigma, cfg);
    if (tau.imag() < 0.0 && sigma.imag() < 0.0)
        return gamma_base(z - tau - sigma, -tau, -sigma, cfg);
    ValueWithError inner = (sigma.imag() < 0.0)
                               ? gamma_base(z - sigma, tau, -sigma, cfg)
                               : gamma_base(z - tau, -tau, sigma, cfg);
    ValueWithError r;
    r.logv = -inner.logv;
    r.value = 1.0 / inner.value;
    r.err_bound = inner.err_bound;
    r.near_zero = inner.near_pole;  // inversion swaps zeros and poles
    r.near_pole = inner.near_zero;
    r.pole_j = inner.pole_j;
    r.pole_k = inner.pole_k;
    return r;
}

cplx elliptic_gamma(cplx z, cplx tau, cplx sigma, const EvalConfig& cfg) {
    ValueWithError r = elliptic_gamma_full(z, tau, sigma, cfg);
    if (r.near_pole)
        throw pole_error("elliptic_gamma: denominator factor within pole_eps",
                         r.pole_j, r.pole_k);
    return r.value;
}

bool in_domain(const LatticeVector& a, const cvec3& x) {
    Framing f = framing(a);
    return std::imag(f.alpha2(x) * std::conj(f.alpha3(x))) > 0.0;
}

} // namespace ggl

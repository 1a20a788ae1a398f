#include "ggl/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ggl/bernoulli.hpp"
#include "ggl/errors.hpp"

namespace ggl {

namespace {

ValueWithError mul_vals(const ValueWithError& a, const ValueWithError& b) {
    ValueWithError r;
    r.logv = a.logv + b.logv;
    r.value = std::exp(r.logv);
    r.err_bound = a.err_bound + b.err_bound;
    r.near_zero = a.near_zero || b.near_zero;
    r.near_pole = a.near_pole || b.near_pole;
    r.pole_j = a.near_pole ? a.pole_j : b.pole_j;
    r.pole_k = a.near_pole ? a.pole_k : b.pole_k;
    return r;
}

ValueWithError div_vals(const ValueWithError& a, const ValueWithError& b) {
    ValueWithError r;
    r.logv = a.logv - b.logv;
    r.value = std::exp(r.logv);
    r.err_bound = a.err_bound + b.err_bound;
    r.near_zero = a.near_zero || b.near_pole;
    r.near_pole = a.near_pole || b.near_zero;
    r.pole_j = a.near_pole ? a.pole_j : b.pole_j;
    r.pole_k = a.near_pole ? a.pole_k : b.pole_k;
    return r;
}

void throw_if_pole(const ValueWithError& v, const char* who) {
    if (v.near_pole) throw pole_error(std::string(who) + ": pole hit", v.pole_j, v.pole_k);
}

} // namespace

ValueWithError phi_abc(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c,
                       cplx w, const cvec3& x, const EvalConfig& cfg) {
    ValueWithError r = gamma_ab_full(a, b, w, x, cfg);
    r = mul_vals(r, gamma_ab_full(b, c, w, x, cfg));
    r = mul_vals(r, gamma_ab_full(c, a, w, x, cfg));
    return r;
}

ValueWithError phi_ab(const LatticeVector& a, const LatticeVector& b, const GroupElement& ghat,
                      cplx w, const cvec3& x, const EvalConfig& cfg) {
    ModuliArg gp = inv_act(ghat, w, x);
    Mat3 gi = inverse_unimodular(ghat.g);
    ValueWithError num = gamma_ab_full(mul(gi, a), mul(gi, b), gp.w, gp.x, cfg);
    num = mul_vals(num, delta_full(b, ghat, w, x, cfg));
    ValueWithError den = gamma_ab_full(a, b, w, x, cfg);
    den = mul_vals(den, delta_full(a, ghat, w, x, cfg));
    return div_vals(num, den);
}

ValueWithError phi_a(const LatticeVector& a, const GroupElement& ghat, const GroupElement& hhat,
                     cplx w, const cvec3& x, const EvalConfig& cfg) {
    ModuliArg gp = inv_act(ghat, w, x);
    Mat3 gi = inverse_unimodular(ghat.g);
    ValueWithError num = delta_full(a, compose(ghat, hhat), w, x, cfg);
    ValueWithError den = delta_full(a, ghat, w, x, cfg);
    den = mul_vals(den, delta_full(mul(gi, a), hhat, gp.w, gp.x, cfg));
    return div_vals(num, den);
}

CheckResult check_tetrahedron(const LatticeVector& a, const LatticeVector& b,
                              const LatticeVector& c, const LatticeVector& d, cplx w,
                              const cvec3& x, const EvalConfig& cfg) {
    ValueWithError acc = phi_abc(b, c, d, w, x, cfg);
    acc = div_vals(acc, phi_abc(a, c, d, w, x, cfg));
    acc = mul_vals(acc, phi_abc(a, b, d, w, x, cfg));
    acc = div_vals(acc, phi_abc(a, b, c, w, x, cfg));
    throw_if_pole(acc, "check_tetrahedron");
    return CheckResult{std::abs(std::exp(acc.logv) - cplx(1.0, 0.0)), acc.err_bound};
}

CheckResult check_equivariant(const LatticeVector& a, const LatticeVector& b,
                              const LatticeVector& c, const GroupElement& ghat, cplx w,
                              const cvec3& x, const EvalConfig& cfg) {
    ModuliArg gp = inv_act(ghat, w, x);
    Mat3 gi = inverse_unimodular(ghat.g);
    ValueWithError lhs = phi_abc(mul(gi, a), mul(gi, b), mul(gi, c), gp.w, gp.x, cfg);
    lhs = div_vals(lhs, phi_abc(a, b, c, w, x, cfg));

    ValueWithError rhs = phi_ab(b, c, ghat, w, x, cfg);
    rhs = div_vals(rhs, phi_ab(a, c, ghat, w, x, cfg));
    rhs = mul_vals(rhs, phi_ab(a, b, ghat, w, x, cfg));

    ValueWithError ratio = div_vals(lhs, rhs);
    throw_if_pole(ratio, "check_equivariant");
    return CheckResult{std::abs(std::exp(ratio.logv) - cplx(1.0, 0.0)), ratio.err_bound};
}

CheckResult check_group(const LatticeVector& a, const GroupElement& ghat,
                        const GroupElement& hhat, const GroupElement& jhat, cplx w,
                        const cvec3& x, const EvalConfig& cfg) {
    ModuliArg gp = inv_act(ghat, w, x);
    Mat3 gi = inverse_unimodular(ghat.g);

    ValueWithError lhs = phi_a(a, ghat, hhat, w, x, cfg);
    lhs = mul_vals(lhs, phi_a(a, compose(ghat, hhat), jhat, w, x, cfg));

    ValueWithError rhs = phi_a(a, ghat, compose(hhat, jhat), w, x, cfg);
    rhs = mul_vals(rhs, phi_a(mul(gi, a), hhat, jhat, gp.w, gp.x, cfg));

    ValueWithError ratio = div_vals(lhs, rhs);
    throw_if_pole(ratio, "check_group");
    return CheckResult{std::abs(std::exp(ratio.logv) - cplx(1.0, 0.0)), ratio.err_bound};
}

namespace {

// Continuous branch of log along the sample path; throws resample_error
// when a step is too large to unwrap reliably.
std::vector<cplx> unwrap_log(const std::vector<std::pair<cplx, cplx>>& values) {
    constexpr double kPi = 3.14159265358979323846264338328;
    std::vector<cplx> logs;
    logs.reserve(values.size());
    double prev_arg = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        cplx v = values[i].second;
        if (v == cplx(0.0, 0.0)) throw std::invalid_argument("fit_phase: zero value");
        double mag = std::log(std::abs(v));
        double arg = std::arg(v);
        if (i > 0) {
            // choose the branch nearest the previous point
            double k = std::round((prev_arg - arg) / (2.0 * kPi));
            arg += 2.0 * kPi * k;
            cplx step = cplx(mag, arg) - logs.back();
            if (std::abs(step) >= kPi / 2.0)
                throw resample_error("fit_phase: step too large for phase unwrapping");
        }
        logs.emplace_back(mag, arg);
        prev_arg = arg;
    }
    return logs;
}

// Least squares fit of a complex polynomial of the given degree by normal
// equations with Gaussian elimination (degrees here are tiny).
std::vector<cplx> polyfit(const std::vector<cplx>& u, const std::vector<cplx>& y, int deg) {
    const int n = deg + 1;
    std::vector<std::vector<cplx>> G(size_t(n), std::vector<cplx>(size_t(n), 0.0));
    std::vector<cplx> rhs(size_t(n), 0.0);
    for (size_t i = 0; i < u.size(); ++i) {
        std::vector<cplx> pw(static_cast<size_t>(n), cplx(0.0, 0.0));
        pw[0] = 1.0;
        for (int j = 1; j < n; ++j) pw[size_t(j)] = pw[size_t(j - 1)] * u[i];
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c)
                G[size_t(r)][size_t(c)] += std::conj(pw[size_t(r)]) * pw[size_t(c)];
            rhs[size_t(r)] += std::conj(pw[size_t(r)]) * y[i];
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(G[size_t(r)][size_t(col)]) > std::abs(G[size_t(piv)][size_t(col)]))
                piv = r;
        std::swap(G[size_t(col)], G[size_t(piv)]);
        std::swap(rhs[size_t(col)], rhs[size_t(piv)]);
        cplx d = G[size_t(col)][size_t(col)];
        if (std::abs(d) == 0.0) throw std::runtime_error("fit_phase: singular normal matrix");
        for (int r = col + 1; r < n; ++r) {
            cplx f = G[size_t(r)][size_t(col)] / d;
            for (int c = col; c < n; ++c) G[size_t(r)][size_t(c)] -= f * G[size_t(col)][size_t(c)];
            rhs[size_t(r)] -= f * rhs[size_t(col)];
        }
    }
    std::vector<cplx> sol(static_cast<size_t>(n), cplx(0.0, 0.0));
    for (int r = n - 1; r >= 0; --r) {
        cplx acc = rhs[size_t(r)];
        for (int c = r + 1; c < n; ++c) acc -= G[size_t(r)][size_t(c)] * sol[size_t(c)];
        sol[size_t(r)] = acc / G[size_t(r)][size_t(r)];
    }
    return sol;
}

cplx poly_eval(const std::vector<cplx>& coef, cplx u) {
    cplx acc = 0.0;
    for (size_t i = coef.size(); i-- > 0;) acc = acc * u + coef[i];
    return acc;
}

} // namespace

PhaseFit fit_phase(const std::vector<std::pair<cplx, cplx>>& values, int max_degree,
                   double fit_tol) {
    if (int(values.size()) < max_degree + 3)
        throw std::invalid_argument("fit_phase: need at least max_degree + 3 samples");
    std::vector<cplx> logs = unwrap_log(values);

    // scale w into the unit disc for conditioning
    cplx c0 = 0.0;
    for (const auto& wv : values) c0 += wv.first;
    c0 /= double(values.size());
    double rad = 0.0;
    for (const auto& wv : values) rad = std::max(rad, std::abs(wv.first - c0));
    if (rad == 0.0) rad = 1.0;

    std::vector<cplx> u_train, y_train, u_hold, y_hold;
    for (size_t i = 0; i < values.size(); ++i) {
        cplx u = (values[i].first - c0) / rad;
        if (i % 3 == 1) {
            u_hold.push_back(u);
            y_hold.push_back(logs[i]);
        } else {
            u_train.push_back(u);
            y_train.push_back(logs[i]);
        }
    }

    PhaseFit best;
    best.residual = 1e300;
    for (int d = 0; d <= max_degree; ++d) {
        if (int(u_train.size()) < d + 1) break;
        std::vector<cplx> coef = polyfit(u_train, y_train, d);
        double resid = 0.0;
        for (size_t i = 0; i < u_hold.size(); ++i)
            resid = std::max(resid, std::abs(poly_eval(coef, u_hold[i]) - y_hold[i]));
        if (resid < best.residual) {
            best.residual = resid;
            best.degree_used = d;
            best.coefficients = coef;
        }
        if (resid < fit_tol) break;  // smallest adequate degree
    }

    // convert from the scaled variable u = (w - c0)/rad back to powers of w
    int n = int(best.coefficients.size());
    std::vector<cplx> wcoef(size_t(n), 0.0);
    for (int k = 0; k < n; ++k) {
        cplx ak = best.coefficients[size_t(k)] / std::pow(cplx(rad, 0.0), k);
        // a_k (w - c0)^k expanded by the binomial theorem
        cplx binom = 1.0;
        for (int m = k; m >= 0; --m) {
            wcoef[size_t(m)] += ak * binom * std::pow(-c0, k - m);
            if (m > 0) binom = binom * double(m) / double(k - m + 1);
        }
    }
    best.coefficients = wcoef;
    return best;
}

namespace {

// Canonical order on lattice vectors for the alternating cochain.
bool vec_less(const LatticeVector& a, const LatticeVector& b) { return a.e < b.e; }

// log of the alternating cochain value: +log h_ab(x,y) for ascending pairs,
// -log h_ab(y,x) otherwise.
double log_h_pair(const LatticeVector& x, const LatticeVector& y, cplx w, const cvec3& xx,
                  const EvalConfig& cfg, bool alternating) {
    if (!alternating) return std::log(h_ab(x, y, w, xx, cfg.pole_eps));
    if (vec_less(x, y)) return std::log(h_ab(x, y, w, xx, cfg.pole_eps));
    return -std::log(h_ab(y, x, w, xx, cfg.pole_eps));
}

} // namespace

double hermitian_triple_gap(const HermitianTripleSample& s, const EvalConfig& cfg,
                            const HermitianConvention& conv) {
    // coboundary of the h-cochain around the triple
    double X = log_h_pair(s.a, s.b, s.w, s.x, cfg, conv.alternating) +
               log_h_pair(s.b, s.c, s.w, s.x, cfg, conv.alternating) +
               log_h_pair(s.c, s.a, s.w, s.x, cfg, conv.alternating);
    ValueWithError phi = phi_abc(s.a, s.b, s.c, s.w, s.x, cfg);
    throw_if_pole(phi, "hermitian_triple_gap");
    double Y = phi.logv.real();
    double gap = conv.sign * conv.h3_power * X - conv.exponent * Y;
    return std::abs(std::exp(gap) - 1.0);
}

double hermitian_equivariant_gap(const HermitianEquivSample& s, const EvalConfig& cfg,
                                 const HermitianConvention& conv) {
    ModuliArg gp = inv_act(s.ghat, s.w, s.x);
    Mat3 gi = inverse_unimodular(s.ghat.g);
    double X = std::log(h_ab(mul(gi, s.a), mul(gi, s.b), gp.w, gp.x, cfg.pole_eps)) -
               std::log(h_ab(s.a, s.b, s.w, s.x, cfg.pole_eps));
    X *= conv.h3_power;
    X += std::log(h_a(s.b, s.ghat, s.w, s.x, cfg.pole_eps)) -
         std::log(h_a(s.a, s.ghat, s.w, s.x, cfg.pole_eps));
    ValueWithError phi = phi_ab(s.a, s.b, s.ghat, s.w, s.x, cfg);
    throw_if_pole(phi, "hermitian_equivariant_gap");
    double Y = phi.logv.real();
    double gap = conv.sign * X - conv.exponent * Y;
    return std::abs(std::exp(gap) - 1.0);
}

HermitianSearchResult check_hermitian(const std::vector<HermitianTripleSample>& triples,
                                      const std::vector<HermitianEquivSample>& equivs,
                                      const EvalConfig& cfg) {
    HermitianSearchResult out;
    double best = 1e300;
    for (int eps = 1; eps <= 2; ++eps)
        for (int sgn : {+1, -1})
            for (double pw : {1.0, 1.5})
                for (bool alt : {true, false}) {
                    HermitianConvention conv{eps, sgn, pw, alt};
                    double worst = 0.0;
                    for (const auto& t : triples)
                        worst = std::max(worst, hermitian_triple_gap(t, cfg, conv));
                    for (const auto& e : equivs)
                        worst = std::max(worst, hermitian_equivariant_gap(e, cfg, conv));
                    out.table.emplace_back(conv, worst);
                    if (worst < best) {
                        best = worst;
                        out.best = conv;
                        out.max_residual = worst;
                    }
                }

    // diagnostic: empirical ratio log(coboundary)/log|phi| on the triples,
    // with the alternating pairing and unscaled h3
    std::vector<double> ratios;
    for (const auto& t : triples) {
        double X = log_h_pair(t.a, t.b, t.w, t.x, cfg, true) +
                   log_h_pair(t.b, t.c, t.w, t.x, cfg, true) +
                   log_h_pair(t.c, t.a, t.w, t.x, cfg, true);
        ValueWithError phi = phi_abc(t.a, t.b, t.c, t.w, t.x, cfg);
        double Y = phi.logv.real();
        if (std::abs(Y) > 1e-8) ratios.push_back(X / Y);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        out.empirical_ratio = ratios[ratios.size() / 2];
    }
    return out;
}

} // namespace ggl

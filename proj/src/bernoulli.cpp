#include "ggl/bernoulli.hpp"

#include <cmath>
#include <stdexcept>

#include "ggl/errors.hpp"
#include "ggl/family.hpp"
#include "ggl/series.hpp"

namespace ggl {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

template <class T>
T bernoulli_impl(int k, int n, const T& z, const std::vector<T>& periods) {
    if (k < 0 || n < 1) throw std::invalid_argument("bernoulli_kn: need k >= 0, n >= 1");
    if (int(periods.size()) != n - 1)
        throw std::invalid_argument("bernoulli_kn: expected n-1 periods");
    for (const T& t : periods)
        if (t == T(0)) throw std::invalid_argument("bernoulli_kn: zero period");

    const int ord = k + 4;  // guard terms
    // x^n cancels exactly n factors of x from the denominators:
    // G = e^{z x} / prod (e^{t x} - 1)/x, last period 1.
    Series<T> g = exp_series(z, ord);
    for (const T& t : periods) g = g * expm1_over_x_series(t, ord).inverse();
    g = g * expm1_over_x_series(T(1), ord).inverse();

    T c = g[k];
    for (int j = 2; j <= k; ++j) c = c * T(j);  // times k!
    return c;
}

} // namespace

Rational bernoulli_kn(int k, int n, const Rational& z, const std::vector<Rational>& periods) {
    return bernoulli_impl<Rational>(k, n, z, periods);
}

double bernoulli_kn(int k, int n, double z, const std::vector<double>& periods) {
    return bernoulli_impl<double>(k, n, z, periods);
}

std::vector<Rational> bernoulli_poly_coeffs(int k, int n,
                                            const std::vector<Rational>& periods) {
    if (k < 0 || n < 1) throw std::invalid_argument("bernoulli_poly_coeffs: bad k, n");
    if (int(periods.size()) != n - 1)
        throw std::invalid_argument("bernoulli_poly_coeffs: expected n-1 periods");
    for (const Rational& t : periods)
        if (t.is_zero()) throw std::invalid_argument("bernoulli_poly_coeffs: zero period");

    const int ord = k + 4;
    Series<Rational> h(ord, Rational(1));
    for (const Rational& t : periods) h = h * expm1_over_x_series(t, ord).inverse();
    h = h * expm1_over_x_series(Rational(1), ord).inverse();

    // B_{k,n}(z) = k! sum_m z^m / m! * h_{k-m}; coefficient of z^m is
    // (k!/m!) h_{k-m}.  The leading one is k! h_0 != 0, so the degree is k.
    std::vector<Rational> coeffs(size_t(k) + 1);
    Rational kfact(1);
    for (int j = 2; j <= k; ++j) kfact *= Rational(j);
    for (int m = 0; m <= k; ++m) {
        Rational mfact(1);
        for (int j = 2; j <= m; ++j) mfact *= Rational(j);
        coeffs[size_t(m)] = kfact / mfact * h[k - m];
    }
    return coeffs;
}

double h_metric(int n, cplx z, const std::vector<cplx>& taus) {
    if (n < 2 || n > 3) throw std::invalid_argument("h_metric: n must be 2 or 3");
    if (int(taus.size()) != n - 1)
        throw std::invalid_argument("h_metric: expected n-1 periods");
    std::vector<double> ts;
    ts.reserve(taus.size());
    for (const cplx& t : taus) {
        if (t.imag() == 0.0) throw std::invalid_argument("h_metric: real period");
        ts.push_back(t.imag());
    }
    // The weight exponent is the degree-n Bernoulli polynomial at the
    // half-shifted argument.  This is the unique placement for which the
    // swap pairing H3(z,t1,t2) = -H3(-z,-t2,-t1) and the translation
    // consistency H3(z+t1) - H3(z) = 3 H2(z,t2) hold identically, so that
    // h_ab h_ba = 1 mirrors the gamma antisymmetry factor for factor.
    double fact = (n == 2) ? 2.0 : 6.0;
    double B = bernoulli_kn(n, n, z.imag() + 0.5, ts);
    return std::exp(-(4.0 * kPi / fact) * B);
}

double h_ab(const LatticeVector& a, const LatticeVector& b, cplx w, const cvec3& x,
            double pole_eps) {
    if (a == b || a == -b) return 1.0;
    PairFactorization pf = pair_factorization(a, b);
    auto args = gamma_factor_args(pf, w, x, pole_eps);
    double v = 1.0;
    for (const auto& fa : args) v *= h_metric(3, fa.z, {fa.tau, fa.sigma});
    return v;
}

double h_a(const LatticeVector& a, const GroupElement& ghat, cplx w, const cvec3& x,
           double pole_eps) {
    DeltaFactorArgs fa = delta_factor_args(a, ghat, w, x, pole_eps);
    if (fa.tau.imag() == 0.0 && !fa.zs.empty())
        throw std::invalid_argument("h_a: real effective period");
    double v = 1.0;
    for (const cplx& z : fa.zs) {
        double f = h_metric(2, z, {fa.tau});
        v = fa.inverted ? v / f : v * f;
    }
    return v;
}

} // namespace ggl

#ifndef GGL_SERIES_HPP
#define GGL_SERIES_HPP

// Truncated power series in one variable over an arbitrary coefficient
// field (Rational for the exact path, double for the float path).
// All operations are exact in the coefficient field up to the truncation
// order; inversion uses Newton iteration with order doubling.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ggl {

template <class T>
class Series {
public:
    explicit Series(int order) : c_(size_t(order) + 1, T(0)) {}
    Series(int order, const T& c0) : Series(order) { c_[0] = c0; }

    int order() const { return int(c_.size()) - 1; }
    const T& operator[](int k) const { return c_[size_t(k)]; }
    T& operator[](int k) { return c_[size_t(k)]; }

    friend Series operator+(Series a, const Series& b) {
        check_order(a, b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend Series operator-(Series a, const Series& b) {
        check_order(a, b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    friend Series operator*(const Series& a, const Series& b) {
        check_order(a, b);
        Series r(a.order());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0)) continue;
            for (size_t j = 0; i + j < a.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    // Multiplicative inverse; requires an invertible constant term.
    Series inverse() const {
        if (c_[0] == T(0))
            throw std::invalid_argument("Series: inverse needs nonzero constant term");
        Series x(order());
        x.c_[0] = T(1) / c_[0];
        // Newton: x <- x (2 - a x); the number of correct coefficients doubles.
        for (int correct = 1; correct <= order(); correct *= 2) {
            Series two(order(), T(2));
            x = x * (two - (*this) * x);
        }
        return x;
    }

    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

private:
    static void check_order(const Series& a, const Series& b) {
        if (a.order() != b.order())
            throw std::invalid_argument("Series: mixed truncation orders");
    }
    std::vector<T> c_;
};

// e^{t x} truncated at the series order.
template <class T>
Series<T> exp_series(const T& t, int order) {
    Series<T> r(order);
    T term(1);
    r[0] = term;
    for (int j = 1; j <= order; ++j) {
        term = term * t / T(j);
        r[j] = term;
    }
    return r;
}

// (e^{t x} - 1)/x truncated at the series order; constant term t.
template <class T>
Series<T> expm1_over_x_series(const T& t, int order) {
    Series<T> r(order);
    T term = t;
    r[0] = term;
    for (int j = 1; j <= order; ++j) {
        term = term * t / T(j + 1);
        r[j] = term;
    }
    return r;
}

} // namespace ggl

#endif

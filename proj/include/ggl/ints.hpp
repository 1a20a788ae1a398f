#ifndef GGL_INTS_HPP
#define GGL_INTS_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace ggl {

// All lattice arithmetic is exact 64-bit with explicit overflow checks.
// Inputs are small (generator words, entries of a few digits), so an
// overflow indicates a misuse rather than a capacity problem.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in add");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in sub");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in mul");
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    if (a == INT64_MIN) throw std::overflow_error("integer overflow in neg");
    return -a;
}

inline std::int64_t abs64(std::int64_t a) {
    return a < 0 ? checked_neg(a) : a;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(abs64(a), abs64(b));
}

// g = gcd(a,b) together with x,y such that x*a + y*b = g, g >= 0.
struct ExtendedGcd {
    std::int64_t g, x, y;
};

inline ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp;
        tmp = checked_sub(old_r, checked_mul(q, r)); old_r = r; r = tmp;
        tmp = checked_sub(old_s, checked_mul(q, s)); old_s = s; s = tmp;
        tmp = checked_sub(old_t, checked_mul(q, t)); old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = checked_neg(old_r); old_s = checked_neg(old_s); old_t = checked_neg(old_t); }
    return {old_r, old_s, old_t};
}

// Floor division (round toward -infinity); used for canonical reductions.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace ggl

#endif

#ifndef GGL_ERRORS_HPP
#define GGL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ggl {

// Argument outside the function's domain (e.g. Im tau <= 0 for theta0).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A degenerate lattice pair (parallel vectors) or a moduli point on which
// the required linear form vanishes (gamma(x) ~ 0, alpha3(x) ~ 0).
class degenerate_error : public std::invalid_argument {
public:
    explicit degenerate_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Evaluation landed within pole_eps of a pole.  Carries the offending
// product index so callers can resample or report it.
class pole_error : public std::runtime_error {
public:
    pole_error(const std::string& what, long j, long k)
        : std::runtime_error(what), index_j(j), index_k(k) {}
    long index_j = 0;
    long index_k = 0;
};

// Infinite product failed to reach the term-size cutoff within max_terms.
class no_convergence_error : public std::runtime_error {
public:
    explicit no_convergence_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Phase unwrapping step too large; caller should sample more densely.
class resample_error : public std::runtime_error {
public:
    explicit resample_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace ggl

#endif

#ifndef GGL_TEST_FORMAL_HPP
#define GGL_TEST_FORMAL_HPP

// Formal token algebra over the gamma/delta symbols.  The cocycle checks
// are consequences of the defining relations by pure cancellation; these
// helpers replay the derivations symbolically (exact integer exponents) so
// a wrongly derived component identity cannot hide behind numerics.
//
// Atoms:
//   G|pt|x|y  -- gamma_{x,y} evaluated at point tag pt, with the
//                antisymmetry rule gamma_{y,x} = gamma_{x,y}^{-1} applied
//                on insertion (and gamma_{x,x} = 1 dropped);
//   D|pt|x|g  -- delta_x(g) at point tag pt, a free symbol.
//
// Index labels are strings; the pullback index g^-1 a is written "g:a" so
// (gh)^-1 a and h^-1(g^-1 a) agree by construction of the label.

#include <map>
#include <string>

namespace formal {

class Product {
public:
    // gamma_{x,y} at point pt, exponent e
    void gamma(const std::string& pt, const std::string& x, const std::string& y, int e) {
        if (x == y) return;  // gamma_{a,a} = 1
        if (x < y)
            expo_["G|" + pt + "|" + x + "|" + y] += e;
        else
            expo_["G|" + pt + "|" + y + "|" + x] -= e;
    }
    // delta_x(g) at point pt, exponent e
    void delta(const std::string& pt, const std::string& x, const std::string& g, int e) {
        expo_["D|" + pt + "|" + x + "|" + g] += e;
    }

    // phi_{x,y,z} at pt: the triple product of gammas
    void phi3(const std::string& pt, const std::string& x, const std::string& y,
              const std::string& z, int e) {
        gamma(pt, x, y, e);
        gamma(pt, y, z, e);
        gamma(pt, z, x, e);
    }

    // phi_{x,y}(g): gamma_{g:x,g:y}(g-pulled point) delta_y(g) /
    //               (gamma_{x,y}(base) delta_x(g))
    void phi2(const std::string& base_pt, const std::string& pulled_pt, const std::string& g,
              const std::string& x, const std::string& y, int e) {
        gamma(pulled_pt, "g:" + x, "g:" + y, e);
        delta(base_pt, y, g, e);
        gamma(base_pt, x, y, -e);
        delta(base_pt, x, g, -e);
    }

    bool trivial() const {
        for (const auto& [k, v] : expo_)
            if (v != 0) return false;
        return true;
    }

    const std::map<std::string, int>& exponents() const { return expo_; }

private:
    std::map<std::string, int> expo_;
};

} // namespace formal

#endif

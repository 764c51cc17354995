#pragma once

#include "dihedralis/intmat.hpp"

#include <string>
#include <vector>

namespace dihedralis {

// Dense integer polynomial, coefficients low to high, no trailing zeros.
struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly monomial(unsigned deg, const Int& coef = 1);
    static ZPoly parse(const std::string& s);  // e.g. "x^6 - 3*x^2 + 7"

    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    const Int& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Int coeff(std::size_t i) const { return i < c.size() ? c[i] : Int(0); }
    void trim();

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Int& s) const;
    bool operator==(const ZPoly& o) const { return c == o.c; }
    ZPoly derivative() const;
    Int eval(const Int& x) const;
    std::string str() const;  // normalized textual form
};

Int resultant(const ZPoly& f, const ZPoly& g);
Int discriminant(const ZPoly& f);
// f(x + a)
ZPoly taylor_shift(const ZPoly& f, const Int& a);

} // namespace dihedralis

#pragma once

#include "dihedralis/arith.hpp"
#include "dihedralis/zpoly.hpp"

#include <random>
#include <utility>
#include <vector>

namespace dihedralis {

// Polynomials over Z/pZ, coefficients low to high, trimmed.
using PolyP = std::vector<u64>;

namespace polyp {
void trim(PolyP& a);
int deg(const PolyP& a);
PolyP add(const PolyP& a, const PolyP& b, u64 p);
PolyP sub(const PolyP& a, const PolyP& b, u64 p);
PolyP mul(const PolyP& a, const PolyP& b, u64 p);
PolyP scale(const PolyP& a, u64 s, u64 p);
void divmod(const PolyP& a, const PolyP& b, u64 p, PolyP& q, PolyP& r);
PolyP mod(const PolyP& a, const PolyP& b, u64 p);
PolyP gcd(PolyP a, PolyP b, u64 p);
PolyP monic(const PolyP& a, u64 p);
PolyP derivative(const PolyP& a, u64 p);
PolyP powmod(PolyP base, Int e, const PolyP& f, u64 p);
PolyP from_zpoly(const ZPoly& f, u64 p);
u64 eval(const PolyP& a, u64 x, u64 p);
bool is_irreducible(const PolyP& f, u64 p);
} // namespace polyp

struct PolyFactor {
    PolyP factor;  // monic irreducible
    unsigned multiplicity;
};

// Full factorization of f mod p (monic factors; the leading unit is dropped).
// Cantor-Zassenhaus equal-degree splitting uses `rng`.
std::vector<PolyFactor> poly_factor_mod_p(const PolyP& f, u64 p, std::mt19937_64& rng);
std::vector<PolyFactor> poly_factor_mod_p(const ZPoly& f, u64 p, std::mt19937_64& rng);
// Roots in F_p (each once), ascending.
std::vector<u64> poly_roots_mod_p(const PolyP& f, u64 p, std::mt19937_64& rng);

} // namespace dihedralis

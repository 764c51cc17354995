#pragma once

#include "dihedralis/mpreal.hpp"
#include "dihedralis/quadforms.hpp"
#include "dihedralis/zpoly.hpp"

#include <utility>
#include <vector>

namespace dihedralis {

// Extra bits carried internally by eval_j on top of the requested precision.
constexpr mpfr_prec_t kJGuardBits = 64;

struct CMPoint {
    QuadraticForm form;
    Complex tau;
};

CMPoint cm_point(const QuadraticForm& f, mpfr_prec_t prec);
// j(tau) via j = (256 g + 1)^3 / g with g = Delta(2 tau) / Delta(tau).
Complex eval_j(const Complex& tau, mpfr_prec_t prec);

// 64 + ceil(3.5 * sum over reduced forms of pi sqrt|d| / a).
mpfr_prec_t initial_cm_precision(const Int& d);

struct ClassPolynomial {
    ZPoly poly;
    mpfr_prec_t precision = 0;  // the larger of the two agreeing precisions
};
// Starts at `start` bits (default initial_cm_precision) and doubles until two
// consecutive precisions agree.
ClassPolynomial hilbert_class_polynomial(const Int& d, mpfr_prec_t start = 0);

// Element x + y*omega of Z[omega], omega = (t + sqrt d)/2 with t = d mod 2.
using ZOmega = std::pair<Int, Int>;

struct SubfieldPolynomial {
    Int d;
    unsigned q = 0;
    // Monic degree-q polynomial prod (x - t_k) over the coset traces, low to high.
    std::vector<ZOmega> trace_coeffs;
    bool trace_rational = false;  // all omega-parts vanish
    ZPoly trace_poly;             // set when trace_rational
    // Degree-2q minimal polynomial of t_0 + u*omega over Q.
    ZPoly poly;
    long u = 0;
    mpfr_prec_t precision = 0;
    long residual_log2 = 0;       // worst recognition residual, log2
    std::vector<Complex> traces;  // t_k for k in Z/q, at the final precision
};

// Fails SubgroupNotUnique, NotDividing, PrecisionExhausted, DegenerateGenerator.
SubfieldPolynomial subfield_defining_polynomial(const FormClassGroup& G, unsigned q);

// Order of Frobenius at l in Gal(M/Q) = D_q: 2 for inert l, the order of the
// image of the prime class in Z/q for split l, 0 for ramified l.
unsigned predicted_frobenius_order(const FormClassGroup& G, unsigned q, u64 l);

// Irreducibility of a squarefree degree-2q polynomial with dihedral Galois
// group, certified by one prime with all factors of degree 2 and one prime
// with two factors of degree q.
bool certify_dihedral_irreducible(const ZPoly& F, unsigned q, u64 prime_limit = 20000);

} // namespace dihedralis

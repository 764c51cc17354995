#include "dihedralis/cm.hpp"

#include "dihedralis/arith.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/polymodp.hpp"

#include <cmath>
#include <random>

namespace dihedralis {

namespace {

Complex cpow(const Complex& z, unsigned long n) {
    Complex acc{Real(z.prec(), 1), Real(z.prec(), 0)}, b = z;
    while (n) {
        if (n & 1) acc = acc * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return acc;
}

// Euler's product prod (1 - q^n) by the pentagonal number series. `lq` is
// -log2|q|; terms below 2^-(prec+32) are dropped.
Complex euler_series(const Complex& q, double lq, mpfr_prec_t prec) {
    Complex s{Real(prec, 1), Real(prec, 0)};
    double need = (double)prec + 32;
    for (unsigned long k = 1;; ++k) {
        unsigned long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if ((double)e1 * lq > need) break;
        if (k > 200000) fail("PrecisionExhausted", "eta series does not converge");
        Complex t = cpow(q, e1);
        if ((double)e2 * lq <= need) t = t + cpow(q, e2);
        s = (k % 2) ? s - t : s + t;
    }
    return s;
}

} // namespace

CMPoint cm_point(const QuadraticForm& f, mpfr_prec_t prec) {
    Int d = f.discriminant();
    Real two_a(prec, 2 * f.a);
    Real re = Real(prec, Int(-f.b)) / two_a;
    Real im = Real(prec, Int(-d)).sqrt() / two_a;
    return {f, Complex(re, im)};
}

Complex eval_j(const Complex& tau0, mpfr_prec_t prec) {
    if (mpfr_sgn(tau0.im.get()) <= 0) fail("NotInUpperHalfPlane", "Im(tau) <= 0");
    mpfr_prec_t W = prec + kJGuardBits;
    Complex tau = tau0.with_prec(W);
    double lq = 2 * M_PI * tau.im.to_double() / M_LN2;
    if (!(lq > 1e-3)) fail("PrecisionExhausted", "|q| too close to 1");
    Complex q = Complex::exp_2pi_i(tau);
    Complex q2 = q * q;
    Complex r = euler_series(q2, 2 * lq, W) / euler_series(q, lq, W);
    Complex r8 = cpow(r, 8);
    Complex r24 = r8 * r8 * r8;
    Complex g = q * r24;
    Complex one{Real(W, 1), Real(W, 0)};
    Complex h = g * 256 + one;
    Complex j = h * h * h / g;
    return j.with_prec(prec);
}

mpfr_prec_t initial_cm_precision(const Int& d) {
    double s = 0, rd = std::sqrt(std::fabs(d.get_d()));
    for (const auto& f : reduced_forms(d)) s += M_PI * rd / f.a.get_d();
    return 64 + (mpfr_prec_t)std::ceil(3.5 * s);
}

namespace {

// Coefficients of prod (x - r_i), low to high.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots, mpfr_prec_t p) {
    std::vector<Complex> c{Complex{Real(p, 1), Real(p, 0)}};
    for (const auto& r : roots) {
        std::vector<Complex> n(c.size() + 1, Complex(p));
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] = n[i + 1] + c[i];
            n[i] = n[i] - c[i] * r;
        }
        c = std::move(n);
    }
    return c;
}

struct Recognized {
    bool ok = false;
    std::vector<ZOmega> coeffs;
    long residual_log2 = -(1L << 40);
};

// Recognize complex numbers in Z[omega].
Recognized recognize(const std::vector<Complex>& c, const Int& d, mpfr_prec_t p) {
    Recognized out;
    out.ok = true;
    long t = mpz_odd_p(d.get_mpz_t()) ? 1 : 0;
    Real om_re = Real(p, t) / Real(p, 2);
    Real om_im = Real(p, Int(-d)).sqrt() / Real(p, 2);
    long limit = -(long)(p / 4);
    for (const auto& z : c) {
        Real y = z.im / om_im;
        Int Y = y.round();
        Real x = z.re - Real(p, Y) * om_re;
        Int X = x.round();
        Real er = z.re - Real(p, X) - Real(p, Y) * om_re;
        Real ei = z.im - Real(p, Y) * om_im;
        Real res = (er * er + ei * ei).sqrt();
        long lr = res.log2_abs();
        out.residual_log2 = std::max(out.residual_log2, lr);
        if (lr >= limit) out.ok = false;
        out.coeffs.push_back({X, Y});
    }
    return out;
}

struct TraceAttempt {
    Recognized rec;
    std::vector<Complex> traces;
};

TraceAttempt trace_attempt(const FormClassGroup& G, unsigned q, mpfr_prec_t p) {
    TraceAttempt a;
    a.traces.assign(q, Complex(p));
    for (const auto& f : G.forms) {
        long k = quotient_class(G, q, f);
        a.traces[k] = a.traces[k] + eval_j(cm_point(f, p).tau, p);
    }
    a.rec = recognize(poly_from_roots(a.traces, p), G.d, p);
    return a;
}

// Norm from Z[omega][x] to Z[x] of T(x - u*omega).
ZPoly norm_of_shift(const std::vector<ZOmega>& T, const Int& d, long u) {
    Int tr = mpz_odd_p(d.get_mpz_t()) ? Int(1) : Int(0);
    Int nm = (tr * tr - d) / 4;  // omega * conj(omega)
    // omega^2 = tr*omega - nm
    ZPoly A{{Int(1)}}, B;  // (x - u omega)^i = A + B omega
    ZPoly SA, SB;          // accumulated T(x - u omega)
    ZPoly X = ZPoly::monomial(1);
    for (std::size_t i = 0; i < T.size(); ++i) {
        const auto& [cx, cy] = T[i];
        // (A + B w)(cx + cy w) = (A cx - nm B cy) + (A cy + B cx + tr B cy) w
        SA = SA + A * cx - B * Int(nm * cy);
        SB = SB + A * cy + B * cx + B * Int(tr * cy);
        // multiply by (x - u w): (A x + u nm B) + (B x - u A - u tr B) w
        ZPoly nA = A * X + B * Int(u * nm);
        ZPoly nB = B * X - A * Int(u) - B * Int(u * tr);
        A = nA;
        B = nB;
    }
    return SA * SA + SA * SB * tr + SB * SB * nm;
}

} // namespace

ClassPolynomial hilbert_class_polynomial(const Int& d, mpfr_prec_t start) {
    if (!is_fundamental_discriminant(d) || d >= 0) fail("NonFundamental", d.get_str());
    auto forms = reduced_forms(d);
    mpfr_prec_t P = start > 0 ? start : initial_cm_precision(d);
    auto attempt = [&](mpfr_prec_t p, ZPoly& out) {
        std::vector<Complex> roots;
        for (const auto& f : forms) roots.push_back(eval_j(cm_point(f, p).tau, p));
        auto rec = recognize(poly_from_roots(roots, p), Int(-4), p);  // omega = i
        if (!rec.ok) return false;
        std::vector<Int> c;
        for (auto& [x, y] : rec.coeffs) {
            if (y != 0) return false;
            c.push_back(x);
        }
        out = ZPoly(c);
        return true;
    };
    for (int round = 0; round <= 4; ++round, P *= 2) {
        ZPoly a, b;
        if (!attempt(P, a) || !attempt(2 * P, b) || !(a == b)) continue;
        return {a, 2 * P};
    }
    fail("PrecisionExhausted", "class polynomial of " + d.get_str());
}

bool certify_dihedral_irreducible(const ZPoly& F, unsigned q, u64 prime_limit) {
    std::mt19937_64 rng(12345);
    bool two = false, qq = false;
    for (u64 l : primes_up_to(prime_limit)) {
        if (mpz_fdiv_ui(F.lead().get_mpz_t(), l) == 0) continue;
        auto fac = poly_factor_mod_p(F, l, rng);
        bool sqf = true;
        for (auto& f : fac)
            if (f.multiplicity > 1) sqf = false;
        if (!sqf) continue;
        bool all2 = true;
        for (auto& f : fac)
            if (polyp::deg(f.factor) != 2) all2 = false;
        if (all2) two = true;
        if (fac.size() == 2 && polyp::deg(fac[0].factor) == (int)q && polyp::deg(fac[1].factor) == (int)q)
            qq = true;
        if (two && qq) return true;
    }
    return false;
}

SubfieldPolynomial subfield_defining_polynomial(const FormClassGroup& G, unsigned q) {
    if (q < 3 || !is_prime((u64)q)) fail("BadDegree", "q must be an odd prime");
    quotient_class(G, q, G.identity());  // precondition gate
    SubfieldPolynomial out;
    out.d = G.d;
    out.q = q;
    mpfr_prec_t P = initial_cm_precision(G.d);
    bool done = false;
    for (int round = 0; round <= 4 && !done; ++round, P *= 2) {
        TraceAttempt a = trace_attempt(G, q, P);
        if (!a.rec.ok) continue;
        TraceAttempt b = trace_attempt(G, q, 2 * P);
        if (!b.rec.ok || a.rec.coeffs != b.rec.coeffs) continue;
        out.trace_coeffs = b.rec.coeffs;
        out.residual_log2 = b.rec.residual_log2;
        out.traces = std::move(b.traces);
        out.precision = 2 * P;
        done = true;
    }
    if (!done) fail("PrecisionExhausted", "coset traces for d=" + G.d.get_str());

    out.trace_rational = true;
    std::vector<Int> tc;
    for (auto& [x, y] : out.trace_coeffs) {
        if (y != 0) out.trace_rational = false;
        tc.push_back(x);
    }
    if (out.trace_rational) out.trace_poly = ZPoly(tc);

    for (long u = 0; u <= 16; ++u) {
        ZPoly F = norm_of_shift(out.trace_coeffs, G.d, u);
        if (F.degree() != 2 * (int)q || discriminant(F) == 0) continue;
        if (!certify_dihedral_irreducible(F, q)) continue;
        out.poly = F;
        out.u = u;
        return out;
    }
    fail("DegenerateGenerator", "no shift u <= 16 gives a squarefree irreducible polynomial");
}

unsigned predicted_frobenius_order(const FormClassGroup& G, unsigned q, u64 l) {
    auto s = prime_frobenius_class(G.d, l);
    if (s.type == SplitType::Ramified) return 0;
    if (s.type == SplitType::Inert) return 2;
    return quotient_class(G, q, *s.cls) == 0 ? 1 : q;
}

} // namespace dihedralis

#include "doctest.h"

#include "dihedralis/arith.hpp"
#include "dihedralis/cm.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/polymodp.hpp"

#include <random>

using namespace dihedralis;

namespace {

Complex one(mpfr_prec_t p) { return {Real(p, 1), Real(p, 0)}; }

// j from Eisenstein series, j = 1728 E4^3 / (E4^3 - E6^2); a method
// independent of the eta quotient used by the engine.
Complex j_eisenstein(const Complex& tau, mpfr_prec_t p, int terms) {
    Complex q = Complex::exp_2pi_i(tau.with_prec(p));
    Complex e4 = one(p), e6 = one(p), qn = one(p);
    for (long n = 1; n <= terms; ++n) {
        qn = qn * q;
        long s3 = 0, s5 = 0;
        for (long k = 1; k <= n; ++k)
            if (n % k == 0) {
                s3 += k * k * k;
                s5 += k * k * k * k * k;
            }
        e4 = e4 + qn * (240 * s3);
        e6 = e6 - qn * (504 * s5);
    }
    Complex e43 = e4 * e4 * e4;
    return e43 * 1728 / (e43 - e6 * e6);
}

bool close(const Complex& a, const Complex& b, long bits) {
    Real mag = a.abs() + Real(a.prec(), 1);
    Real diff = (a - b).abs();
    return diff.log2_abs() < mag.log2_abs() - bits;
}

Complex tau_of(long a, long b, long d, mpfr_prec_t p) {
    return cm_point(QuadraticForm{a, b, (Int(b) * b - d) / (4 * a)}, p).tau;
}

} // namespace

TEST_SUITE("cm-classfield") {

TEST_CASE("j at calibration points") {
    const mpfr_prec_t P = 256;
    Complex ji = eval_j(tau_of(1, 0, -4, P), P);
    CHECK(ji.re.round() == 1728);
    CHECK(close(ji, eval_j(tau_of(1, 0, -4, 2 * P), 2 * P), P - 80));
    Complex jr = eval_j(tau_of(1, 1, -3, P), P);
    CHECK(jr.re.round() == 0);
    CHECK(jr.abs().log2_abs() < -(long)P / 2);
    Complex j163 = eval_j(tau_of(1, 1, -163, P), P);
    CHECK(j163.re.round() == Int("-262537412640768000"));
    CHECK(eval_j(tau_of(1, 1, -163, 2 * P), 2 * P).re.round() == Int("-262537412640768000"));
    CHECK(j163.im.abs().log2_abs() < -60);
}

TEST_CASE("eta quotient agrees with Eisenstein series") {
    const mpfr_prec_t P = 200;
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        Real re = Real(P, (long)(rng() % 1000)) / Real(P, 1000) - Real(P, 1) / Real(P, 2);
        Real im = Real(P, 1) + Real(P, (long)(rng() % 1000)) / Real(P, 500);
        Complex tau{re, im};
        CHECK(close(eval_j(tau, P), j_eisenstein(tau, P + 64, 120), 150));
    }
    // values of class number one discriminants
    for (auto [d, j] : std::vector<std::pair<long, long>>{{-7, -3375}, {-8, 8000}, {-11, -32768}, {-19, -884736}}) {
        long b = d % 2 ? 1 : 0;
        CHECK(eval_j(tau_of(1, b, d, 128), 128).re.round() == j);
    }
}

TEST_CASE("hilbert class polynomials") {
    CHECK(hilbert_class_polynomial(Int(-3)).poly == ZPoly::parse("x"));
    CHECK(hilbert_class_polynomial(Int(-4)).poly == ZPoly::parse("x - 1728"));
    for (long d : {-23L, -31L, -47L, -71L}) {
        auto H = hilbert_class_polynomial(Int(d));
        auto forms = reduced_forms(Int(d));
        REQUIRE(H.poly.degree() == (int)forms.size());
        CHECK(H.poly.is_monic());
        // rebuild from Eisenstein-series roots at an unrelated precision
        mpfr_prec_t p = H.precision + 37;
        std::vector<Complex> c{one(p)};
        for (auto& f : forms) {
            Complex r = j_eisenstein(cm_point(f, p).tau, p, 400);
            std::vector<Complex> n(c.size() + 1, Complex(p));
            for (std::size_t i = 0; i < c.size(); ++i) {
                n[i + 1] = n[i + 1] + c[i];
                n[i] = n[i] - c[i] * r;
            }
            c = n;
        }
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].re.round() == H.poly.c[i]);
    }
}

TEST_CASE("subfield polynomial preconditions") {
    CHECK_THROWS_AS(subfield_defining_polynomial(class_group(Int(-4027)), 3), EngineError);  // Z/3 x Z/3
    CHECK_THROWS_AS(subfield_defining_polynomial(class_group(Int(-23)), 5), EngineError);
    try {
        subfield_defining_polynomial(class_group(Int(-4027)), 3);
    } catch (const EngineError& e) {
        CHECK(e.name() == "SubgroupNotUnique");
    }
}

TEST_CASE("subfield polynomials have the dihedral Galois signature") {
    std::mt19937_64 rng(41);
    for (auto [d, q] : std::vector<std::pair<long, unsigned>>{{-23, 3}, {-4219, 3}, {-4219, 5}, {-8059, 7}}) {
        CAPTURE(d);
        CAPTURE(q);
        auto G = class_group(Int(d));
        auto S = subfield_defining_polynomial(G, q);
        REQUIRE(S.poly.degree() == 2 * (int)q);
        CHECK(S.poly.is_monic());
        CHECK(S.trace_rational);
        CHECK(S.trace_poly.degree() == (int)q);
        CHECK(S.residual_log2 < -(long)S.precision / 4);
        // every root of the degree-2q polynomial lies above a root of the trace polynomial
        CHECK(certify_dihedral_irreducible(S.poly, q));
        int tested = 0;
        for (u64 l = 3; tested < 25; l = next_prime(l + rng() % 50)) {
            if (Int(d) % l == 0) continue;
            auto fac = poly_factor_mod_p(S.poly, l, rng);
            bool sqf = true;
            for (auto& f : fac) sqf = sqf && f.multiplicity == 1;
            if (!sqf) continue;
            unsigned expect = predicted_frobenius_order(G, q, l);
            for (auto& f : fac) CHECK(polyp::deg(f.factor) == (int)expect);
            ++tested;
        }
    }
}

}

#include "doctest.h"

#include "dihedralis/arith.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/quadforms.hpp"

#include <random>

using namespace dihedralis;

namespace {

QuadraticForm F(long a, long b, long c) { return {a, b, c}; }

// Reduction conditions written out independently of is_reduced().
bool reduced_oracle(const QuadraticForm& f) {
    if (f.a <= 0) return false;
    if (!(abs(f.b) <= f.a && f.a <= f.c)) return false;
    if (abs(f.b) == f.a || f.a == f.c) return f.b >= 0;
    return true;
}

// f evaluated after the linear substitution T.
QuadraticForm substitute(const QuadraticForm& f, const IntMatrix& T) {
    Int p = T(0, 0), q = T(0, 1), r = T(1, 0), s = T(1, 1);
    return {f.a * p * p + f.b * p * r + f.c * r * r,
            2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.a * q * q + f.b * q * s + f.c * s * s};
}

// Dirichlet composition for coprime leading coefficients.
QuadraticForm dirichlet(const QuadraticForm& f, const QuadraticForm& g) {
    Int D = f.discriminant(), A = f.a * g.a;
    for (Int B = -A; B <= A; ++B) {
        if (mod_floor(Int(B - f.b), Int(2 * f.a)) != 0) continue;
        if (mod_floor(Int(B - g.b), Int(2 * g.a)) != 0) continue;
        if (mod_floor(Int(B * B - D), Int(4 * A)) != 0) continue;
        return reduce_form({A, B, (B * B - D) / (4 * A)});
    }
    FAIL("no Dirichlet B");
    return f;
}

std::vector<long> fundamental_up_to(long n) {
    std::vector<long> out;
    for (long d = -3; d >= -n; --d)
        if (is_fundamental_discriminant(Int(d))) out.push_back(d);
    return out;
}

} // namespace

TEST_SUITE("quadforms") {

TEST_CASE("reduce_form examples") {
    CHECK(reduce_form(F(1, 0, 5)) == F(1, 0, 5));
    CHECK(reduce_form(F(5, 4, 2)) == F(2, 0, 3));
    CHECK(reduce_form(F(3, 2, 3)) == F(3, 2, 3));
    CHECK(reduce_form(F(3, -2, 3)) == F(3, 2, 3));
    CHECK_THROWS_AS(reduce_form(F(-1, 0, -5)), EngineError);
    CHECK_THROWS_AS(reduce_form(F(1, 4, 1)), EngineError);
}

TEST_CASE("reduction is idempotent and tracked by a unimodular substitution") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 2000; ++t) {
        QuadraticForm f{(long)(rng() % 50) + 1, (long)(rng() % 201) - 100, 0};
        // choose c to make the form definite
        Int c = (f.b * f.b) / (4 * f.a) + 1 + (long)(rng() % 40);
        f.c = c;
        IntMatrix T;
        QuadraticForm r = reduce_form(f, &T);
        CHECK(reduced_oracle(r));
        CHECK(reduce_form(r) == r);
        CHECK(T.det() == 1);
        CHECK(substitute(f, T) == r);
    }
}

TEST_CASE("reduced forms of small discriminants") {
    // d = -24 has exactly (1,0,6) and (2,0,3)
    auto r = reduced_forms(Int(-24));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == F(1, 0, 6));
    CHECK(r[1] == F(2, 0, 3));
    for (auto& f : reduced_forms(Int(-3299))) CHECK(reduced_oracle(f));
}

TEST_CASE("composition examples") {
    CHECK(compose_forms(F(2, 2, 3), F(2, 2, 3)) == F(1, 0, 5));
    CHECK(compose_forms(F(1, 1, 6), F(2, 1, 3)) == F(2, 1, 3));
    CHECK(compose_forms(F(2, 1, 3), F(2, -1, 3)) == F(1, 1, 6));
    CHECK_THROWS_AS(compose_forms(F(1, 0, 1), F(1, 1, 6)), EngineError);
}

TEST_CASE("composition agrees with Dirichlet composition") {
    std::mt19937_64 rng(23);
    auto ds = fundamental_up_to(3000);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        long d = ds[rng() % ds.size()];
        auto forms = reduced_forms(Int(d));
        auto& f = forms[rng() % forms.size()];
        auto& g = forms[rng() % forms.size()];
        if (gcd(f.a, g.a) != 1) continue;
        CHECK(compose_forms(f, g) == dirichlet(f, g));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("class group examples") {
    auto G4 = class_group(Int(-4));
    CHECK(G4.order() == 1);
    CHECK(G4.structure.invariant_factors.empty());
    auto G23 = class_group(Int(-23));
    CHECK(G23.order() == 3);
    REQUIRE(G23.structure.invariant_factors.size() == 1);
    auto G = class_group(Int(-4219));
    CHECK(G.order() == 15);
    REQUIRE(G.structure.invariant_factors.size() == 1);
    CHECK(G.structure.invariant_factors[0] == 15);
    CHECK_THROWS_AS(class_group(Int(-16)), EngineError);
    // (Z/2)^2 at d = -420
    auto G420 = class_group(Int(-420));
    CHECK(G420.structure.invariant_factors == std::vector<Int>{2, 2, 2});
    CHECK(G420.order() == 8);
}

TEST_CASE("analytic class number matches form count for all |d| <= 5000") {
    CHECK(analytic_class_number(Int(-20)) == 2);
    CHECK(analytic_class_number(Int(-4)) == 1);
    CHECK(analytic_class_number(Int(-4219)) == 15);
    for (long d : fundamental_up_to(5000)) {
        auto h = analytic_class_number(Int(d));
        if (h != (long)reduced_forms(Int(d)).size()) {
            FAIL_CHECK("mismatch at d=" << d);
        }
    }
}

TEST_CASE("group axioms, dlog homomorphism and inversion") {
    std::mt19937_64 rng(31);
    auto ds = fundamental_up_to(12000);
    for (int t = 0; t < 50; ++t) {
        long d = ds[rng() % ds.size()];
        auto G = class_group(Int(d));
        CAPTURE(d);
        REQUIRE(G.order() == (long)G.forms.size());
        auto e = G.identity();
        const auto& inv = G.structure.invariant_factors;
        bool full = G.forms.size() <= 40;
        for (auto& f : G.forms) {
            CHECK(compose_forms(e, f) == f);
            CHECK(compose_forms(f, QuadraticForm{f.a, -f.b, f.c}) == e);
            CHECK(G.element(G.dlog(f)) == f);
            // conjugation (a,b,c) -> (a,-b,c) is inversion
            auto conj = G.dlog(QuadraticForm{f.a, -f.b, f.c});
            auto v = G.dlog(f);
            for (std::size_t i = 0; i < inv.size(); ++i) CHECK(mod_floor(Int(conj[i] + v[i]), inv[i]) == 0);
        }
        int trials = full ? 0 : 3000;
        auto check_triple = [&](const QuadraticForm& a, const QuadraticForm& b, const QuadraticForm& c) {
            CHECK(compose_forms(compose_forms(a, b), c) == compose_forms(a, compose_forms(b, c)));
        };
        auto check_pair = [&](const QuadraticForm& a, const QuadraticForm& b) {
            CHECK(compose_forms(a, b) == compose_forms(b, a));
            auto s = G.dlog(compose_forms(a, b));
            auto x = G.dlog(a), y = G.dlog(b);
            for (std::size_t i = 0; i < inv.size(); ++i)
                CHECK(mod_floor(Int(s[i] - x[i] - y[i]), inv[i]) == 0);
        };
        if (full) {
            for (auto& a : G.forms)
                for (auto& b : G.forms) {
                    check_pair(a, b);
                    for (auto& c : G.forms) check_triple(a, b, c);
                }
        } else {
            for (int i = 0; i < trials; ++i) {
                auto& a = G.forms[rng() % G.forms.size()];
                auto& b = G.forms[rng() % G.forms.size()];
                auto& c = G.forms[rng() % G.forms.size()];
                check_pair(a, b);
                check_triple(a, b, c);
            }
        }
    }
}

TEST_CASE("prime frobenius classes") {
    auto r = prime_frobenius_class(Int(-23), 23);
    CHECK(r.type == SplitType::Ramified);
    CHECK(*r.prime_form == F(23, 23, 6));
    auto s = prime_frobenius_class(Int(-23), 3);
    CHECK(s.type == SplitType::Split);
    CHECK((*s.cls == F(2, 1, 3) || *s.cls == F(2, -1, 3)));
    CHECK(prime_frobenius_class(Int(-4), 3).type == SplitType::Inert);
    // every split or ramified prime form has the right discriminant and type
    for (long d : {-23L, -4219L, -20L, -8L, -4L, -3L, -19867L}) {
        for (u64 l : primes_up_to(400)) {
            auto x = prime_frobenius_class(Int(d), l);
            int k = kronecker_symbol(Int(d), Int(l));
            CHECK((x.type == SplitType::Inert) == (k == -1));
            if (k >= 0) {
                CHECK(x.prime_form->discriminant() == d);
                CHECK(x.prime_form->a == (long)l);
                if (k > 0) CHECK(x.prime_form->b > 0);
                CHECK(x.prime_form->b >= 0);
            }
            if (k == 0) {
                // ramified classes are 2-torsion
                CHECK(compose_forms(*x.cls, *x.cls) == principal_form(Int(d)));
            }
        }
    }
}

}

#include "doctest.h"

#include "dihedralis/arith.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/ffield.hpp"
#include "dihedralis/intmat.hpp"
#include "dihedralis/polymodp.hpp"

#include <functional>
#include <numeric>
#include <random>

using namespace dihedralis;

namespace {

// gcd of all k x k minors, computed by brute force over index subsets.
Int determinantal_divisor(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> rs, cs;
    Int g = 0;
    std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t,
                       std::vector<std::vector<std::size_t>>&)>
        choose = [&](std::size_t start, std::vector<std::size_t>& cur, std::size_t n,
                     std::vector<std::vector<std::size_t>>& out) {
            if (cur.size() == k) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                cur.push_back(i);
                choose(i + 1, cur, n, out);
                cur.pop_back();
            }
        };
    std::vector<std::vector<std::size_t>> rsets, csets;
    std::vector<std::size_t> cur;
    choose(0, cur, m.rows(), rsets);
    choose(0, cur, m.cols(), csets);
    for (auto& r : rsets)
        for (auto& c : csets) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
            g = gcd(g, sub.det());
        }
    return g;
}

int naive_legendre(long a, long p) {
    long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    u64 e = powmod((u64)r, (u64)(p - 1) / 2, (u64)p);
    return e == 1 ? 1 : -1;
}

// Kronecker symbol from prime factorization of n and the textbook rules.
int naive_kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    for (long p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            if (p == 2) {
                if (a % 2 == 0) return 0;
                long r = ((a % 8) + 8) % 8;
                if (r == 3 || r == 5) s = -s;
            } else {
                s *= naive_legendre(a, p);
            }
        }
    }
    return s;
}

bool brute_irreducible(const PolyP& f, u64 p) {
    int n = polyp::deg(f);
    if (n <= 0) return false;
    for (int d = 1; 2 * d <= n; ++d) {
        u64 count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (u64 code = 0; code < count; ++code) {
            PolyP g(d + 1);
            u64 c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            if (polyp::mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("exact-algebra") {

TEST_CASE("snf examples") {
    auto r = snf_with_transforms(IntMatrix{{6, 0}, {0, 4}});
    CHECK(r.D == (IntMatrix{{2, 0}, {0, 12}}));
    auto id = snf_with_transforms(IntMatrix::identity(2));
    CHECK(id.D == IntMatrix::identity(2));
    CHECK(id.U == IntMatrix::identity(2));
    CHECK(id.V == IntMatrix::identity(2));
    auto r2 = snf_with_transforms(IntMatrix{{2, 4}, {4, 8}});
    CHECK(r2.D == (IntMatrix{{2, 0}, {0, 0}}));
}

TEST_CASE("snf agrees with determinantal divisors on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::size_t R = 1 + rng() % 4, C = 1 + rng() % 4;
        IntMatrix m(R, C);
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) m(i, j) = (long)(rng() % 41) - 20;
        auto s = snf_with_transforms(m);
        Int prev = 1;
        for (std::size_t k = 1; k <= std::min(R, C); ++k) {
            Int dk = determinantal_divisor(m, k);
            Int expect = prev == 0 ? Int(0) : dk / prev;
            if (prev == 0) expect = 0;
            CHECK(s.D(k - 1, k - 1) == expect);
            prev = dk;
        }
    }
}

TEST_CASE("abelian group structure") {
    auto g = abelian_group_structure(IntMatrix{{15}});
    REQUIRE(g.invariant_factors.size() == 1);
    CHECK(g.invariant_factors[0] == 15);
    auto g2 = abelian_group_structure(IntMatrix{{2, 0}, {0, 3}});
    REQUIRE(g2.invariant_factors.size() == 1);
    CHECK(g2.invariant_factors[0] == 6);
    CHECK_THROWS_AS(abelian_group_structure(IntMatrix(0, 1)), EngineError);
    auto free = abelian_group_structure(IntMatrix(0, 1), false);
    CHECK(free.free_rank == 1);
}

TEST_CASE("abelian group structure is invariant under unimodular changes") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        std::size_t k = 1 + rng() % 4;
        IntMatrix rel(k + 1, k);
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j < k; ++j) rel(i, j) = (long)(rng() % 13) - 6;
        for (std::size_t i = 0; i < k; ++i) rel(i, i) += 13;  // keep it finite
        auto base = abelian_group_structure(rel);
        // random unimodular generator change and an extra relation in the span
        IntMatrix U = IntMatrix::identity(k);
        for (int s = 0; s < 5; ++s) {
            std::size_t a = rng() % k, b = rng() % k;
            if (a == b) continue;
            long q = (long)(rng() % 5) - 2;
            for (std::size_t c = 0; c < k; ++c) U(c, a) += q * U(c, b);
        }
        IntMatrix rel2 = rel * U;
        IntVec extra(k);
        for (std::size_t c = 0; c < k; ++c) extra[c] = rel2(0, c) * 3 - rel2(1 % rel2.rows(), c);
        rel2.append_row(extra);
        auto other = abelian_group_structure(rel2);
        CHECK(base.invariant_factors == other.invariant_factors);
        // coordinates of each relation row vanish
        for (std::size_t i = 0; i < rel.rows(); ++i)
            for (auto& c : base.coordinates(rel.row(i))) CHECK(c == 0);
    }
}

TEST_CASE("lattice accumulator matches hnf determinant") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::size_t k = 2 + rng() % 5;
        LatticeAccumulator acc(k);
        IntMatrix all(0, k);
        for (std::size_t i = 0; i < k + 6; ++i) {
            IntVec v(k);
            for (auto& x : v) x = (long)(rng() % 9) - 4;
            all.append_row(v);
            acc.insert(v);
        }
        auto h = hnf(all);
        if (h.rank < k) {
            CHECK(!acc.full_rank());
            continue;
        }
        Int det = 1;
        for (std::size_t i = 0; i < k; ++i) det *= h.H(i, i);
        REQUIRE(acc.full_rank());
        CHECK(acc.determinant() == det);
        IntMatrix B = acc.basis();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) CHECK(B(i, j) == h.H(i, j));
    }
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker_symbol(0L, 5L) == 0);
    for (long a = -10; a <= 10; ++a) CHECK(kronecker_symbol(a, 1L) == 1);
    CHECK(kronecker_symbol(-23L, 2L) == 1);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 2000; ++t) {
        long a = (long)(rng() % 2001) - 1000, n = (long)(rng() % 2001) - 1000;
        CHECK(kronecker_symbol(a, n) == naive_kronecker(a, n));
    }
    // multiplicativity in both arguments
    for (int t = 0; t < 500; ++t) {
        long a = (long)(rng() % 201) - 100, b = (long)(rng() % 201) - 100;
        long n = 2 * (long)(rng() % 200) + 1;
        CHECK(kronecker_symbol(a * b, n) == kronecker_symbol(a, n) * kronecker_symbol(b, n));
        long m = 2 * (long)(rng() % 200) + 1;
        CHECK(kronecker_symbol(a, n * m) == kronecker_symbol(a, n) * kronecker_symbol(a, m));
    }
}

TEST_CASE("finite field orders") {
    auto F5 = FiniteField::make(5, 1);
    CHECK(ff_mult_order(*F5, 1) == 1);
    CHECK(ff_mult_order(*F5, 2) == 4);
    auto F11 = FiniteField::make(11, 1);
    CHECK(ff_mult_order(FiniteFieldElement{F11, 7}) == 10);
    CHECK_THROWS_AS(ff_mult_order(*F11, 0), EngineError);
    // enumeration oracle over F_25 and F_8
    for (auto F : {FiniteField::make(5, 2), FiniteField::make(2, 3), FiniteField::make(3, 4)}) {
        for (FiniteField::Elem x = 1; x < F->size(); ++x) {
            u64 m = 1;
            FiniteField::Elem y = x;
            while (y != 1) {
                y = F->mul(y, x);
                ++m;
            }
            CHECK(ff_mult_order(*F, x) == m);
            CHECK(F->mul(x, F->inv(x)) == 1);
        }
    }
    // field axioms spot checks
    auto F = FiniteField::make(5, 2);
    for (FiniteField::Elem a = 0; a < 25; ++a)
        for (FiniteField::Elem b = 0; b < 25; ++b) {
            CHECK(F->sub(F->add(a, b), b) == a);
            for (FiniteField::Elem c = 0; c < 25; c += 7)
                CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
}

TEST_CASE("minimal weight defining polynomial") {
    // F_4: x^2+x+1 is the only irreducible quadratic over F_2.
    CHECK(FiniteField::make(2, 2)->modulus() == PolyP{1, 1, 1});
    // F_25: x^2+2 (weight 1) precedes everything of weight 2.
    CHECK(FiniteField::make(5, 2)->modulus() == PolyP{2, 0, 1});
    CHECK(order_degree(5, 3) == 2);
    CHECK(order_degree(2, 7) == 3);
}

TEST_CASE("poly factor mod p examples") {
    std::mt19937_64 rng(1);
    auto f = ZPoly::parse("x^2+1");
    auto a = poly_factor_mod_p(f, 2, rng);
    REQUIRE(a.size() == 1);
    CHECK(a[0].factor == PolyP{1, 1});
    CHECK(a[0].multiplicity == 2);
    auto b = poly_factor_mod_p(f, 5, rng);
    REQUIRE(b.size() == 2);
    CHECK(b[0].factor == PolyP{2, 1});
    CHECK(b[1].factor == PolyP{3, 1});
    auto c = poly_factor_mod_p(f, 3, rng);
    REQUIRE(c.size() == 1);
    CHECK(c[0].factor == PolyP{1, 0, 1});
    CHECK_THROWS_AS(poly_factor_mod_p(ZPoly::parse("3*x+3"), 3, rng), EngineError);
}

TEST_CASE("poly factor mod p re-expands on random inputs") {
    std::mt19937_64 rng(99);
    const u64 primes[] = {2, 3, 5, 7, 11, 13, 101, 65537};
    for (int t = 0; t < 1000; ++t) {
        u64 p = primes[rng() % 8];
        int d = 1 + (int)(rng() % 8);
        PolyP f(d + 1);
        for (auto& x : f) x = rng() % p;
        f[d] = 1 + rng() % (p - 1);
        auto fac = poly_factor_mod_p(f, p, rng);
        PolyP prod{1};
        for (auto& pf : fac) {
            for (unsigned i = 0; i < pf.multiplicity; ++i) prod = polyp::mul(prod, pf.factor, p);
            if (p <= 5 && polyp::deg(pf.factor) <= 4)
                CHECK(brute_irreducible(pf.factor, p));
            else
                CHECK(polyp::is_irreducible(pf.factor, p));
        }
        CHECK(polyp::scale(prod, f.back(), p) == f);
    }
}

TEST_CASE("integer helpers") {
    auto f = factor_integer(Int("1000000016000000063"));  // 1000000007 * 1000000009
    CHECK(f.size() == 2);
    CHECK(sqrt_mod_prime(10, 13) * sqrt_mod_prime(10, 13) % 13 == 10);
    CHECK(is_fundamental_discriminant(Int(-4219)));
    CHECK(is_fundamental_discriminant(Int(-4)));
    CHECK(!is_fundamental_discriminant(Int(-16)));
    CHECK(!is_fundamental_discriminant(Int(-673)));
    CHECK(discriminant(ZPoly::parse("x^2+1")) == -4);
    CHECK(discriminant(ZPoly::parse("x^3-x-1")) == -23);
}

}

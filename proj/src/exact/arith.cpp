#include "dihedralis/arith.hpp"

#include "dihedralis/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dihedralis {

int kronecker_symbol(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker_symbol(long a, long n) { return kronecker_symbol(Int(a), Int(n)); }

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witnesses for 64-bit inputs.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

u64 next_prime(u64 n) {
    u64 c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr) {
        i128 q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    DIH_ASSERT(r == 1, "invmod of non-unit");
    if (t < 0) t += m;
    return (u64)t;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) fail("NoSquareRoot", "non-residue");
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

std::map<u64, unsigned> factor_u64(u64 n) {
    std::map<u64, unsigned> out;
    for (auto& [p, e] : factor_integer(Int(std::to_string(n)))) out[p.get_ui()] = e;
    return out;
}

u64 multiplicative_order(u64 a, u64 p) {
    a %= p;
    DIH_ASSERT(a != 0, "order of zero");
    u64 o = p - 1;
    for (auto [q, e] : factor_u64(p - 1)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, o / q, p) == 1)
                o /= q;
            else
                break;
        }
    }
    return o;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    auto f = factor_u64(p - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (auto [q, e] : f)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

std::map<u64, unsigned> trial_factor(Int& n, u64 bound) {
    std::map<u64, unsigned> out;
    n = abs(n);
    if (n == 0) return out;
    for (u64 p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out[p] = e;
        }
        if (Int(p) * p > n) break;
    }
    if (n > 1 && n <= Int(std::to_string(bound)) ) {
        out[n.get_ui()] += 1;
        n = 1;
    }
    return out;
}

namespace {
bool pollard_brent(const Int& n, Int& factor, u64 budget, u64 seed) {
    Int y = 2 + seed, c = 1 + seed, m = 128, g = 1, r = 1, q = 1, x, ys;
    u64 iters = 0;
    auto f = [&](Int& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) f(y);
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (Int i = 0; i < m && i < r - k; ++i) {
                f(y);
                q = q * abs(x - y) % n;
                ++iters;
            }
            g = gcd(q, n);
            k += m;
            if (iters > budget) return false;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    if (g == n) return false;
    factor = g;
    return true;
}

void factor_rec(const Int& n, std::map<Int, unsigned>& out, u64 budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    if (is_square(n)) {
        Int r = isqrt(n);
        factor_rec(r, out, budget);
        factor_rec(r, out, budget);
        return;
    }
    Int f;
    for (u64 seed = 0; seed < 8; ++seed)
        if (pollard_brent(n, f, budget, seed)) {
            factor_rec(f, out, budget);
            factor_rec(n / f, out, budget);
            return;
        }
    fail("FactorizationBudget", "could not split " + n.get_str());
}
} // namespace

std::map<Int, unsigned> factor_integer(const Int& n0, u64 rho_budget) {
    std::map<Int, unsigned> out;
    Int n = abs(n0);
    if (n == 0) fail("ZeroInput", "factor_integer(0)");
    auto small = trial_factor(n, 100000);
    for (auto [p, e] : small) out[Int(std::to_string(p))] = e;
    factor_rec(n, out, rho_budget);
    return out;
}

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n, Int* root) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) *root = isqrt(n);
    return true;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0 || d == 1) return false;
    Int r = mod_floor(d, Int(4));
    auto squarefree = [](Int m) {
        m = abs(m);
        for (auto& [p, e] : factor_integer(m))
            if (e > 1) return false;
        return true;
    };
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    Int m = d / 4;
    Int m4 = mod_floor(m, Int(4));
    if (m4 != 2 && m4 != 3) return false;
    return squarefree(m);
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace dihedralis

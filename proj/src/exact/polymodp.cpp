#include "dihedralis/polymodp.hpp"

#include "dihedralis/errors.hpp"

#include <algorithm>

namespace dihedralis {
namespace polyp {

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const PolyP& a) { return (int)a.size() - 1; }

PolyP add(const PolyP& a, const PolyP& b, u64 p) {
    PolyP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        u64 s = x + y;
        r[i] = s >= p ? s - p : s;
    }
    trim(r);
    return r;
}

PolyP sub(const PolyP& a, const PolyP& b, u64 p) {
    PolyP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + p - y;
    }
    trim(r);
    return r;
}

PolyP mul(const PolyP& a, const PolyP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u128> acc(a.size() + b.size() - 1, 0);
    const u128 cap = (u128)1 << 126;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += (u128)a[i] * b[j];
            if (acc[i + j] >= cap) acc[i + j] %= p;
        }
    }
    PolyP r(acc.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (u64)(acc[i] % p);
    trim(r);
    return r;
}

PolyP scale(const PolyP& a, u64 s, u64 p) {
    PolyP r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
    trim(r);
    return r;
}

void divmod(const PolyP& a, const PolyP& b, u64 p, PolyP& q, PolyP& r) {
    DIH_ASSERT(!b.empty(), "division by zero polynomial");
    r = a;
    trim(r);
    int db = deg(b);
    if (deg(r) < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, 0);
    u64 inv = invmod(b.back(), p);
    for (int i = deg(r); i >= db; --i) {
        u64 c = mulmod(r[i], inv, p);
        q[i - db] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) {
            u64 t = mulmod(c, b[j], p);
            u64& x = r[i - db + j];
            x = x >= t ? x - t : x + p - t;
        }
    }
    trim(r);
    trim(q);
}

PolyP mod(const PolyP& a, const PolyP& b, u64 p) {
    PolyP q, r;
    divmod(a, b, p, q, r);
    return r;
}

PolyP monic(const PolyP& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

PolyP gcd(PolyP a, PolyP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyP r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

PolyP derivative(const PolyP& a, u64 p) {
    if (a.size() <= 1) return {};
    PolyP r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
    trim(r);
    return r;
}

PolyP powmod(PolyP base, Int e, const PolyP& f, u64 p) {
    PolyP r{1};
    r = mod(r, f, p);
    base = mod(base, f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base, p), f, p);
        e >>= 1;
        if (e > 0) base = mod(mul(base, base, p), f, p);
    }
    return r;
}

PolyP from_zpoly(const ZPoly& f, u64 p) {
    PolyP r(f.c.size());
    Int pp((unsigned long)p);
    for (std::size_t i = 0; i < f.c.size(); ++i) r[i] = mod_floor(f.c[i], pp).get_ui();
    trim(r);
    return r;
}

u64 eval(const PolyP& a, u64 x, u64 p) {
    u64 r = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        r = mulmod(r, x, p) + a[i];
        if (r >= p) r -= p;
    }
    return r;
}

bool is_irreducible(const PolyP& f0, u64 p) {
    PolyP f = monic(f0, p);
    int n = deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    PolyP x{0, 1};
    Int P((unsigned long)p);
    // x^(p^n) == x mod f, and gcd(x^(p^(n/s)) - x, f) = 1 for primes s | n.
    auto frob_pow = [&](int k) {
        PolyP r = x;
        for (int i = 0; i < k; ++i) r = powmod(r, P, f, p);
        return r;
    };
    if (sub(frob_pow(n), x, p).size() != 0) return false;
    for (auto [s, e] : factor_u64((u64)n)) {
        PolyP g = gcd(sub(frob_pow(n / (int)s), x, p), f, p);
        if (deg(g) != 0) return false;
    }
    return true;
}

} // namespace polyp

using namespace polyp;

namespace {

// p-th root of a polynomial whose derivative vanishes (char p).
PolyP pth_root(const PolyP& a, u64 p) {
    PolyP r;
    for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
    trim(r);
    return r;
}

// Squarefree decomposition: list of (squarefree factor, multiplicity).
void squarefree(const PolyP& f, u64 p, unsigned mult, std::vector<std::pair<PolyP, unsigned>>& out) {
    if (deg(f) <= 0) return;
    PolyP d = derivative(f, p);
    if (d.empty()) {
        squarefree(pth_root(f, p), p, mult * (unsigned)p, out);
        return;
    }
    PolyP c = gcd(f, d, p);
    PolyP w, rem;
    divmod(f, c, p, w, rem);
    unsigned i = 1;
    while (deg(w) > 0) {
        PolyP y = gcd(w, c, p);
        PolyP z;
        divmod(w, y, p, z, rem);
        if (deg(z) > 0) out.push_back({monic(z, p), i * mult});
        ++i;
        w = y;
        divmod(c, y, p, c, rem);
    }
    if (deg(c) > 0) squarefree(pth_root(c, p), p, mult * (unsigned)p, out);
}

// Equal-degree split of a squarefree product of irreducibles of degree d.
void equal_degree(const PolyP& f, int d, u64 p, std::mt19937_64& rng, std::vector<PolyP>& out) {
    int n = deg(f);
    if (n == d) {
        out.push_back(monic(f, p));
        return;
    }
    Int P((unsigned long)p), e;
    mpz_pow_ui(e.get_mpz_t(), P.get_mpz_t(), (unsigned long)d);
    e = (e - 1) / 2;
    for (;;) {
        PolyP a(n);
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (deg(a) <= 0) continue;
        PolyP g;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            PolyP t = mod(a, f, p), s = t;
            for (int i = 1; i < d; ++i) {
                t = mod(mul(t, t, p), f, p);
                s = add(s, t, p);
            }
            g = gcd(s, f, p);
        } else {
            g = gcd(a, f, p);
            if (deg(g) <= 0) g = gcd(sub(powmod(a, e, f, p), PolyP{1}, p), f, p);
        }
        if (deg(g) > 0 && deg(g) < n) {
            PolyP h, r;
            divmod(f, g, p, h, r);
            equal_degree(g, d, p, rng, out);
            equal_degree(h, d, p, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<PolyFactor> poly_factor_mod_p(const PolyP& f0, u64 p, std::mt19937_64& rng) {
    PolyP f = f0;
    trim(f);
    if (f.empty()) fail("ZeroPolynomial", "polynomial vanishes mod p");
    std::vector<PolyFactor> out;
    if (deg(f) == 0) return out;
    f = monic(f, p);
    std::vector<std::pair<PolyP, unsigned>> sqf;
    squarefree(f, p, 1, sqf);
    Int P((unsigned long)p);
    for (auto& [g0, m] : sqf) {
        PolyP g = g0, x{0, 1}, h = x;
        for (int d = 1; 2 * d <= deg(g); ++d) {
            h = powmod(h, P, g, p);
            PolyP t = gcd(sub(h, x, p), g, p);
            if (deg(t) > 0) {
                std::vector<PolyP> parts;
                equal_degree(t, d, p, rng, parts);
                for (auto& q : parts) out.push_back({q, m});
                PolyP r;
                divmod(g, t, p, g, r);
                h = mod(h, g, p);
            }
        }
        if (deg(g) > 0) out.push_back({monic(g, p), m});
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        if (a.factor != b.factor)
            return std::lexicographical_compare(a.factor.rbegin(), a.factor.rend(),
                                                b.factor.rbegin(), b.factor.rend());
        return a.multiplicity < b.multiplicity;
    });
    // Merge equal factors that arose from different squarefree layers (p-th powers).
    std::vector<PolyFactor> merged;
    for (auto& pf : out) {
        if (!merged.empty() && merged.back().factor == pf.factor)
            merged.back().multiplicity += pf.multiplicity;
        else
            merged.push_back(pf);
    }
    return merged;
}

std::vector<PolyFactor> poly_factor_mod_p(const ZPoly& f, u64 p, std::mt19937_64& rng) {
    return poly_factor_mod_p(from_zpoly(f, p), p, rng);
}

std::vector<u64> poly_roots_mod_p(const PolyP& f0, u64 p, std::mt19937_64& rng) {
    PolyP f = f0;
    trim(f);
    if (f.empty()) fail("ZeroPolynomial", "polynomial vanishes mod p");
    std::vector<u64> roots;
    if (deg(f) <= 0) return roots;
    PolyP x{0, 1};
    PolyP g = gcd(sub(powmod(x, Int((unsigned long)p), f, p), x, p), f, p);
    if (deg(g) <= 0) return roots;
    std::vector<PolyP> lin;
    equal_degree(g, 1, p, rng, lin);
    for (auto& l : lin) roots.push_back((p - l[0]) % p);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace dihedralis

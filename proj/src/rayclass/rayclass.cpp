#include "dihedralis/rayclass.hpp"

#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"
#include "dihedralis/quadforms.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <regex>
#include <unordered_map>

namespace dihedralis {

namespace {

// Residue field O/q for a prime q of the quadratic order Z[w],
// w^2 = t w - n. Elements a + b w; when f = 1 they are stored as (a + b r, 0).
struct Residue {
    u64 a = 0, b = 0;
    bool operator==(const Residue& o) const { return a == o.a && b == o.b; }
};

struct ResidueField {
    u64 l;
    bool ext;  // f = 2
    u64 t, n;  // w^2 = t w - n (mod l)
    u64 r;     // w mod q when f = 1
    u64 order;  // multiplicative group order

    Residue one() const { return {1 % l, 0}; }
    Residue mul(const Residue& x, const Residue& y) const {
        if (!ext) return {mulmod(x.a, y.a, l), 0};
        u64 bb = mulmod(x.b, y.b, l);
        u64 a = (mulmod(x.a, y.a, l) + l - mulmod(bb, n, l)) % l;
        u64 b = (mulmod(x.a, y.b, l) + mulmod(x.b, y.a, l) + mulmod(bb, t, l)) % l;
        return {a, b};
    }
    Residue pow(Residue x, u64 e) const {
        Residue r0 = one();
        while (e) {
            if (e & 1) r0 = mul(r0, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r0;
    }
    Residue inv(const Residue& x) const { return pow(x, order - 1); }
    Residue reduce(const Int& x, const Int& y) const {
        u64 a = mod_floor(x, Int((unsigned long)l)).get_ui();
        u64 b = mod_floor(y, Int((unsigned long)l)).get_ui();
        if (!ext) return {(a + mulmod(b, r, l)) % l, 0};
        return {a, b};
    }
    u64 key(const Residue& x) const { return x.a * l + x.b; }
};

// Discrete log of h to base g of order F.order (Pohlig-Hellman, BSGS on each prime).
u64 residue_dlog(const ResidueField& F, const Residue& g, const Residue& h) {
    u64 N = F.order;
    if (N == 1) return 0;
    auto fac = factor_u64(N);
    Int x = 0, mod = 1;
    for (auto& [q, e] : fac) {
        u64 qe = 1;
        for (unsigned i = 0; i < e; ++i) qe *= q;
        Residue g1 = F.pow(g, N / qe), h1 = F.pow(h, N / qe);
        Residue gam = F.pow(g1, qe / q);  // order q
        // baby steps
        u64 m = 1;
        while (m * m < q) ++m;
        std::unordered_map<u64, u64> baby;
        Residue cur = F.one();
        for (u64 j = 0; j < m; ++j) {
            baby.emplace(F.key(cur), j);
            cur = F.mul(cur, gam);
        }
        Residue giant = F.inv(F.pow(gam, m));
        u64 xq = 0, qk = 1;
        Residue g1inv = F.inv(g1);
        for (unsigned k = 0; k < e; ++k) {
            Residue t = F.mul(F.pow(g1inv, xq), h1);
            t = F.pow(t, qe / (qk * q));
            Residue y = t;
            u64 digit = 0;
            bool found = false;
            for (u64 i = 0; i <= m && !found; ++i) {
                auto it = baby.find(F.key(y));
                if (it != baby.end()) {
                    digit = i * m + it->second;
                    found = true;
                }
                y = F.mul(y, giant);
            }
            DIH_ASSERT(found, "residue discrete log exists");
            xq += digit * qk;
            qk *= q;
        }
        // CRT
        Int Q((unsigned long)qe);
        Int c = mod_floor(Int((unsigned long)xq) - x, Q);
        Int inv;
        mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), Q.get_mpz_t());
        x += mod * mod_floor(c * inv, Q);
        mod *= Q;
    }
    DIH_ASSERT(F.pow(g, mod_floor(x, mod).get_ui()) == h, "discrete log verified");
    return mod_floor(x, mod).get_ui();
}

bool has_order(const ResidueField& F, const Residue& g) {
    if (F.pow(g, F.order) != F.one()) return false;
    for (auto& [q, e] : factor_u64(F.order))
        if (F.pow(g, F.order / q) == F.one()) return false;
    return true;
}

struct Component {
    ResidueField F;
    Residue gen;
    std::size_t prime;  // index into the list of primes above S
};

struct QuadField {
    Int d;
    long t;
    Int n;
    Order o;
    explicit QuadField(const Int& disc) : d(disc) {
        t = mod_floor(d, Int(4)) == 1 ? 1 : 0;
        n = (Int(t) - d) / 4;
        o = Order::from_polynomial(ZPoly({n, Int(-t), Int(1)}));
    }
    Int norm(const Int& x, const Int& y) const { return x * x + t * x * y + n * y * y; }
    // conjugate of x + y w is (x + t y) - y w
    std::pair<Int, Int> conj(const Int& x, const Int& y) const { return {x + t * y, -y}; }
};

} // namespace

Int RayClassData::p_order() const {
    Int r = 1;
    for (unsigned e : p_exponents)
        for (unsigned i = 0; i < e; ++i) r *= (unsigned long)p;
    return r;
}

IntVec RayClassData::apply_sigma(const IntVec& x) const {
    std::size_t K = ambient_dim();
    DIH_ASSERT(x.size() == K, "ambient vector length");
    IntVec y(K, 0);
    for (std::size_t i = 0; i < K; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < K; ++j) y[j] += x[i] * sigma(i, j);
    }
    return y;
}

IntVec RayClassData::p_coordinates(const IntVec& ambient) const {
    IntVec c = full.coordinates(ambient);
    IntVec out;
    for (std::size_t i = 0; i < full.invariant_factors.size(); ++i) {
        Int di = full.invariant_factors[i], pe = 1;
        while (di % p == 0) {
            di /= p;
            pe *= (unsigned long)p;
        }
        if (pe == 1) continue;
        Int u;
        mpz_invert(u.get_mpz_t(), di.get_mpz_t(), pe.get_mpz_t());
        out.push_back(mod_floor(c[i] * u, pe));
    }
    return out;
}

RayClassData ray_class_group_quadratic(const Int& d, const std::vector<u64>& S_in, u64 p, u64 seed) {
    if (d >= 0 || !is_fundamental_discriminant(d)) fail("NonFundamental", d.get_str());
    std::vector<u64> S = S_in;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    for (u64 l : S) {
        if (l == p) fail("PContainedInS", "p = " + std::to_string(p) + " lies in S");
        if (!is_prime(l)) fail("InvalidInput", std::to_string(l) + " is not prime");
        DIH_ASSERT(l < (1ULL << 31), "modulus prime fits the residue arithmetic");
    }
    QuadField K(d);
    std::mt19937_64 rng(seed);
    RayClassData R;
    R.d = d;
    R.S = S;
    R.p = p;

    // residue groups
    std::vector<Component> comps;
    std::vector<std::pair<u64, PrimeIdeal>> mprimes;
    R.residue_order = 1;
    for (u64 l : S) {
        for (const PrimeIdeal& q : factor_rational_prime(K.o, l)) {
            ResidueField F;
            F.l = l;
            F.ext = q.f == 2;
            F.t = mod_floor(Int(K.t), Int((unsigned long)l)).get_ui();
            F.n = mod_floor(K.n, Int((unsigned long)l)).get_ui();
            F.r = 0;
            if (!F.ext) {
                bool found = false;
                for (u64 r = 0; r < l && !found; ++r) {
                    // w - r in q
                    if (ideal_contains(q.ideal, IntVec{-Int((unsigned long)r), 1})) {
                        F.r = r;
                        found = true;
                    }
                }
                DIH_ASSERT(found, "residue of w");
            }
            u64 N = F.ext ? l * l : l;
            F.order = N - 1;
            ModulusPrime mp;
            mp.l = l;
            mp.f = q.f;
            mp.e = q.e;
            mp.residue_order = F.order;
            R.modulus.push_back(mp);
            R.residue_order *= (unsigned long)F.order;
            std::size_t idx = mprimes.size();
            mprimes.emplace_back(l, q);
            if (F.order == 1) continue;
            Residue g;
            for (;;) {
                g = {rng() % l, F.ext ? rng() % l : 0};
                if (has_order(F, g)) break;
            }
            comps.push_back({F, g, idx});
        }
    }
    const std::size_t c = comps.size();
    R.residue_components = c;

    auto dlog = [&](const Int& x, const Int& y) {
        IntVec v(c);
        for (std::size_t j = 0; j < c; ++j) {
            Residue a = comps[j].F.reduce(x, y);
            DIH_ASSERT(!(a == Residue{0, 0}), "element coprime to the modulus");
            v[j] = (unsigned long)residue_dlog(comps[j].F, comps[j].gen, a);
        }
        return v;
    };

    // Factor base: all primes of norm <= B away from S, B grown until the
    // classes generate Cl(L).
    FormClassGroup G = class_group(d);
    R.h = G.order();
    std::size_t ninv = G.structure.invariant_factors.size();
    u64 B = 30;
    std::vector<std::pair<u64, PrimeIdeal>> fb;
    for (;;) {
        fb.clear();
        LatticeAccumulator span(ninv);
        for (std::size_t i = 0; i < ninv; ++i) {
            IntVec e(ninv, 0);
            e[i] = G.structure.invariant_factors[i];
            span.insert(e);
        }
        for (u64 l : primes_up_to(B)) {
            if (std::binary_search(S.begin(), S.end(), l)) continue;
            for (const PrimeIdeal& q : factor_rational_prime(K.o, l))
                if (q.norm() <= (long)B) fb.emplace_back(l, q);
            SplittingDatum sd = prime_frobenius_class(d, l);
            if (sd.type != SplitType::Inert && ninv) span.insert(G.dlog(*sd.cls));
        }
        if (ninv == 0 || span.determinant() == 1) break;
        B *= 2;
    }
    const std::size_t k = fb.size();
    for (std::size_t i = 0; i < k; ++i) {
        RayClassData::FbPrime f{fb[i].first, fb[i].second.f, fb[i].second.e, i};
        if (fb[i].second.f == 1 && fb[i].second.e == 1) {
            // split: the other prime above l is the conjugate
            for (std::size_t j = 0; j < k; ++j)
                if (j != i && fb[j].first == fb[i].first) f.conj = j;
        }
        R.factor_base.push_back(f);
    }
    const std::size_t dim = k + c;

    // roots of unity
    std::pair<Int, Int> zeta{-1, 0};
    if (d == -4 || d == -3) zeta = {0, 1};
    IntVec uz = dlog(zeta.first, zeta.second);
    R.unit_image = 1;
    for (std::size_t j = 0; j < c; ++j) {
        Int n((unsigned long)comps[j].F.order), g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), uz[j].get_mpz_t());
        Int o = n / g;
        mpz_lcm(R.unit_image.get_mpz_t(), R.unit_image.get_mpz_t(), o.get_mpz_t());
    }
    Int expected = R.h * R.residue_order / R.unit_image;

    LatticeAccumulator acc(dim);
    for (std::size_t j = 0; j < c; ++j) {
        IntVec e(dim, 0);
        e[k + j] = (unsigned long)comps[j].F.order;
        acc.insert(e);
    }
    {
        IntVec e(dim, 0);
        for (std::size_t j = 0; j < c; ++j) e[k + j] = uz[j];
        acc.insert(e);
    }
    std::map<u64, std::vector<std::size_t>> above;
    for (std::size_t i = 0; i < k; ++i) above[fb[i].first].push_back(i);

    std::size_t attempts = 0;
    while (!acc.full_rank() || acc.determinant() != expected) {
        if (acc.full_rank() && acc.determinant() < expected)
            fail("InternalError", "ray class relation lattice too large");
        if (++attempts > 5000000) fail("RelationSearchStalled", "ray class group of " + d.get_str());
        long C = 3 + (long)(attempts / 3000);
        Int x = (long)(rng() % (2 * C + 1)) - C, y = (long)(rng() % (2 * C + 1)) - C;
        if (x == 0 && y == 0) continue;
        Int N = K.norm(x, y);
        bool bad = false;
        for (u64 l : S)
            if (N % l == 0) bad = true;
        if (bad) continue;
        Int rest = N;
        IntVec rel(dim, 0);
        for (auto& [l, idx] : above) {
            long e = 0;
            while (rest % l == 0) {
                rest /= l;
                ++e;
            }
            if (!e) continue;
            if (idx.size() == 1) {
                const PrimeIdeal& q = fb[idx[0]].second;
                rel[idx[0]] = e / (long)q.f;
            } else {
                for (std::size_t i : idx) rel[i] = valuation(K.o, fb[i].second, IntVec{x, y});
            }
        }
        if (rest != 1) continue;
        IntVec lg = dlog(x, y);
        for (std::size_t j = 0; j < c; ++j) rel[k + j] = -lg[j];
        acc.insert(rel);
    }
    R.full = abelian_group_structure(acc.basis());
    DIH_ASSERT(R.full.order() == expected, "ray class order matches the exact sequence");

    // conjugation on the ambient basis
    R.sigma = IntMatrix(dim, dim);
    for (std::size_t i = 0; i < k; ++i) R.sigma(i, R.factor_base[i].conj) = 1;
    for (std::size_t j = 0; j < c; ++j) {
        // lift of the generator: gen at its prime, 1 at every other prime of the modulus
        Int X = 0, Y = 0, M = 1;
        for (u64 l : S) {
            Int L((unsigned long)l);
            Int xl = 1, yl = 0;
            const Component& cj = comps[j];
            if (cj.F.l == l) {
                const ResidueField& F = cj.F;
                if (F.ext) {
                    xl = (unsigned long)cj.gen.a;
                    yl = (unsigned long)cj.gen.b;
                } else {
                    // other primes above l with f = 1 (split case): w = r' there
                    std::vector<u64> others;
                    for (std::size_t m = 0; m < mprimes.size(); ++m)
                        if (m != cj.prime && mprimes[m].first == l) {
                            for (u64 r = 0; r < l; ++r)
                                if (ideal_contains(mprimes[m].second.ideal, IntVec{-Int((unsigned long)r), 1})) {
                                    others.push_back(r);
                                    break;
                                }
                        }
                    if (others.empty()) {
                        xl = (unsigned long)cj.gen.a;
                    } else {
                        // x + y r = g, x + y r' = 1
                        Int r1((unsigned long)F.r), r2((unsigned long)others[0]);
                        Int den = mod_floor(r1 - r2, L), inv;
                        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), L.get_mpz_t());
                        yl = mod_floor((Int((unsigned long)cj.gen.a) - 1) * inv, L);
                        xl = mod_floor(Int((unsigned long)cj.gen.a) - yl * r1, L);
                    }
                }
            }
            // CRT step
            auto crt = [&](Int& acc0, const Int& v) {
                Int inv;
                mpz_invert(inv.get_mpz_t(), M.get_mpz_t(), L.get_mpz_t());
                acc0 += M * mod_floor((v - acc0) * inv, L);
            };
            crt(X, xl);
            crt(Y, yl);
            M *= L;
        }
        auto [cx, cy] = K.conj(X, Y);
        IntVec lg = dlog(cx, cy);
        for (std::size_t m = 0; m < c; ++m) R.sigma(k + j, k + m) = lg[m];
        // the lift represents the generator itself
        IntVec self = dlog(X, Y);
        for (std::size_t m = 0; m < c; ++m)
            DIH_ASSERT(mod_floor(self[m] - (m == j ? 1 : 0), Int((unsigned long)comps[m].F.order)) == 0,
                       "CRT lift of a residue generator");
    }

    // p-part
    for (std::size_t i = 0; i < R.full.invariant_factors.size(); ++i) {
        Int di = R.full.invariant_factors[i], pe = 1;
        unsigned e = 0;
        while (di % p == 0) {
            di /= p;
            pe *= (unsigned long)p;
            ++e;
        }
        if (!e) continue;
        IntVec g = R.full.generators[i];
        for (auto& x : g) x *= di;
        R.p_exponents.push_back(e);
        R.p_generators.push_back(g);
    }
    return R;
}

namespace {

// Subgroup of the p-part generated by ambient vectors gens; returns exponents
// (ascending) and ambient generators of the cyclic factors.
void subgroup_structure(const RayClassData& R, const std::vector<IntVec>& gens,
                        std::vector<unsigned>& exps, std::vector<IntVec>& out) {
    exps.clear();
    out.clear();
    std::size_t n = R.p_exponents.size(), K = gens.size();
    if (n == 0 || K == 0) return;
    IntMatrix M(K + n, n);
    for (std::size_t a = 0; a < K; ++a) {
        IntVec w = R.p_coordinates(gens[a]);
        for (std::size_t j = 0; j < n; ++j) M(a, j) = w[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        Int pe = 1;
        for (unsigned t = 0; t < R.p_exponents[j]; ++t) pe *= (unsigned long)R.p;
        M(K + j, j) = pe;
    }
    IntMatrix ker = left_kernel(M);
    IntMatrix rel(ker.rows(), K);
    for (std::size_t i = 0; i < ker.rows(); ++i)
        for (std::size_t a = 0; a < K; ++a) rel(i, a) = ker(i, a);
    AbelianGroupStructure st = abelian_group_structure(rel);
    for (std::size_t i = 0; i < st.invariant_factors.size(); ++i) {
        Int f = st.invariant_factors[i];
        unsigned e = 0;
        while (f % R.p == 0) {
            f /= R.p;
            ++e;
        }
        DIH_ASSERT(f == 1, "subgroup of a p-group");
        exps.push_back(e);
        IntVec g(R.ambient_dim(), 0);
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t j = 0; j < g.size(); ++j) g[j] += st.generators[i][a] * gens[a][j];
        out.push_back(g);
    }
}

} // namespace

EigenSplit sigma_eigenspace_split(const RayClassData& R) {
    if (R.p == 2) fail("EvenPrime", "no eigenspace split for p = 2");
    EigenSplit s;
    std::vector<IntVec> minus, plus;
    for (const IntVec& g : R.p_generators) {
        IntVec sg = R.apply_sigma(g), m(g.size()), p(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) {
            m[j] = g[j] - sg[j];
            p[j] = g[j] + sg[j];
        }
        minus.push_back(m);
        plus.push_back(p);
    }
    subgroup_structure(R, minus, s.minus, s.minus_gens);
    subgroup_structure(R, plus, s.plus, s.plus_gens);
    unsigned total = 0, a = 0;
    for (unsigned e : R.p_exponents) total += e;
    for (unsigned e : s.minus) a += e;
    for (unsigned e : s.plus) a += e;
    DIH_ASSERT(a == total, "eigenspaces fill the p-part");
    return s;
}

std::string RingPresentation::coefficient_ring() const {
    Int q = 1;
    for (unsigned i = 0; i < r; ++i) q *= (unsigned long)p;
    return "W(F_" + q.get_str() + ")";
}

std::string RingPresentation::str() const {
    std::string s = coefficient_ring();
    std::size_t m = variables();
    if (m == 0) return s;
    s += "[";
    for (std::size_t i = 0; i < m; ++i) s += (i ? ",X" : "X") + std::to_string(i + 1);
    s += "]";
    if (exponents.empty()) return s;
    s += "/(";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        Int pe = 1;
        for (unsigned t = 0; t < exponents[i]; ++t) pe *= (unsigned long)p;
        if (i) s += ",";
        s += "(1+X" + std::to_string(i + 1) + ")^" + pe.get_str() + "-1";
    }
    return s + ")";
}

RingPresentation RingPresentation::parse(const std::string& s) {
    static const std::regex whole(R"(^W\(F_(\d+)\)(?:\[([X0-9,]+)\](?:/\((.*)\))?)?$)");
    static const std::regex rel(R"(\(1\+X(\d+)\)\^(\d+)-1)");
    std::smatch m;
    if (!std::regex_match(s, m, whole)) fail("BadPresentation", s);
    RingPresentation out;
    Int q(m[1].str());
    // q = p^r with p prime
    for (auto& [pp, e] : factor_integer(q)) {
        if (out.p) fail("BadPresentation", "coefficient field order is not a prime power");
        out.p = pp.get_ui();
        out.r = e;
    }
    if (!out.p) fail("BadPresentation", s);
    std::size_t vars = 0;
    if (m[2].matched) {
        std::string v = m[2].str();
        vars = std::count(v.begin(), v.end(), 'X');
    }
    if (m[3].matched) {
        std::string body = m[3].str();
        std::size_t idx = 1;
        for (auto it = std::sregex_iterator(body.begin(), body.end(), rel); it != std::sregex_iterator();
             ++it, ++idx) {
            if (std::stoul((*it)[1].str()) != idx) fail("BadPresentation", "relations out of order");
            Int pe((*it)[2].str());
            unsigned e = 0;
            while (pe > 1 && pe % out.p == 0) {
                pe /= out.p;
                ++e;
            }
            if (pe != 1 || e == 0) fail("BadPresentation", "exponent is not a power of p");
            out.exponents.push_back(e);
        }
    }
    if (vars < out.exponents.size()) fail("BadPresentation", s);
    out.r_free = (unsigned)(vars - out.exponents.size());
    if (out.str() != s) fail("BadPresentation", s);
    return out;
}

RingPresentation universal_ring_presentation(u64 p, unsigned r, const std::vector<unsigned>& exponents,
                                             unsigned r_free) {
    for (unsigned e : exponents) DIH_ASSERT(e >= 1, "exponents are positive");
    RingPresentation rp;
    rp.p = p;
    rp.r = r;
    rp.exponents = exponents;
    rp.r_free = r_free;
    return rp;
}

RingPresentation universal_ring_presentation(u64 p, unsigned r, const EigenSplit& split) {
    std::vector<unsigned> e = split.minus;
    e.insert(e.end(), split.plus.begin(), split.plus.end());
    return universal_ring_presentation(p, r, e);
}

RingPresentation constant_det_presentation(u64 p, unsigned r, const EigenSplit& split) {
    return universal_ring_presentation(p, r, split.minus);
}

} // namespace dihedralis

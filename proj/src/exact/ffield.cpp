#include "dihedralis/ffield.hpp"

#include "dihedralis/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dihedralis {

namespace {
// Enumerate monic degree-r candidates by number of nonzero lower
// coefficients, then lexicographically (high to low coefficient order).
PolyP search_modulus(u64 p, unsigned r) {
    if (r == 1) return {0, 1};
    for (unsigned w = 1; w <= r; ++w) {
        // All choices of w positions among 0..r-1, position 0 forced (irreducible
        // polys of degree > 1 have nonzero constant term).
        std::vector<std::vector<unsigned>> position_sets;
        std::vector<unsigned> cur;
        auto rec = [&](auto&& self, unsigned start) -> void {
            if (cur.size() == w) {
                if (cur[0] == 0) position_sets.push_back(cur);
                return;
            }
            for (unsigned i = start; i < r; ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        std::vector<PolyP> cands;
        for (auto& pos : position_sets) {
            std::vector<u64> vals(w, 1);
            for (;;) {
                PolyP f(r + 1, 0);
                f[r] = 1;
                for (unsigned k = 0; k < w; ++k) f[pos[k]] = vals[k];
                cands.push_back(f);
                unsigned k = 0;
                while (k < w && ++vals[k] == p) vals[k++] = 1;
                if (k == w) break;
            }
        }
        std::sort(cands.begin(), cands.end(), [](const PolyP& a, const PolyP& b) {
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        });
        for (auto& f : cands)
            if (polyp::is_irreducible(f, p)) return f;
    }
    fail("InternalError", "no irreducible polynomial found");
}
} // namespace

std::shared_ptr<const FiniteField> FiniteField::make(u64 p, unsigned r) {
    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const FiniteField>(p, search_modulus(p, r));
    cache[key] = f;
    return f;
}

std::shared_ptr<const FiniteField> FiniteField::make(u64 p, const PolyP& modulus) {
    return std::make_shared<const FiniteField>(p, modulus);
}

FiniteField::FiniteField(u64 p, const PolyP& modulus) : p_(p), mod_(polyp::monic(modulus, p)) {
    DIH_ASSERT(is_prime(p), "field characteristic must be prime");
    r_ = (unsigned)polyp::deg(mod_);
    DIH_ASSERT(r_ >= 1, "modulus degree");
    if (!polyp::is_irreducible(mod_, p)) fail("NotIrreducible", "defining polynomial reducible");
    q_ = 1;
    for (unsigned i = 0; i < r_; ++i) {
        q_ *= p;
        if (q_ > kMaxSize) fail("FieldTooLarge", "table-based field limited to 2^24 elements");
    }
    // Find a primitive element by trying codes in increasing order.
    auto mulpoly = [&](Elem a, Elem b) {
        PolyP pa = coefficients(a), pb = coefficients(b);
        polyp::trim(pa);
        polyp::trim(pb);
        return from_coefficients(polyp::mod(polyp::mul(pa, pb, p_), mod_, p_));
    };
    auto fq = factor_u64(q_ - 1);
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    for (Elem g = 1; g < q_; ++g) {
        // order check by walking powers
        Elem x = 1;
        bool ok = true;
        for (u64 k = 0; k < q_ - 1; ++k) {
            exp_[k] = x;
            if (k > 0 && x == 1) {
                ok = false;
                break;
            }
            x = mulpoly(x, g);
        }
        if (ok && x == 1) {
            for (u64 k = 0; k < q_ - 1; ++k) log_[exp_[k]] = (std::uint32_t)k;
            return;
        }
    }
    fail("InternalError", "no primitive element");
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
    if (r_ == 1) {
        u64 s = (u64)a + b;
        return (Elem)(s >= p_ ? s - p_ : s);
    }
    Elem out = 0, mulp = 1;
    for (unsigned i = 0; i < r_; ++i) {
        u64 x = a % p_, y = b % p_;
        a /= p_;
        b /= p_;
        u64 s = x + y;
        if (s >= p_) s -= p_;
        out += (Elem)(s * mulp);
        mulp *= (Elem)p_;
    }
    return out;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const {
    Elem out = 0, mulp = 1;
    for (unsigned i = 0; i < r_; ++i) {
        u64 x = a % p_, y = b % p_;
        a /= p_;
        b /= p_;
        u64 s = x >= y ? x - y : x + p_ - y;
        out += (Elem)(s * mulp);
        mulp *= (Elem)p_;
    }
    return out;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (!a) fail("ZeroElement", "inverse of zero");
    u64 l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

FiniteField::Elem FiniteField::pow(Elem a, i64 e) const {
    if (!a) {
        if (e == 0) return 1;
        if (e < 0) fail("ZeroElement", "negative power of zero");
        return 0;
    }
    i64 m = (i64)(q_ - 1);
    i64 k = (i64)((i128)log_[a] * (e % m) % m);
    if (k < 0) k += m;
    return exp_[k];
}

FiniteField::Elem FiniteField::from_int(i64 v) const { return (Elem)mod_floor(v, (i64)p_); }

std::vector<u64> FiniteField::coefficients(Elem a) const {
    std::vector<u64> c(r_);
    for (unsigned i = 0; i < r_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

FiniteField::Elem FiniteField::from_coefficients(const std::vector<u64>& c) const {
    DIH_ASSERT(c.size() <= r_, "too many coefficients");
    Elem out = 0, mulp = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += (Elem)((c[i] % p_) * mulp);
        mulp *= (Elem)p_;
    }
    return out;
}

FiniteField::Elem FiniteField::root_of_unity(u64 n) const {
    if ((q_ - 1) % n != 0) fail("NoRootOfUnity", "n does not divide q-1");
    return exp_[(q_ - 1) / n];
}

std::string FiniteField::str(Elem a) const {
    if (r_ == 1) return std::to_string(a);
    auto c = coefficients(a);
    std::string s;
    for (unsigned i = r_; i-- > 0;) {
        if (!c[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) s += "t";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

u64 ff_mult_order(const FiniteField& F, FiniteField::Elem x) {
    if (!x) fail("ZeroElement", "order of zero");
    u64 o = F.size() - 1;
    for (auto [q, e] : factor_u64(o)) {
        for (unsigned i = 0; i < e; ++i) {
            if (F.pow(x, (i64)(o / q)) == 1)
                o /= q;
            else
                break;
        }
    }
    return o;
}

u64 ff_mult_order(const FiniteFieldElement& x) { return ff_mult_order(*x.field, x.value); }

unsigned order_degree(u64 p, u64 n) {
    DIH_ASSERT(p % n != 0, "n must be prime to p");
    u64 x = p % n;
    unsigned r = 1;
    u64 cur = x;
    while (cur != 1 % n) {
        cur = mulmod(cur, x, n);
        ++r;
    }
    return r;
}

} // namespace dihedralis

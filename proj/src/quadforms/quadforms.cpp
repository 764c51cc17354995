#include "dihedralis/quadforms.hpp"

#include "dihedralis/arith.hpp"
#include "dihedralis/errors.hpp"

#include <algorithm>

namespace dihedralis {

std::string QuadraticForm::str() const {
    return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

bool is_reduced(const QuadraticForm& f) {
    if (f.a <= 0) return false;
    if (abs(f.b) > f.a || f.a > f.c) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

namespace {

void check_definite(const QuadraticForm& f) {
    if (f.a <= 0 || f.discriminant() >= 0) fail("NotPositiveDefinite", f.str());
}

// Compose T with the elementary substitution (x,y) -> (x + k y, y) etc.
void track(IntMatrix* T, const Int& m00, const Int& m01, const Int& m10, const Int& m11) {
    if (!T) return;
    IntMatrix S(2, 2);
    S(0, 0) = m00;
    S(0, 1) = m01;
    S(1, 0) = m10;
    S(1, 1) = m11;
    *T = *T * S;
}

} // namespace

QuadraticForm reduce_form(const QuadraticForm& f0, IntMatrix* T) {
    check_definite(f0);
    QuadraticForm f = f0;
    if (T) *T = IntMatrix::identity(2);
    // Normalize b into (-a, a] by x -> x + k y.
    auto normalize = [&]() {
        Int two_a = 2 * f.a, r, k;
        // b + 2ak in (-a, a]
        mpz_fdiv_q(k.get_mpz_t(), Int(f.a - f.b).get_mpz_t(), two_a.get_mpz_t());
        if (k == 0) return;
        Int nb = f.b + two_a * k;
        f.c = f.a * k * k + f.b * k + f.c;
        f.b = nb;
        track(T, 1, k, 0, 1);
    };
    normalize();
    while (f.a > f.c) {
        // (x, y) -> (-y, x)
        std::swap(f.a, f.c);
        f.b = -f.b;
        track(T, 0, -1, 1, 0);
        normalize();
    }
    if (f.a == f.c && f.b < 0) {
        f.b = -f.b;
        track(T, 0, -1, 1, 0);
    }
    return f;
}

QuadraticForm principal_form(const Int& d) {
    Int b = (d % 2 == 0) ? Int(0) : Int(1);
    return QuadraticForm{1, b, (b * b - d) / 4};
}

QuadraticForm inverse_form(const QuadraticForm& f) {
    return reduce_form(QuadraticForm{f.a, -f.b, f.c});
}

QuadraticForm compose_forms(const QuadraticForm& f1, const QuadraticForm& f2) {
    Int D = f1.discriminant();
    if (D != f2.discriminant())
        fail("DiscriminantMismatch", f1.str() + " vs " + f2.str());
    check_definite(f1);
    check_definite(f2);
    // Arrange a1 <= a2 (composition is commutative on classes).
    const QuadraticForm& g1 = f1.a <= f2.a ? f1 : f2;
    const QuadraticForm& g2 = f1.a <= f2.a ? f2 : f1;
    Int a1 = g1.a, b1 = g1.b, a2 = g2.a, b2 = g2.b, c2 = g2.c;
    Int s = (b1 + b2) / 2, n = b2 - s;
    Int y1, d, u, v;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a2.get_mpz_t(), a1.get_mpz_t());
        y1 = u;
    }
    Int x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        mpz_gcdext(d1.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        x2 = u;
        y2 = -v;
    }
    Int v1 = a1 / d1, v2 = a2 / d1;
    Int r = mod_floor(Int(y1 * y2 * n - x2 * c2), v1);
    Int b3 = b2 + 2 * v2 * r, a3 = v1 * v2;
    Int num = b3 * b3 - D;
    DIH_ASSERT(num % (4 * a3) == 0, "composition: c not integral");
    return reduce_form(QuadraticForm{a3, b3, num / (4 * a3)});
}

QuadraticForm power_form(const QuadraticForm& f, Int n) {
    QuadraticForm base = reduce_form(f), acc = principal_form(f.discriminant());
    if (n < 0) {
        base = inverse_form(base);
        n = -n;
    }
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = compose_forms(acc, base);
        n >>= 1;
        if (n > 0) base = compose_forms(base, base);
    }
    return acc;
}

std::vector<QuadraticForm> reduced_forms(const Int& d) {
    if (d >= 0) fail("NotPositiveDefinite", "discriminant " + d.get_str());
    std::vector<QuadraticForm> out;
    Int amax = isqrt(Int(-d) / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - d;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            Int g = gcd(gcd(a, b), c);
            if (g != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

const IntVec& FormClassGroup::dlog(const QuadraticForm& f) const {
    auto it = log_.find(is_reduced(f) ? f : reduce_form(f));
    if (it == log_.end()) fail("NotInGroup", f.str() + " for d=" + d.get_str());
    return it->second;
}

QuadraticForm FormClassGroup::element(const IntVec& exps) const {
    DIH_ASSERT(exps.size() == gens.size(), "exponent vector length");
    QuadraticForm r = identity();
    for (std::size_t i = 0; i < gens.size(); ++i) r = compose_forms(r, power_form(gens[i], exps[i]));
    return r;
}

FormClassGroup class_group(const Int& d) {
    if (!is_fundamental_discriminant(d) || d >= 0) fail("NonFundamental", d.get_str());
    FormClassGroup G;
    G.d = d;
    G.forms = reduced_forms(d);

    // Grow the subgroup generated by forms taken in sorted order. `sub` maps
    // each element to its exponent vector w.r.t. the chosen raw generators.
    std::vector<QuadraticForm> raw;
    std::map<QuadraticForm, IntVec> sub;
    IntMatrix rel(0, 0);
    QuadraticForm e = principal_form(d);
    sub[e] = {};
    auto extend = [](IntVec v, std::size_t k) {
        v.resize(k, 0);
        return v;
    };
    for (const auto& f : G.forms) {
        if (sub.count(f)) continue;
        std::size_t k = raw.size() + 1;
        raw.push_back(f);
        // relative order of f modulo the current subgroup
        std::vector<std::pair<QuadraticForm, IntVec>> old(sub.begin(), sub.end());
        std::map<QuadraticForm, IntVec> next;
        QuadraticForm fk = e;
        long n = 0;
        for (;;) {
            auto hit = sub.find(fk);
            if (n > 0 && hit != sub.end()) {
                IntVec r = extend(hit->second, k);
                for (auto& x : r) x = -x;
                r[k - 1] += n;
                IntMatrix nr(rel.rows(), k);
                for (std::size_t i = 0; i < rel.rows(); ++i)
                    for (std::size_t j = 0; j < rel.cols(); ++j) nr(i, j) = rel(i, j);
                nr.append_row(r);
                rel = nr;
                break;
            }
            for (auto& [g, v] : old) {
                IntVec w = extend(v, k);
                w[k - 1] = n;
                next.emplace(compose_forms(fk, g), std::move(w));
            }
            fk = compose_forms(fk, f);
            ++n;
        }
        sub = std::move(next);
    }
    DIH_ASSERT(sub.size() == G.forms.size(), "class group enumeration incomplete");

    std::size_t k = raw.size();
    if (k == 0) {
        G.structure = abelian_group_structure(IntMatrix(0, 0));
        G.log_[e] = {};
        return G;
    }
    G.structure = abelian_group_structure(rel);
    DIH_ASSERT(G.structure.order() == (long)G.forms.size(), "class number mismatch");
    for (const auto& gv : G.structure.generators) {
        QuadraticForm g = e;
        for (std::size_t i = 0; i < k; ++i) g = compose_forms(g, power_form(raw[i], gv[i]));
        G.gens.push_back(g);
    }
    for (auto& [f, v] : sub) G.log_[f] = G.structure.coordinates(v);
    return G;
}

long quotient_class(const FormClassGroup& G, u64 q, const QuadraticForm& f) {
    Int h = G.order();
    if (h % q != 0) fail("NotDividing", std::to_string(q) + " does not divide h=" + h.get_str());
    const auto& inv = G.structure.invariant_factors;
    std::size_t idx = inv.size(), rank = 0;
    for (std::size_t i = 0; i < inv.size(); ++i)
        if (inv[i] % q == 0) {
            idx = i;
            ++rank;
        }
    if (rank > 1)
        fail("SubgroupNotUnique", "the " + std::to_string(q) + "-part of " + G.structure.str() + " is not cyclic");
    DIH_ASSERT(idx < inv.size(), "q-part located");
    return (long)mpz_fdiv_ui(G.dlog(f)[idx].get_mpz_t(), q);
}

SplittingDatum prime_frobenius_class(const Int& d, u64 l) {
    if (!is_prime(l)) fail("NotPrime", std::to_string(l));
    int k = kronecker_symbol(d, Int(l));
    SplittingDatum s;
    s.type = k > 0 ? SplitType::Split : (k == 0 ? SplitType::Ramified : SplitType::Inert);
    if (k < 0) return s;
    Int L = l, b;
    if (l == 2) {
        // b^2 = d mod 8 with b in {0,1,2,3}
        bool found = false;
        for (long t = 1; t <= 4 && !found; ++t) {
            long tt = t % 4;
            if (mod_floor(Int(tt * tt - d), Int(8)) == 0) {
                b = tt;
                found = true;
            }
        }
        if (!found) fail("NoSquareRoot", "d=" + d.get_str() + " mod 8");
    } else {
        u64 dm = mpz_fdiv_ui(d.get_mpz_t(), l);
        u64 r = dm == 0 ? 0 : sqrt_mod_prime(dm, l);
        if (mulmod(r, r, l) != dm) fail("NoSquareRoot", "d=" + d.get_str() + " mod " + std::to_string(l));
        b = r;
        if (mpz_odd_p(b.get_mpz_t()) != mpz_odd_p(d.get_mpz_t())) b = L - b;
        if (b == 0 && mpz_odd_p(d.get_mpz_t())) b = L;
    }
    Int num = b * b - d;
    DIH_ASSERT(num % (4 * L) == 0, "prime form not integral");
    QuadraticForm pf{L, b, num / (4 * L)};
    s.prime_form = pf;
    s.cls = reduce_form(pf);
    return s;
}

Int analytic_class_number(const Int& d) {
    if (!is_fundamental_discriminant(d) || d >= 0) fail("NonFundamental", d.get_str());
    if (d == -3 || d == -4) return 1;
    long D = -d.get_si();
    long s = 0;
    for (long k = 1; k < D; ++k) s += k * kronecker_symbol(-D, k);
    return Int(std::abs(s) / D);
}

} // namespace dihedralis

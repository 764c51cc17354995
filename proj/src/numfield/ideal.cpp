#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"
#include "dihedralis/polymodp.hpp"
#include "internal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dihedralis {

IntVec lift(const std::vector<u64>& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Int((unsigned long)v[i]);
    return r;
}

Ideal lift_subspace(const Order& o, const MatP& gens, u64 l) {
    std::vector<IntVec> z;
    for (auto& g : gens) z.push_back(lift(g));
    return ideal_from_zbasis(o, z, Int((unsigned long)l));
}

Ideal ideal_from_zbasis(const Order& o, const std::vector<IntVec>& zgens, const Int& multiple) {
    std::size_t n = o.degree();
    DIH_ASSERT(multiple != 0, "ideal needs a nonzero rational multiple");
    LatticeAccumulator acc(n);
    Int m = abs(multiple);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = m;
        acc.insert(e);
    }
    for (const auto& g : zgens) acc.insert(g);
    return {acc.basis(), acc.determinant()};
}

Ideal ideal_from_generators(const Order& o, const std::vector<IntVec>& gens) {
    std::vector<IntVec> z;
    Int m = 0;
    for (const auto& g : gens) {
        if (o.is_zero(g)) continue;
        IntMatrix M = o.mult_matrix(g);
        if (m == 0) m = M.det();
        for (std::size_t i = 0; i < o.degree(); ++i) z.push_back(M.row(i));
    }
    if (m == 0) fail("ZeroIdeal", "no nonzero generator");
    return ideal_from_zbasis(o, z, m);
}

Ideal principal_ideal(const Order& o, const IntVec& a) { return ideal_from_generators(o, {a}); }

Ideal ideal_mul(const Order& o, const Ideal& a, const Ideal& b) {
    std::size_t n = o.degree();
    std::vector<IntVec> z;
    z.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix M = o.mult_matrix(a.hnf.row(i));
        for (std::size_t j = 0; j < n; ++j) {
            IntVec bj = b.hnf.row(j), v(n, 0);
            for (std::size_t k = 0; k < n; ++k) {
                if (bj[k] == 0) continue;
                for (std::size_t c = 0; c < n; ++c) v[c] += bj[k] * M(k, c);
            }
            z.push_back(std::move(v));
        }
    }
    return ideal_from_zbasis(o, z, a.norm * b.norm);
}

namespace {
bool coordinates_impl(const Ideal& a, const IntVec& x, IntVec& c) {
    std::size_t n = x.size();
    c.assign(n, 0);
    IntVec r = x;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& piv = a.hnf(i, i);
        if (r[i] % piv != 0) return false;
        c[i] = r[i] / piv;
        if (c[i] != 0)
            for (std::size_t k = i; k < n; ++k) r[k] -= c[i] * a.hnf(i, k);
    }
    return true;
}
} // namespace

bool ideal_contains(const Ideal& a, const IntVec& x) {
    IntVec c;
    return coordinates_impl(a, x, c);
}

IntVec ideal_coordinates(const Ideal& a, const IntVec& x) {
    IntVec c;
    if (!coordinates_impl(a, x, c)) fail("InternalError", "element not in ideal");
    return c;
}

Int PrimeIdeal::norm() const {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), l, f);
    return r;
}

std::string PrimeIdeal::str() const {
    return "P(" + std::to_string(l) + ",f=" + std::to_string(f) + ",e=" + std::to_string(e) + ")";
}

long valuation(const Order& o, const PrimeIdeal& p, const IntVec& x) {
    if (o.is_zero(x)) fail("ZeroElement", "valuation of 0");
    std::size_t n = o.degree();
    IntVec y = x, z(n);
    long k = 0;
    for (;;) {
        for (std::size_t j = 0; j < n; ++j) {
            z[j] = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (y[i] != 0) z[j] += y[i] * p.anti_matrix(i, j);
        }
        for (std::size_t j = 0; j < n; ++j)
            if (mpz_divisible_ui_p(z[j].get_mpz_t(), p.l) == 0) return k;
        for (std::size_t j = 0; j < n; ++j) mpz_divexact_ui(y[j].get_mpz_t(), z[j].get_mpz_t(), p.l);
        ++k;
    }
}

namespace {

using V = std::vector<u64>;

V vsub(const V& a, const V& b, u64 l) {
    V r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + l - b[i]) % l;
    return r;
}

V vscale(const V& a, u64 s, u64 l) {
    V r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, l);
    return r;
}

V vadd(const V& a, const V& b, u64 l) {
    V r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % l;
    return r;
}

bool vzero(const V& a) {
    return std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
}

PrimeIdeal make_prime(const Order& o, const Ideal& P, u64 l, unsigned f) {
    std::size_t n = o.degree();
    PrimeIdeal pr;
    pr.l = l;
    pr.f = f;
    pr.ideal = P;
    // tau with tau * beta_j = 0 mod l for all basis rows beta_j of P
    MatP rows(n, VecP(n * n));
    std::vector<IntMatrix> mb;
    for (std::size_t j = 0; j < n; ++j) mb.push_back(o.mult_matrix(P.hnf.row(j)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) rows[i][j * n + k] = mpz_fdiv_ui(mb[j](i, k).get_mpz_t(), l);
    MatP ker = matp::left_kernel(rows, l);
    DIH_ASSERT(!ker.empty(), "anti-uniformizer exists");
    pr.anti = lift(ker[0]);
    pr.anti_matrix = o.mult_matrix(pr.anti);
    long e = valuation(o, pr, o.scalar(Int((unsigned long)l)));
    DIH_ASSERT(e >= 1, "ramification index positive");
    pr.e = (unsigned)e;
    return pr;
}

} // namespace

std::vector<PrimeIdeal> factor_rational_prime(const Order& o, u64 l) {
    if (!is_prime(l)) fail("NotPrime", std::to_string(l));
    if (!is_maximal_at(o, l)) fail("NotMaximalAt", std::to_string(l));
    std::size_t n = o.degree();
    OrderModP R(o, l);
    SubspaceP K = radical_mod(o, R);
    auto comp = K.complement();
    std::size_t m = comp.size();
    auto unitv = [&](std::size_t i) {
        V x(n, 0);
        x[i] = 1;
        return x;
    };
    auto amul = [&](const V& a, const V& b) { return K.reduce(R.mul(a, b)); };

    // Berlekamp subalgebra of A = O/rad: kernel of x -> x^l - x.
    MatP rows;
    for (std::size_t c : comp) {
        V x = unitv(c);
        V y = vsub(K.reduce(R.pow(x, Int((unsigned long)l))), x, l);
        V row(m);
        for (std::size_t t = 0; t < m; ++t) row[t] = y[comp[t]];
        rows.push_back(row);
    }
    MatP bk = matp::left_kernel(rows, l);
    std::vector<V> B;
    for (auto& v : bk) {
        V x(n, 0);
        for (std::size_t t = 0; t < m; ++t) x[comp[t]] = v[t];
        B.push_back(K.reduce(x));
    }
    std::size_t g = B.size();
    DIH_ASSERT(g >= 1, "Berlekamp subalgebra contains 1");

    std::vector<V> done, todo{K.reduce(R.one())};
    std::mt19937_64 rng(l * 7919 + n);
    auto rank_of = [&](const std::vector<V>& vs) {
        MatP mm(vs.begin(), vs.end());
        return matp::rank(mm, l);
    };
    int guard = 0;
    while (!todo.empty()) {
        V e = todo.back();
        todo.pop_back();
        std::vector<V> eB;
        for (auto& b : B) eB.push_back(amul(e, b));
        if (rank_of(eB) <= 1) {
            done.push_back(e);
            continue;
        }
        DIH_ASSERT(++guard < 100000, "idempotent splitting does not terminate");
        V x(n, 0);
        for (auto& b : eB) x = vadd(x, vscale(b, rng() % l, l), l);
        // minimal polynomial of x in eA (identity e)
        std::vector<V> pw{e};
        MatP ker;
        for (std::size_t k = 1; k <= g + 1; ++k) {
            pw.push_back(amul(pw.back(), x));
            ker = matp::left_kernel(MatP(pw.begin(), pw.end()), l);
            if (!ker.empty()) break;
        }
        DIH_ASSERT(!ker.empty(), "minimal polynomial found");
        PolyP mp(ker[0].begin(), ker[0].end());
        polyp::trim(mp);
        auto roots = poly_roots_mod_p(mp, l, rng);
        if (roots.size() < 2) {
            todo.push_back(e);
            continue;
        }
        for (u64 r : roots) {
            V er = e;
            for (u64 s : roots) {
                if (s == r) continue;
                V fac = vscale(vsub(x, vscale(e, s, l), l), invmod((r + l - s) % l, l), l);
                er = amul(er, fac);
            }
            if (!vzero(er)) todo.push_back(er);
        }
    }
    DIH_ASSERT(done.size() == g, "number of primes equals Berlekamp dimension");

    std::vector<PrimeIdeal> out;
    unsigned sum = 0;
    V one = K.reduce(R.one());
    for (auto& e : done) {
        std::vector<V> eA;
        MatP gens = K.basis();
        V ce = vsub(one, e, l);
        for (std::size_t c : comp) {
            eA.push_back(amul(e, unitv(c)));
            gens.push_back(amul(ce, unitv(c)));
        }
        unsigned f = (unsigned)rank_of(eA);
        Ideal P = lift_subspace(o, gens, l);
        PrimeIdeal pr = make_prime(o, P, l, f);
        DIH_ASSERT(P.norm == pr.norm(), "prime ideal norm is l^f");
        sum += pr.e * pr.f;
        out.push_back(std::move(pr));
    }
    DIH_ASSERT(sum == n, "sum of e*f equals the degree");
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.e != b.e) return a.e < b.e;
        return a.ideal.hnf.str() < b.ideal.hnf.str();
    });
    return out;
}

IntMatrix lll_reduce(const Order& o, const IntMatrix& b0, long double delta) {
    const auto& E = o.embeddings().real_coords;
    std::size_t k = b0.rows(), n = o.degree();
    IntMatrix B = b0;
    using LV = std::vector<long double>;
    auto realvec = [&](std::size_t i) {
        LV v(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            if (B(i, a) == 0) continue;
            long double x = (long double)B(i, a).get_d();
            if (!B(i, a).fits_slong_p()) {
                // keep more bits than get_d for large entries
                long ex;
                double m = mpz_get_d_2exp(&ex, B(i, a).get_mpz_t());
                x = std::ldexp((long double)m, (int)ex);
            } else {
                x = (long double)B(i, a).get_si();
            }
            for (std::size_t c = 0; c < n; ++c) v[c] += x * E[a][c];
        }
        return v;
    };
    auto dot = [&](const LV& a, const LV& b) {
        long double s = 0;
        for (std::size_t c = 0; c < n; ++c) s += a[c] * b[c];
        return s;
    };
    std::vector<LV> R(k), Bs(k);
    std::vector<long double> Bn(k);
    std::vector<std::vector<long double>> mu(k, std::vector<long double>(k, 0));
    for (std::size_t i = 0; i < k; ++i) R[i] = realvec(i);
    auto gso_row = [&](std::size_t i) {
        Bs[i] = R[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = Bn[j] > 0 ? dot(R[i], Bs[j]) / Bn[j] : 0;
            for (std::size_t c = 0; c < n; ++c) Bs[i][c] -= mu[i][j] * Bs[j][c];
        }
        Bn[i] = dot(Bs[i], Bs[i]);
    };
    for (std::size_t i = 0; i < k; ++i) gso_row(i);
    std::size_t i = 1;
    long iters = 0;
    while (i < k) {
        DIH_ASSERT(++iters < 1000000, "LLL iteration cap");
        gso_row(i);
        // size reduction
        for (int j = (int)i - 1; j >= 0; --j) {
            for (int rep = 0; rep < 8 && std::fabs(mu[i][j]) > 0.51L; ++rep) {
                long double q = std::nearbyint(mu[i][j]);
                Int qi;
                mpz_set_d(qi.get_mpz_t(), (double)q);
                for (std::size_t c = 0; c < n; ++c) B(i, c) -= qi * B(j, c);
                R[i] = realvec(i);
                gso_row(i);
            }
        }
        if (Bn[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * Bn[i - 1]) {
            B.swap_rows(i, i - 1);
            std::swap(R[i], R[i - 1]);
            gso_row(i - 1);
            gso_row(i);
            i = std::max<std::size_t>(i - 1, 1);
        } else {
            ++i;
        }
    }
    return B;
}

} // namespace dihedralis

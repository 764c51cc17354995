#include "dihedralis/numfield.hpp"

#include "dihedralis/errors.hpp"
#include "dihedralis/matmodp.hpp"
#include "internal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace dihedralis {

Order Order::from_polynomial(const ZPoly& f) {
    if (!f.is_monic() || f.degree() < 1) fail("NotMonic", f.str());
    Order o;
    std::size_t n = f.degree();
    o.n_ = n;
    // theta^k for k < 2n-1 in the power basis
    std::vector<IntVec> pw(2 * n - 1, IntVec(n, 0));
    for (std::size_t k = 0; k < n; ++k) pw[k][k] = 1;
    for (std::size_t k = n; k < 2 * n - 1; ++k) {
        // theta^k = theta * theta^(k-1)
        const IntVec& prev = pw[k - 1];
        IntVec cur(n, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) cur[i + 1] = prev[i];
        Int top = prev[n - 1];
        for (std::size_t i = 0; i < n; ++i) cur[i] -= top * f.c[i];
        pw[k] = cur;
    }
    o.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.table_[i * n + j] = pw[i + j];
    o.one_ = IntVec(n, 0);
    o.one_[0] = 1;
    o.finish();
    return o;
}

Order Order::tensor(const Order& a, const Order& b) {
    Order o;
    std::size_t na = a.n_, nb = b.n_, n = na * nb;
    o.n_ = n;
    o.table_.assign(n * n, IntVec(n, 0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    const IntVec& ta = a.table(i, k);
                    const IntVec& tb = b.table(j, l);
                    IntVec& out = o.table_[(i * nb + j) * n + (k * nb + l)];
                    for (std::size_t r = 0; r < na; ++r) {
                        if (ta[r] == 0) continue;
                        for (std::size_t s = 0; s < nb; ++s) out[r * nb + s] = ta[r] * tb[s];
                    }
                }
    o.one_ = IntVec(n, 0);
    for (std::size_t r = 0; r < na; ++r)
        for (std::size_t s = 0; s < nb; ++s) o.one_[r * nb + s] = a.one_[r] * b.one_[s];
    o.finish();
    return o;
}

namespace {

void fill_real_coords(Embeddings& e) {
    std::size_t n = e.values.empty() ? 0 : e.values[0].size();
    e.real_coords.assign(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        for (std::size_t s = 0; s < e.r1; ++s) e.real_coords[i][c++] = e.values[s][i].real();
        for (std::size_t s = e.r1; s < e.values.size(); ++s) {
            e.real_coords[i][c++] = std::sqrt(2.0L) * e.values[s][i].real();
            e.real_coords[i][c++] = std::sqrt(2.0L) * e.values[s][i].imag();
        }
    }
}

} // namespace

Order Order::change_basis(const IntMatrix& num, const Int& den) const {
    std::size_t n = n_;
    DIH_ASSERT(num.rows() == n && num.cols() == n, "change_basis shape");
    Int D = num.det();
    DIH_ASSERT(D != 0, "change_basis singular");
    // exact inverse of num by rational Gauss-Jordan
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = num(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        mpq_class inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    // inv(num) = a[:, n:]; new coords of x (old coords, scaled by den^2 for products)
    auto to_new = [&](const IntVec& x, const Int& scale) {
        // solve y * (num/den) = x / scale  =>  y = x * inv(num) * den / scale
        IntVec y(n);
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class s = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (x[i] != 0) s += mpq_class(x[i]) * a[i][n + j];
            s *= mpq_class(den, scale);
            s.canonicalize();
            if (s.get_den() != 1) fail("NotARing", "basis change is not closed under multiplication");
            y[j] = s.get_num();
        }
        return y;
    };
    Order o;
    o.n_ = n;
    o.table_.resize(n * n);
    std::vector<IntVec> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = num.row(i);
    Int den2 = den * den;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            IntVec y = to_new(mul(rows[i], rows[j]), den2);
            o.table_[i * n + j] = y;
            o.table_[j * n + i] = y;
        }
    o.one_ = to_new(one_, Int(1));
    o.maximal_at = maximal_at;
    o.finish();
    // Embeddings follow the basis change exactly; recomputing them from a
    // badly conditioned table would lose precision.
    const Embeddings& pe = embeddings();
    auto e = std::make_shared<Embeddings>();
    e->r1 = pe.r1;
    e->r2 = pe.r2;
    e->values.assign(pe.values.size(), std::vector<std::complex<double>>(n));
    for (std::size_t s = 0; s < pe.values.size(); ++s)
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<long double> acc = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (num(i, j) != 0)
                    acc += (long double)num(i, j).get_d() *
                           std::complex<long double>(pe.values[s][j].real(), pe.values[s][j].imag());
            acc /= (long double)den.get_d();
            e->values[s][i] = std::complex<double>((double)acc.real(), (double)acc.imag());
        }
    fill_real_coords(*e);
    o.emb_ = e;
    return o;
}

Order reduce_order_basis(const Order& o) {
    IntMatrix B = lll_reduce(o, IntMatrix::identity(o.degree()));
    return o.change_basis(B, 1);
}

void Order::finish() {
    std::size_t n = n_;
    traces_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) traces_[i] += table_[i * n + k][k];
    IntMatrix tr(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int s = 0;
            const IntVec& t = table_[i * n + j];
            for (std::size_t k = 0; k < n; ++k) s += t[k] * traces_[k];
            tr(i, j) = s;
        }
    disc_ = tr.det();
    DIH_ASSERT(disc_ != 0, "degenerate trace form (reducible algebra?)");
    emb_.reset();
}

IntVec Order::unit(std::size_t i) const {
    IntVec v(n_, 0);
    v[i] = 1;
    return v;
}

IntVec Order::scalar(const Int& a) const {
    IntVec v = one_;
    for (auto& x : v) x *= a;
    return v;
}

bool Order::is_zero(const IntVec& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

IntVec Order::mul(const IntVec& a, const IntVec& b) const {
    std::size_t n = n_;
    IntVec c(n, 0);
    Int ab;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            ab = a[i] * b[j];
            const IntVec& t = table_[i * n + j];
            for (std::size_t k = 0; k < n; ++k)
                if (t[k] != 0) c[k] += ab * t[k];
        }
    }
    return c;
}

IntMatrix Order::mult_matrix(const IntVec& a) const {
    std::size_t n = n_;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const IntVec& t = table_[i * n + j];
            for (std::size_t k = 0; k < n; ++k)
                if (t[k] != 0) m(j, k) += a[i] * t[k];
        }
    }
    return m;
}

Int Order::trace(const IntVec& a) const {
    Int s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += a[i] * traces_[i];
    return s;
}

Int Order::norm(const IntVec& a) const { return mult_matrix(a).det(); }

ZPoly Order::charpoly(const IntVec& a) const {
    // Faddeev-LeVerrier with exact integer division.
    std::size_t n = n_;
    IntMatrix A = mult_matrix(a), M = IntMatrix::identity(n);
    std::vector<Int> c(n + 1);
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix AM = A * M;
        Int tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        DIH_ASSERT(tr % (long)k == 0, "charpoly division");
        c[n - k] = -tr / (long)k;
        M = AM;
        for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k];
    }
    return ZPoly(c);
}

bool Order::known_maximal_at(u64 l) const {
    return std::find(maximal_at.begin(), maximal_at.end(), l) != maximal_at.end();
}

std::vector<u64> Order::table_mod(u64 l) const {
    std::vector<u64> t(n_ * n_ * n_);
    for (std::size_t ij = 0; ij < n_ * n_; ++ij)
        for (std::size_t k = 0; k < n_; ++k)
            t[ij * n_ + k] = mpz_fdiv_ui(table_[ij][k].get_mpz_t(), l);
    return t;
}


const Embeddings& Order::embeddings() const {
    if (emb_) return *emb_;
    using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
    std::size_t n = n_;
    std::mt19937_64 rng(1);
    auto e = std::make_shared<Embeddings>();
    for (int attempt = 0; attempt < 200; ++attempt) {
        IntVec g(n, 0);
        for (std::size_t i = 1; i < n; ++i) g[i] = attempt == 0 ? (i == 1 ? 1 : 0) : (long)(rng() % 7) - 3;
        if (n == 1) g[0] = 1;
        IntMatrix R = mult_matrix(g);
        CMat Rc(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Rc(i, j) = R(i, j).get_d();
        Eigen::ComplexEigenSolver<CMat> es(Rc);
        if (es.info() != Eigen::Success) continue;
        auto lam = es.eigenvalues();
        double scale = 1;
        for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(lam(i)));
        bool separated = true;
        for (std::size_t i = 0; i < n && separated; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(lam(i) - lam(j)) < 1e-6 * scale) {
                    separated = false;
                    break;
                }
        if (!separated) continue;
        // R v = lambda v with v_i = sigma(w_i); normalize sigma(1) = 1.
        std::vector<std::vector<std::complex<double>>> real, cplx;
        double tol = 1e-8 * scale;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::complex<double>> v(n);
            std::complex<double> s1 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = es.eigenvectors()(i, s);
                s1 += one_[i].get_d() * v[i];
            }
            for (auto& x : v) x /= s1;
            if (std::abs(lam(s).imag()) < tol) {
                for (auto& x : v) x = x.real();
                real.push_back(v);
            } else if (lam(s).imag() > 0) {
                cplx.push_back(v);
            }
        }
        if (real.size() + 2 * cplx.size() != n) continue;
        e->r1 = real.size();
        e->r2 = cplx.size();
        e->values = real;
        e->values.insert(e->values.end(), cplx.begin(), cplx.end());
        fill_real_coords(*e);
        // multiplicativity sanity check
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                for (std::size_t s = 0; s < e->values.size(); ++s) {
                    std::complex<double> lhs = 0;
                    const IntVec& t = table(i, j);
                    for (std::size_t k = 0; k < n; ++k) lhs += t[k].get_d() * e->values[s][k];
                    std::complex<double> rhs = e->values[s][i] * e->values[s][j];
                    if (std::abs(lhs - rhs) > 1e-6 * (1 + std::abs(rhs))) {
                        ok = false;
                        break;
                    }
                }
        if (!ok) continue;
        emb_ = e;
        return *emb_;
    }
    fail("EmbeddingFailure", "no separable primitive element found");
}

std::complex<double> Order::embed(const IntVec& a, std::size_t s) const {
    const auto& e = embeddings();
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < n_; ++i)
        if (a[i] != 0) z += a[i].get_d() * e.values[s][i];
    return z;
}

long double Order::t2(const IntVec& a) const {
    const auto& e = embeddings();
    long double s = 0;
    for (std::size_t c = 0; c < n_; ++c) {
        long double x = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (a[i] != 0) x += (long double)a[i].get_d() * e.real_coords[i][c];
        s += x * x;
    }
    return s;
}

OrderModP::OrderModP(const Order& o, u64 l) : n_(o.degree()), l_(l), t_(o.table_mod(l)) {
    one_ = reduce(o.one());
}

std::vector<u64> OrderModP::reduce(const IntVec& a) const {
    std::vector<u64> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), l_);
    return r;
}

std::vector<u64> OrderModP::mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u128> acc(n_, 0);
    std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!b[j]) continue;
            u64 ab = mulmod(a[i], b[j], l_);
            const u64* t = &t_[(i * n + j) * n];
            for (std::size_t k = 0; k < n; ++k) acc[k] += (u128)ab * t[k];
        }
        // keep the accumulators bounded
        if ((i & 7) == 7)
            for (auto& x : acc) x %= l_;
    }
    std::vector<u64> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = (u64)(acc[k] % l_);
    return c;
}

std::vector<u64> OrderModP::pow(std::vector<u64> a, Int e) const {
    std::vector<u64> r = one_;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
        e >>= 1;
        if (e > 0) a = mul(a, a);
    }
    return r;
}

// Radical of lO in O as a subspace of O/lO: kernel of x -> x^(l^j), l^j >= n.
SubspaceP radical_mod(const Order& o, const OrderModP& R) {
    std::size_t n = o.degree();
    u64 l = R.prime();
    if (o.discriminant() % l != 0) return SubspaceP(n, l);
    Int q = l;
    while (q < (long)n) q *= l;
    MatP rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<u64> x(n, 0);
        x[i] = 1;
        rows.push_back(R.pow(x, q));
    }
    return SubspaceP(matp::left_kernel(rows, l), n, l);
}

namespace {

// One Round 2 step: returns true and the enlarged order if O is not l-maximal.
bool enlarge_once(const Order& o, u64 l, Order& out) {
    std::size_t n = o.degree();
    OrderModP R(o, l);
    SubspaceP K = radical_mod(o, R);
    Ideal I = lift_subspace(o, K.basis(), l);
    // x -> (x * beta_j in I-coordinates) mod l
    MatP rows(n, VecP(n * n));
    std::vector<IntVec> beta(n);
    for (std::size_t j = 0; j < n; ++j) beta[j] = I.hnf.row(j);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec wi = o.unit(i);
        for (std::size_t j = 0; j < n; ++j) {
            IntVec c = ideal_coordinates(I, o.mul(wi, beta[j]));
            for (std::size_t k = 0; k < n; ++k) rows[i][j * n + k] = mpz_fdiv_ui(c[k].get_mpz_t(), l);
        }
    }
    MatP ker = matp::left_kernel(rows, l);
    if (ker.empty()) return false;
    Ideal U = lift_subspace(o, ker, l);
    out = o.change_basis(U.hnf, Int((unsigned long)l));
    return true;
}

} // namespace

bool is_maximal_at(const Order& o, u64 l) {
    if (o.known_maximal_at(l)) return true;
    Int d = o.discriminant();
    if (d % l != 0 || d % (Int(l) * l) != 0) return true;
    Order tmp;
    return !enlarge_once(o, l, tmp);
}

Order maximalize_at(const Order& o0, const std::vector<u64>& primes) {
    Order o = o0;
    for (u64 l : primes) {
        if (o.known_maximal_at(l)) continue;
        Int d = o.discriminant();
        long v = 0;
        while (d % l == 0) {
            d /= l;
            ++v;
        }
        long steps = 0;
        Order next;
        while (v >= 2 && enlarge_once(o, l, next)) {
            o = std::move(next);
            if (++steps > v / 2 + 1) fail("EnlargementDiverged", "at " + std::to_string(l));
            d = o.discriminant();
            v = 0;
            while (d % l == 0) {
                d /= l;
                ++v;
            }
        }
        o.maximal_at.push_back(l);
    }
    return o;
}

Order maximal_order(const ZPoly& f) {
    Order o = Order::from_polynomial(f);
    std::vector<u64> ps;
    for (auto& [p, e] : factor_integer(abs(o.discriminant()))) {
        if (e < 2) continue;
        DIH_ASSERT(p.fits_ulong_p(), "prime too large for maximalization");
        ps.push_back(p.get_ui());
    }
    o = maximalize_at(o, ps);
    for (auto& [p, e] : factor_integer(abs(o.discriminant())))
        if (p.fits_ulong_p() && !o.known_maximal_at(p.get_ui())) o.maximal_at.push_back(p.get_ui());
    return reduce_order_basis(o);
}

Int minkowski_bound_formula(std::size_t n, std::size_t r2, const Int& disc) {
    // ideal norms are integers, so the bound is rounded down
    long double c = std::pow(4.0L / 3.14159265358979323846264338327950288L, (long double)r2);
    for (std::size_t k = 1; k <= n; ++k) c *= (long double)k / (long double)n;
    long double b = c * std::sqrt(std::fabs((long double)disc.get_d()));
    Int r;
    mpz_set_d(r.get_mpz_t(), (double)std::floor(b));
    return r < 1 ? Int(1) : r;
}

Int minkowski_bound(const Order& o) {
    return minkowski_bound_formula(o.degree(), o.embeddings().r2, o.discriminant());
}

Order compositum_order(const Order& a, const Order& b) {
    Order t = Order::tensor(a, b);
    Int g;
    mpz_gcd(g.get_mpz_t(), a.discriminant().get_mpz_t(), b.discriminant().get_mpz_t());
    std::vector<u64> ps;
    for (auto& [p, e] : factor_integer(abs(g))) ps.push_back(p.get_ui());
    t = maximalize_at(t, ps);
    for (u64 p : a.maximal_at)
        if (b.discriminant() % p != 0 && !t.known_maximal_at(p)) t.maximal_at.push_back(p);
    for (u64 p : b.maximal_at)
        if (a.discriminant() % p != 0 && !t.known_maximal_at(p)) t.maximal_at.push_back(p);
    return reduce_order_basis(t);
}

} // namespace dihedralis

#include "dihedralis/intmat.hpp"

#include "dihedralis/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dihedralis {

namespace {
bool g_checks = false;

// Quotient rounded to nearest, keeps remainders small during elimination.
Int round_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int twice = 2 * r;
    if (abs(twice) > abs(b)) q += 1;  // r has the sign of b, so r - b is smaller
    return q;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        DIH_ASSERT(p < n, "singular matrix in unimodular_inverse");
        std::swap(a[p], a[c]);
        mpq_class inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = c; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            DIH_ASSERT(a[i][n + j].get_den() == 1, "inverse not integral");
            r(i, j) = a[i][n + j].get_num();
        }
    return r;
}
} // namespace

void set_exactness_checks(bool on) { g_checks = on; }
bool exactness_checks() { return g_checks; }

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.resize(r_ * c_);
    std::size_t i = 0;
    for (const auto& row : rows) {
        DIH_ASSERT(row.size() == c_, "ragged initializer");
        std::size_t j = 0;
        for (long v : row) (*this)(i, j++) = v;
        ++i;
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
    DIH_ASSERT(v.size() == c_, "row length");
    std::copy(v.begin(), v.end(), a_.begin() + i * c_);
}

void IntMatrix::append_row(const IntVec& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    DIH_ASSERT(v.size() == c_, "row length");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    DIH_ASSERT(c_ == o.r_, "dimension mismatch in product");
    IntMatrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

Int IntMatrix::det() const {
    DIH_ASSERT(r_ == c_, "det of non-square matrix");
    std::size_t n = r_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

HnfResult hnf(const IntMatrix& m, bool want_transform) {
    HnfResult res;
    IntMatrix& H = res.H;
    H = m;
    IntMatrix& U = res.U;
    if (want_transform) U = IntMatrix::identity(m.rows());
    std::size_t R = H.rows(), C = H.cols(), r = 0;

    auto row_sub = [&](std::size_t i, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < C; ++k) H(i, k) -= q * H(t, k);
        if (want_transform)
            for (std::size_t k = 0; k < R; ++k) U(i, k) -= q * U(t, k);
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        H.swap_rows(i, j);
        if (want_transform) U.swap_rows(i, j);
    };

    for (std::size_t j = 0; j < C && r < R; ++j) {
        bool found = false;
        for (;;) {
            std::size_t best = R;
            for (std::size_t i = r; i < R; ++i)
                if (H(i, j) != 0 && (best == R || abs(H(i, j)) < abs(H(best, j)))) best = i;
            if (best == R) break;
            found = true;
            swap(best, r);
            bool clean = true;
            for (std::size_t i = r + 1; i < R; ++i) {
                if (H(i, j) == 0) continue;
                row_sub(i, r, round_div(H(i, j), H(r, j)));
                if (H(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!found) continue;
        if (H(r, j) < 0) {
            for (std::size_t k = 0; k < C; ++k) H(r, k) = -H(r, k);
            if (want_transform)
                for (std::size_t k = 0; k < R; ++k) U(r, k) = -U(r, k);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
            row_sub(i, r, q);
        }
        res.pivot_cols.push_back(j);
        ++r;
    }
    res.rank = r;
    return res;
}

namespace {
// Shared SNF core; U, V, Vinv may be null.
void snf_core(IntMatrix& D, IntMatrix* U, IntMatrix* V) {
    std::size_t R = D.rows(), C = D.cols();
    auto row_add = [&](std::size_t i, std::size_t t, const Int& q) {  // row_i += q row_t
        if (q == 0) return;
        for (std::size_t k = 0; k < C; ++k) D(i, k) += q * D(t, k);
        if (U)
            for (std::size_t k = 0; k < R; ++k) (*U)(i, k) += q * (*U)(t, k);
    };
    auto col_add = [&](std::size_t j, std::size_t t, const Int& q) {  // col_j += q col_t
        if (q == 0) return;
        for (std::size_t k = 0; k < R; ++k) D(k, j) += q * D(k, t);
        if (V)
            for (std::size_t k = 0; k < C; ++k) (*V)(k, j) += q * (*V)(k, t);
    };
    std::size_t n = std::min(R, C);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t bi = R, bj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (D(i, j) != 0 && (bi == R || abs(D(i, j)) < abs(D(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == R) return;  // remaining block is zero
            D.swap_rows(bi, t);
            if (U) U->swap_rows(bi, t);
            D.swap_cols(bj, t);
            if (V) V->swap_cols(bj, t);
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (D(i, t) == 0) continue;
                row_add(i, t, -round_div(D(i, t), D(t, t)));
                if (D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (D(t, j) == 0) continue;
                col_add(j, t, -round_div(D(t, j), D(t, t)));
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            std::size_t fi = R;
            for (std::size_t i = t + 1; i < R && fi == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        fi = i;
                        break;
                    }
            if (fi == R) break;
            row_add(t, fi, 1);
        }
        if (D(t, t) < 0) {
            for (std::size_t k = 0; k < C; ++k) D(t, k) = -D(t, k);
            if (U)
                for (std::size_t k = 0; k < R; ++k) (*U)(t, k) = -(*U)(t, k);
        }
    }
}
} // namespace

SnfResult snf_with_transforms(const IntMatrix& m) {
    SnfResult r;
    r.D = m;
    r.U = IntMatrix::identity(m.rows());
    r.V = IntMatrix::identity(m.cols());
    snf_core(r.D, &r.U, &r.V);
    if (g_checks) {
        DIH_ASSERT(r.U * m * r.V == r.D, "SNF identity U*m*V = D");
        DIH_ASSERT(abs(r.U.det()) == 1 && abs(r.V.det()) == 1, "SNF transforms unimodular");
        DIH_ASSERT(r.D.is_diagonal(), "SNF diagonal");
        for (std::size_t i = 0; i + 1 < std::min(m.rows(), m.cols()); ++i)
            if (r.D(i + 1, i + 1) != 0)
                DIH_ASSERT(r.D(i, i) != 0 && r.D(i + 1, i + 1) % r.D(i, i) == 0,
                           "SNF divisibility chain");
    }
    return r;
}

std::vector<Int> elementary_divisors(const IntMatrix& m) {
    IntMatrix D = m;
    snf_core(D, nullptr, nullptr);
    std::vector<Int> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
}

Int AbelianGroupStructure::order() const {
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

IntVec AbelianGroupStructure::coordinates(const IntVec& ambient) const {
    IntVec out(invariant_factors.size());
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        Int s = 0;
        std::size_t c = snf_columns[i];
        for (std::size_t k = 0; k < ambient.size(); ++k) s += ambient[k] * to_snf(k, c);
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), invariant_factors[i].get_mpz_t());
        out[i] = s;
    }
    return out;
}

std::string AbelianGroupStructure::str() const {
    std::ostringstream os;
    if (invariant_factors.empty() && free_rank == 0) return "trivial";
    bool first = true;
    for (const auto& d : invariant_factors) {
        os << (first ? "" : " x ") << "Z/" << d;
        first = false;
    }
    for (std::size_t i = 0; i < free_rank; ++i) {
        os << (first ? "" : " x ") << "Z";
        first = false;
    }
    return os.str();
}

AbelianGroupStructure abelian_group_structure(const IntMatrix& relations, bool demand_finite) {
    std::size_t k = relations.cols();
    AbelianGroupStructure g;
    IntMatrix rel = relations;
    if (rel.rows() == 0) rel = IntMatrix(0, k);
    SnfResult s = snf_with_transforms(rel);
    IntMatrix Vinv = unimodular_inverse(s.V);
    std::size_t diag = std::min(rel.rows(), k);
    for (std::size_t i = 0; i < k; ++i) {
        Int d = i < diag ? s.D(i, i) : Int(0);
        if (d == 1) continue;
        if (d == 0) {
            ++g.free_rank;
            continue;
        }
        g.invariant_factors.push_back(d);
        g.snf_columns.push_back(i);
        g.generators.push_back(Vinv.row(i));
    }
    if (demand_finite && g.free_rank > 0)
        fail("InfiniteGroup", "cokernel has free rank " + std::to_string(g.free_rank));
    g.to_snf = s.V;
    return g;
}

LatticeAccumulator::LatticeAccumulator(std::size_t k) : k_(k), rows_(k) {}

void LatticeAccumulator::reduce_mod(IntVec& v) const {
    if (modulus_ == 0) return;
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
}

bool LatticeAccumulator::insert(IntVec v) {
    DIH_ASSERT(v.size() == k_, "vector length");
    reduce_mod(v);
    bool changed = false;
    for (std::size_t j = 0; j < k_; ++j) {
        if (v[j] == 0) continue;
        IntVec& b = rows_[j];
        if (b.empty()) {
            if (v[j] < 0)
                for (auto& x : v) x = -x;
            b = std::move(v);
            ++rank_;
            if (rank_ == k_) {
                modulus_ = determinant();
                for (std::size_t i = 0; i < k_; ++i)
                    for (std::size_t c = i + 1; c < k_; ++c)
                        mpz_fdiv_r(rows_[i][c].get_mpz_t(), rows_[i][c].get_mpz_t(),
                                   modulus_.get_mpz_t());
            }
            return true;
        }
        if (v[j] % b[j] == 0) {
            Int q = v[j] / b[j];
            for (std::size_t c = j; c < k_; ++c) v[c] -= q * b[c];
            reduce_mod(v);
            continue;
        }
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t(), v[j].get_mpz_t());
        Int bj = b[j] / g, vj = v[j] / g;
        IntVec nb(k_), nv(k_);
        for (std::size_t c = j; c < k_; ++c) {
            nb[c] = s * b[c] + t * v[c];
            nv[c] = bj * v[c] - vj * b[c];
        }
        if (nb[j] < 0)
            for (auto& x : nb) x = -x;
        b = std::move(nb);
        v = std::move(nv);
        changed = true;
        if (modulus_ != 0) {
            modulus_ = determinant();
            for (std::size_t c = j + 1; c < k_; ++c)
                mpz_fdiv_r(b[c].get_mpz_t(), b[c].get_mpz_t(), modulus_.get_mpz_t());
            reduce_mod(v);
        }
    }
    return changed;
}

Int LatticeAccumulator::determinant() const {
    if (rank_ < k_) return 0;
    Int d = 1;
    for (std::size_t j = 0; j < k_; ++j) d *= rows_[j][j];
    return d;
}

IntMatrix LatticeAccumulator::basis() const {
    DIH_ASSERT(full_rank(), "basis() requires full rank");
    std::vector<IntVec> r = rows_;
    for (std::size_t j = 0; j < k_; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), r[i][j].get_mpz_t(), r[j][j].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t c = j; c < k_; ++c) r[i][c] -= q * r[j][c];
            for (std::size_t c = j + 1; c < k_; ++c)
                mpz_fdiv_r(r[i][c].get_mpz_t(), r[i][c].get_mpz_t(), modulus_.get_mpz_t());
        }
    return IntMatrix::from_rows(r, k_);
}

IntMatrix left_kernel(const IntMatrix& m) {
    HnfResult h = hnf(m, true);
    IntMatrix k(0, m.rows());
    for (std::size_t i = h.rank; i < m.rows(); ++i) k.append_row(h.U.row(i));
    return k;
}

} // namespace dihedralis

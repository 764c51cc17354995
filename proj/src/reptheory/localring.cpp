#include "dihedralis/errors.hpp"
#include "dihedralis/reptheory.hpp"

#include <numeric>

namespace dihedralis {

RElem LocalRing::X() const {
    Elem r{};
    if (k > 1) r[1] = 1;
    return r;
}

RElem LocalRing::add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (unsigned i = 0; i < k; ++i) r[i] = F->add(a[i], b[i]);
    return r;
}

RElem LocalRing::sub(const Elem& a, const Elem& b) const {
    Elem r{};
    for (unsigned i = 0; i < k; ++i) r[i] = F->sub(a[i], b[i]);
    return r;
}

RElem LocalRing::mul(const Elem& a, const Elem& b) const {
    Elem r{};
    for (unsigned i = 0; i < k; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; i + j < k; ++j)
            if (b[j]) r[i + j] = F->add(r[i + j], F->mul(a[i], b[j]));
    }
    return r;
}

RElem LocalRing::scale(FiniteField::Elem c, const Elem& a) const {
    Elem r{};
    for (unsigned i = 0; i < k; ++i) r[i] = F->mul(c, a[i]);
    return r;
}

RElem LocalRing::inv(const Elem& a) const {
    if (!is_unit(a)) fail("NotAUnit", "element of the maximal ideal");
    // a = a0 (1 + v) with v nilpotent
    FiniteField::Elem i0 = F->inv(a[0]);
    Elem v = scale(i0, a);
    v[0] = 0;
    Elem sum = one(), term = one();
    for (unsigned i = 1; i < k; ++i) {
        term = neg(mul(term, v));
        sum = add(sum, term);
    }
    return scale(i0, sum);
}

RElem LocalRing::truncate(const Elem& a, unsigned k2) const {
    Elem r{};
    for (unsigned i = 0; i < std::min(k, k2); ++i) r[i] = a[i];
    return r;
}

std::string LocalRing::str(const Elem& a) const {
    std::string s;
    for (unsigned i = 0; i < k; ++i) {
        if (!a[i]) continue;
        if (!s.empty()) s += " + ";
        std::string c = F->str(a[i]);
        if (i == 0) {
            s += c;
            continue;
        }
        if (a[i] != 1) s += "(" + c + ")";
        s += "X";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::string LocalRing::tag() const {
    if (k == 1) return F->tag();
    return F->tag() + "[X]/(X^" + std::to_string(k) + ")";
}

std::size_t Mat2Hash::operator()(const Mat2& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto& r : m.e)
        for (auto x : r) h = (h ^ x) * 1099511628211ull;
    return h;
}

namespace m2 {

Mat2 identity(const LocalRing& A) { return make(A, A.one(), A.zero(), A.zero(), A.one()); }

Mat2 make(const LocalRing&, const RElem& a, const RElem& b, const RElem& c, const RElem& d) {
    Mat2 m;
    m.e = {a, b, c, d};
    return m;
}

Mat2 constant(const LocalRing& A, FiniteField::Elem a, FiniteField::Elem b, FiniteField::Elem c,
              FiniteField::Elem d) {
    return make(A, A.constant(a), A.constant(b), A.constant(c), A.constant(d));
}

Mat2 mul(const LocalRing& A, const Mat2& x, const Mat2& y) {
    Mat2 r;
    r.e[0] = A.add(A.mul(x.e[0], y.e[0]), A.mul(x.e[1], y.e[2]));
    r.e[1] = A.add(A.mul(x.e[0], y.e[1]), A.mul(x.e[1], y.e[3]));
    r.e[2] = A.add(A.mul(x.e[2], y.e[0]), A.mul(x.e[3], y.e[2]));
    r.e[3] = A.add(A.mul(x.e[2], y.e[1]), A.mul(x.e[3], y.e[3]));
    return r;
}

Mat2 add(const LocalRing& A, const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = A.add(x.e[i], y.e[i]);
    return r;
}

Mat2 scale(const LocalRing& A, const RElem& s, const Mat2& x) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = A.mul(s, x.e[i]);
    return r;
}

RElem det(const LocalRing& A, const Mat2& x) {
    return A.sub(A.mul(x.e[0], x.e[3]), A.mul(x.e[1], x.e[2]));
}

RElem trace(const LocalRing& A, const Mat2& x) { return A.add(x.e[0], x.e[3]); }

Mat2 inv(const LocalRing& A, const Mat2& x) {
    RElem d = det(A, x);
    if (!A.is_unit(d)) fail("NotInvertible", "determinant is not a unit");
    RElem di = A.inv(d);
    return make(A, A.mul(di, x.e[3]), A.neg(A.mul(di, x.e[1])), A.neg(A.mul(di, x.e[2])),
                A.mul(di, x.e[0]));
}

Mat2 conj(const LocalRing& A, const Mat2& g, const Mat2& x) { return mul(A, mul(A, g, x), inv(A, g)); }

Mat2 pow(const LocalRing& A, const Mat2& x, u64 e) {
    Mat2 r = identity(A), b = x;
    while (e) {
        if (e & 1) r = mul(A, r, b);
        b = mul(A, b, b);
        e >>= 1;
    }
    return r;
}

Mat2 truncate(const LocalRing& A, const Mat2& x, unsigned k2) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = A.truncate(x.e[i], k2);
    return r;
}

u64 order(const LocalRing& A, const Mat2& x, u64 cap) {
    Mat2 one = identity(A), cur = x;
    for (u64 n = 1; n <= cap; ++n) {
        if (cur == one) return n;
        cur = mul(A, cur, x);
    }
    fail("OrderTooLarge", "element order exceeds the cap");
}

bool is_diagonal(const Mat2& x) { return x.e[1] == RElem{} && x.e[2] == RElem{}; }
bool is_antidiagonal(const Mat2& x) { return x.e[0] == RElem{} && x.e[3] == RElem{}; }

std::string str(const LocalRing& A, const Mat2& x) {
    return "[[" + A.str(x.e[0]) + ", " + A.str(x.e[1]) + "], [" + A.str(x.e[2]) + ", " + A.str(x.e[3]) +
           "]]";
}

} // namespace m2

} // namespace dihedralis

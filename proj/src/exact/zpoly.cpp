#include "dihedralis/zpoly.hpp"

#include "dihedralis/errors.hpp"

#include <cctype>
#include <sstream>

namespace dihedralis {

void ZPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

ZPoly ZPoly::monomial(unsigned deg, const Int& coef) {
    std::vector<Int> v(deg + 1);
    v[deg] = coef;
    return ZPoly(v);
}

ZPoly ZPoly::parse(const std::string& src) {
    std::string s;
    for (char ch : src)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s.empty()) fail("ParseError", "empty polynomial");
    std::vector<Int> coef;
    std::size_t i = 0;
    auto add = [&](unsigned e, const Int& v) {
        if (coef.size() <= e) coef.resize(e + 1);
        coef[e] += v;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        Int v = 1;
        bool have_num = false;
        std::size_t st = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i > st) {
            v = Int(s.substr(st, i - st));
            have_num = true;
        }
        unsigned e = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t es = i;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
                if (i == es) fail("ParseError", "missing exponent in " + src);
                e = (unsigned)std::stoul(s.substr(es, i - es));
            }
        } else if (!have_num) {
            fail("ParseError", "unexpected character in " + src);
        }
        add(e, sign * v);
        if (i < s.size() && s[i] != '+' && s[i] != '-') fail("ParseError", "bad term in " + src);
    }
    return ZPoly(coef);
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<Int> r(std::max(c.size(), o.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return ZPoly(r);
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<Int> r(std::max(c.size(), o.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return ZPoly(r);
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<Int> r(c.size() + o.c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return ZPoly(r);
}

ZPoly ZPoly::operator*(const Int& s) const {
    std::vector<Int> r = c;
    for (auto& x : r) x *= s;
    return ZPoly(r);
}

ZPoly ZPoly::derivative() const {
    if (c.size() <= 1) return ZPoly();
    std::vector<Int> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * (unsigned long)i;
    return ZPoly(r);
}

Int ZPoly::eval(const Int& x) const {
    Int r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

std::string ZPoly::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        const Int& v = c[i];
        if (v == 0) continue;
        Int a = abs(v);
        if (first)
            os << (v < 0 ? "-" : "");
        else
            os << (v < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1) os << a;
        if (i > 0) os << (a != 1 ? "*x" : "x");
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Int resultant(const ZPoly& f, const ZPoly& g) {
    int m = f.degree(), n = g.degree();
    DIH_ASSERT(m >= 0 && n >= 0, "resultant of zero polynomial");
    if (m == 0 && n == 0) return 1;
    // Sylvester matrix, determinant by fraction-free elimination.
    std::size_t N = (std::size_t)(m + n);
    IntMatrix S(N, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S(i, i + j) = f.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) S(n + i, i + j) = g.c[n - j];
    return S.det();
}

Int discriminant(const ZPoly& f) {
    int n = f.degree();
    DIH_ASSERT(n >= 1, "discriminant of constant");
    if (n == 1) return 1;
    Int r = resultant(f, f.derivative());
    Int d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
    if ((n * (n - 1) / 2) % 2) d = -d;
    return d;
}

ZPoly taylor_shift(const ZPoly& f, const Int& a) {
    std::vector<Int> r = f.c;
    int n = f.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) r[j] += a * r[j + 1];
    return ZPoly(r);
}

} // namespace dihedralis

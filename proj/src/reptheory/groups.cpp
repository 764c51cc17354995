#include "dihedralis/errors.hpp"
#include "internal.hpp"

#include <unordered_map>

namespace dihedralis {

namespace detail {

void Closure::push(const Mat2& z) {
    if (elems_.size() >= cap_)
        fail("ImageEnumerationBudgetExceeded", "group exceeds " + std::to_string(cap_) + " elements");
    elems_.push_back(z);
    set_.insert(z);
}

bool Closure::add(const Mat2& g) {
    if (contains(g)) return false;
    gens_.push_back(g);
    // old elements are already closed under the old generators
    std::size_t old = elems_.size();
    for (std::size_t i = 0; i < old; ++i) {
        Mat2 z = m2::mul(A_, elems_[i], g);
        if (!contains(z)) push(z);
    }
    for (std::size_t i = old; i < elems_.size(); ++i) {
        for (const Mat2& y : gens_) {
            Mat2 z = m2::mul(A_, elems_[i], y);
            if (!contains(z)) push(z);
        }
    }
    return true;
}

VecP to_fp(const LocalRing& A, const Mat2& x) {
    unsigned r = A.F->degree();
    VecP v;
    v.reserve(4 * A.k * r);
    for (auto& e : x.e)
        for (unsigned j = 0; j < A.k; ++j)
            for (u64 c : A.F->coefficients(e[j])) v.push_back(c);
    return v;
}

Mat2 from_fp(const LocalRing& A, const VecP& v) {
    unsigned r = A.F->degree();
    Mat2 x;
    std::size_t pos = 0;
    for (auto& e : x.e)
        for (unsigned j = 0; j < A.k; ++j) {
            VecP c(v.begin() + pos, v.begin() + pos + r);
            e[j] = A.F->from_coefficients(c);
            pos += r;
        }
    return x;
}

} // namespace detail

std::vector<Mat2> enumerate_group(const LocalRing& A, const std::vector<Mat2>& gens, u64 budget) {
    detail::Closure c(A, budget);
    for (auto& g : gens) c.add(g);
    return c.elements();
}

ImageData enumerate_image(const LocalRingRep& rep, u64 budget) {
    const LocalRing& A = rep.ring;
    DIH_ASSERT(rep.gens.size() == rep.in_h.size(), "generator flags");
    ImageData out;
    std::unordered_map<Mat2, std::size_t, Mat2Hash> index;
    Mat2 one = m2::identity(A);
    out.residual.push_back(m2::truncate(A, one, 1));
    out.transversal.push_back(one);
    out.residual_in_h.push_back(true);
    index[out.residual[0]] = 0;

    // residual image with one lift per element
    for (std::size_t u = 0; u < out.residual.size(); ++u) {
        for (std::size_t g = 0; g < rep.gens.size(); ++g) {
            Mat2 t = m2::mul(A, out.transversal[u], rep.gens[g]);
            Mat2 r = m2::truncate(A, t, 1);
            bool par = out.residual_in_h[u] == rep.in_h[g];
            auto it = index.find(r);
            if (it == index.end()) {
                if (out.residual.size() >= budget)
                    fail("ImageEnumerationBudgetExceeded", "residual image too large");
                index[r] = out.residual.size();
                out.residual.push_back(r);
                out.transversal.push_back(t);
                out.residual_in_h.push_back(par);
            } else if (out.residual_in_h[it->second] != par) {
                fail("InconsistentParity", "an element is reached both inside and outside H");
            }
        }
    }

    // Schreier generators of the kernel of reduction
    u64 cap = std::max<u64>(1, budget / out.residual.size());
    detail::Closure gamma(A, cap);
    for (std::size_t u = 0; u < out.residual.size(); ++u) {
        for (std::size_t g = 0; g < rep.gens.size(); ++g) {
            Mat2 t = m2::mul(A, out.transversal[u], rep.gens[g]);
            std::size_t v = index.at(m2::truncate(A, t, 1));
            Mat2 s = m2::mul(A, t, m2::inv(A, out.transversal[v]));
            gamma.add(s);
        }
    }
    out.gamma = gamma.elements();
    out.gamma_gens = gamma.gens();
    return out;
}

FrattiniQuotient::FrattiniQuotient(const LocalRing& A, const std::vector<Mat2>& gens, u64 budget)
    : ring_(A) {
    u64 p = A.p();
    detail::Closure g(A, budget);
    for (auto& x : gens) g.add(x);
    elements_ = g.elements();
    u64 n = elements_.size();
    while (n % p == 0) n /= p;
    if (n != 1) fail("NotPGroup", "order " + std::to_string(elements_.size()) + " is not a power of p");

    const auto& gg = g.gens();
    detail::Closure phi(A, budget);
    for (std::size_t i = 0; i < gg.size(); ++i) {
        phi.add(m2::pow(A, gg[i], p));
        for (std::size_t j = i + 1; j < gg.size(); ++j) {
            Mat2 c = m2::mul(A, m2::mul(A, gg[i], gg[j]), m2::inv(A, m2::mul(A, gg[j], gg[i])));
            phi.add(c);
        }
    }
    // normal closure
    bool grown = true;
    while (grown) {
        grown = false;
        std::vector<Mat2> pg = phi.gens();
        for (auto& y : pg)
            for (auto& x : gg) grown = phi.add(m2::conj(A, x, y)) || grown;
    }
    frattini_ = phi.elements();

    detail::Closure span(A, budget);
    for (auto& f : phi.gens()) span.add(f);
    for (auto& x : gg)
        if (!span.contains(x)) {
            basis_.push_back(x);
            span.add(x);
        }
    DIH_ASSERT(span.size() == elements_.size(), "Frattini basis spans");

    std::size_t d = basis_.size();
    std::vector<std::pair<Mat2, VecP>> cur;
    for (auto& f : frattini_) cur.push_back({f, VecP(d, 0)});
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::pair<Mat2, VecP>> next;
        next.reserve(cur.size() * p);
        Mat2 power = m2::identity(A);
        for (u64 e = 0; e < p; ++e) {
            for (auto& [x, c] : cur) {
                VecP c2 = c;
                c2[i] = e;
                next.push_back({m2::mul(A, x, power), std::move(c2)});
            }
            power = m2::mul(A, power, basis_[i]);
        }
        cur = std::move(next);
    }
    for (auto& [x, c] : cur) coords_.emplace(x, c);
    DIH_ASSERT(coords_.size() == elements_.size(), "quotient is elementary abelian with this basis");
}

VecP FrattiniQuotient::coordinates(const Mat2& g) const {
    auto it = coords_.find(g);
    if (it == coords_.end()) fail("NotInGroup", "element is not in the group");
    return it->second;
}

MatP FrattiniQuotient::action(const std::function<Mat2(const Mat2&)>& alpha) const {
    MatP m;
    for (auto& b : basis_) m.push_back(coordinates(alpha(b)));
    return m;
}

std::vector<Mat2> orbit_span(const LocalRing& A, const std::vector<Mat2>& actors, const Mat2& x) {
    u64 p = A.p();
    std::size_t n = 4 * A.k * A.F->degree();
    std::vector<Mat2> basis;
    MatP rows;
    auto try_add = [&](const Mat2& y) {
        VecP v = detail::to_fp(A, y);
        SubspaceP s(rows, n, p);
        if (s.contains(v)) return;
        rows.push_back(v);
        basis.push_back(y);
    };
    try_add(x);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (auto& g : actors) try_add(m2::conj(A, g, basis[i]));
    return basis;
}

} // namespace dihedralis

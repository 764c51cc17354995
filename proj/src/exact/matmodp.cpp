#include "dihedralis/matmodp.hpp"

#include "dihedralis/errors.hpp"

#include <algorithm>

namespace dihedralis {

namespace matp {

std::vector<std::size_t> rref(MatP& a, u64 p) {
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    std::size_t R = a.size(), C = a[0].size(), r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t s = r;
        while (s < R && a[s][c] == 0) ++s;
        if (s == R) continue;
        std::swap(a[s], a[r]);
        u64 inv = invmod(a[r][c], p);
        for (std::size_t k = c; k < C; ++k) a[r][k] = mulmod(a[r][k], inv, p);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a[i][c] == 0) continue;
            u64 f = a[i][c];
            for (std::size_t k = c; k < C; ++k)
                a[i][k] = (a[i][k] + p - mulmod(f, a[r][k], p)) % p;
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

MatP kernel(const MatP& a0, std::size_t cols, u64 p) {
    MatP a = a0;
    auto piv = rref(a, p);
    std::vector<int> is_piv(cols, -1);
    for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = (int)i;
    MatP out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f] >= 0) continue;
        VecP x(cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = (p - a[i][f]) % p;
        out.push_back(std::move(x));
    }
    return out;
}

MatP left_kernel(const MatP& a, u64 p) {
    if (a.empty()) return {};
    std::size_t R = a.size(), C = a[0].size();
    MatP t(C, VecP(R));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) t[j][i] = a[i][j];
    return kernel(t, R, p);
}

std::size_t rank(MatP a, u64 p) { return rref(a, p).size(); }

} // namespace matp

SubspaceP::SubspaceP(const MatP& gens, std::size_t n, u64 p) : n_(n), p_(p), rows_(gens) {
    for (auto& r : rows_) DIH_ASSERT(r.size() == n, "subspace generator length");
    piv_ = matp::rref(rows_, p);
}

VecP SubspaceP::reduce(VecP v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = v[piv_[i]];
        if (f == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) v[k] = (v[k] + p_ - mulmod(f, rows_[i][k], p_)) % p_;
    }
    return v;
}

bool SubspaceP::contains(const VecP& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; });
}

std::vector<std::size_t> SubspaceP::complement() const {
    std::vector<std::size_t> out;
    std::vector<bool> p(n_, false);
    for (auto c : piv_) p[c] = true;
    for (std::size_t i = 0; i < n_; ++i)
        if (!p[i]) out.push_back(i);
    return out;
}

} // namespace dihedralis

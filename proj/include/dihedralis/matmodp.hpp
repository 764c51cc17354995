#pragma once

#include "dihedralis/arith.hpp"

#include <vector>

namespace dihedralis {

using VecP = std::vector<u64>;
using MatP = std::vector<VecP>;  // row major

namespace matp {
// Reduced row echelon form in place; returns the pivot column of each
// nonzero row (zero rows are removed).
std::vector<std::size_t> rref(MatP& a, u64 p);
// Right null space basis: vectors x with a x = 0. `cols` is needed when a has no rows.
MatP kernel(const MatP& a, std::size_t cols, u64 p);
// Left null space basis: rows x with x a = 0.
MatP left_kernel(const MatP& a, u64 p);
std::size_t rank(MatP a, u64 p);
} // namespace matp

// Subspace of F_p^n held in reduced echelon form, with canonical reduction
// of vectors modulo it.
class SubspaceP {
public:
    SubspaceP(std::size_t n, u64 p) : n_(n), p_(p) {}
    SubspaceP(const MatP& gens, std::size_t n, u64 p);
    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }
    const MatP& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }
    // v minus its projection; zero exactly on members.
    VecP reduce(VecP v) const;
    bool contains(const VecP& v) const;
    // Standard basis indices not among the pivots (a complement basis).
    std::vector<std::size_t> complement() const;

private:
    std::size_t n_;
    u64 p_;
    MatP rows_;
    std::vector<std::size_t> piv_;
};

} // namespace dihedralis

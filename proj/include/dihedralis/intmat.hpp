#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace dihedralis {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntVec row(std::size_t i) const;
    void set_row(std::size_t i, const IntVec& v);
    void append_row(const IntVec& v);
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const;
    bool is_diagonal() const;
    Int det() const;  // Bareiss, square only
    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Row-style Hermite normal form: U*m = H with H upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). Zero rows last.
struct HnfResult {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};
HnfResult hnf(const IntMatrix& m, bool want_transform = false);

struct SnfResult {
    IntMatrix D, U, V;
};
// D = U*m*V, D diagonal with d1 | d2 | ... (zeros last), U and V unimodular.
SnfResult snf_with_transforms(const IntMatrix& m);
// Invariant factors only (including 1s and trailing zeros), cheaper.
std::vector<Int> elementary_divisors(const IntMatrix& m);

// When set, snf_with_transforms re-multiplies and checks U*m*V == D and the
// unimodularity of U and V on every call.
void set_exactness_checks(bool on);
bool exactness_checks();

struct AbelianGroupStructure {
    std::vector<Int> invariant_factors;   // each > 1, d1 | d2 | ...
    std::size_t free_rank = 0;
    // Row i: ambient exponent vector of the generator of the i-th cyclic factor.
    std::vector<IntVec> generators;
    // Ambient vector x has coordinates x * to_snf (column block matching the factors).
    IntMatrix to_snf;
    std::vector<std::size_t> snf_columns;  // columns of to_snf used by the factors
    Int order() const;
    // Coordinates of an ambient vector in the invariant-factor basis, reduced.
    IntVec coordinates(const IntVec& ambient) const;
    std::string str() const;
};

// Cokernel of the row span of `relations` (k columns = k generators).
AbelianGroupStructure abelian_group_structure(const IntMatrix& relations,
                                              bool demand_finite = true);

// Incremental HNF of an integer lattice in Z^k; once the lattice has full rank
// all arithmetic is carried out modulo its determinant.
class LatticeAccumulator {
public:
    explicit LatticeAccumulator(std::size_t k);
    // Returns true if the lattice changed.
    bool insert(IntVec v);
    bool full_rank() const { return rank_ == k_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return k_; }
    Int determinant() const;  // 0 unless full rank
    IntMatrix basis() const;  // reduced HNF rows (only for full rank: k x k)

private:
    void reduce_mod(IntVec& v) const;
    std::size_t k_, rank_ = 0;
    std::vector<IntVec> rows_;  // rows_[j] empty or pivot at column j
    Int modulus_;               // 0 until full rank
};

// Integer kernel (left null space) basis of m: rows x with x*m = 0.
IntMatrix left_kernel(const IntMatrix& m);

} // namespace dihedralis

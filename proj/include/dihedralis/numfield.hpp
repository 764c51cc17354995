#pragma once

#include "dihedralis/arith.hpp"
#include "dihedralis/intmat.hpp"
#include "dihedralis/zpoly.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace dihedralis {

// Complex embeddings of an order, one per real place and one per pair of
// complex places (the representative with positive imaginary part on the
// primitive element).
struct Embeddings {
    std::size_t r1 = 0, r2 = 0;
    // values[s][i] = sigma_s(w_i)
    std::vector<std::vector<std::complex<double>>> values;
    // Row i: real coordinates of w_i such that T2(x) = |x * E|^2.
    std::vector<std::vector<long double>> real_coords;
};

// A Z-order given by a multiplication table on a Z-basis w_0..w_{n-1}.
class Order {
public:
    static Order from_polynomial(const ZPoly& f);
    static Order tensor(const Order& a, const Order& b);
    // Order with basis rows num/den in the current coordinates; the result
    // must be a ring containing 1 (checked).
    Order change_basis(const IntMatrix& num, const Int& den) const;

    std::size_t degree() const { return n_; }
    const Int& discriminant() const { return disc_; }
    const IntVec& one() const { return one_; }
    const IntVec& table(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
    IntVec unit(std::size_t i) const;
    IntVec scalar(const Int& a) const;

    IntVec mul(const IntVec& a, const IntVec& b) const;
    IntMatrix mult_matrix(const IntVec& a) const;  // row i = a * w_i
    Int trace(const IntVec& a) const;
    Int norm(const IntVec& a) const;
    ZPoly charpoly(const IntVec& a) const;
    bool is_zero(const IntVec& a) const;

    const Embeddings& embeddings() const;
    long double t2(const IntVec& a) const;
    std::complex<double> embed(const IntVec& a, std::size_t s) const;

    // Primes at which this order is known to be maximal.
    std::vector<u64> maximal_at;
    bool known_maximal_at(u64 l) const;

    // Structure constants mod l, flattened (i*n + j)*n + k.
    std::vector<u64> table_mod(u64 l) const;

private:
    void finish();  // traces, discriminant
    std::size_t n_ = 0;
    std::vector<IntVec> table_;
    IntVec one_;
    std::vector<Int> traces_;
    Int disc_;
    mutable std::shared_ptr<Embeddings> emb_;
};

// Arithmetic in O/lO with a precomputed table.
class OrderModP {
public:
    OrderModP(const Order& o, u64 l);
    std::size_t n() const { return n_; }
    u64 prime() const { return l_; }
    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const;
    std::vector<u64> pow(std::vector<u64> a, Int e) const;
    std::vector<u64> reduce(const IntVec& a) const;
    const std::vector<u64>& one() const { return one_; }

private:
    std::size_t n_;
    u64 l_;
    std::vector<u64> t_;
    std::vector<u64> one_;
};

// Round 2 at a single prime.
bool is_maximal_at(const Order& o, u64 l);
Order maximalize_at(const Order& o, const std::vector<u64>& primes);
// Same order with an LLL-reduced basis.
Order reduce_order_basis(const Order& o);
// Maximal order of Q[x]/f, factoring disc(f) completely; reduced basis.
Order maximal_order(const ZPoly& f);

// Ideals as full-rank Z-lattices in the basis of the order: upper triangular
// row HNF with positive diagonal.
struct Ideal {
    IntMatrix hnf;
    Int norm;
};

Ideal ideal_from_generators(const Order& o, const std::vector<IntVec>& gens);
Ideal ideal_from_zbasis(const Order& o, const std::vector<IntVec>& zgens, const Int& multiple);
Ideal principal_ideal(const Order& o, const IntVec& a);
Ideal ideal_mul(const Order& o, const Ideal& a, const Ideal& b);
bool ideal_contains(const Ideal& a, const IntVec& x);
// Coordinates of x w.r.t. the rows of the HNF (exact).
IntVec ideal_coordinates(const Ideal& a, const IntVec& x);

struct PrimeIdeal {
    u64 l = 0;
    unsigned f = 0, e = 0;
    Ideal ideal;
    IntVec anti;            // tau with tau*P in lO, tau not in lO
    IntMatrix anti_matrix;  // multiplication by tau
    Int norm() const;
    std::string str() const;
};

// Factorization of lO; requires the order to be l-maximal (NotMaximalAt).
std::vector<PrimeIdeal> factor_rational_prime(const Order& o, u64 l);
long valuation(const Order& o, const PrimeIdeal& p, const IntVec& x);

// LLL-reduced basis (rows) of the lattice spanned by the rows of b w.r.t. T2.
IntMatrix lll_reduce(const Order& o, const IntMatrix& b, long double delta = 0.99L);

Int minkowski_bound(const Order& o);
// floor((4/pi)^r2 * n!/n^n * sqrt|disc|)
Int minkowski_bound_formula(std::size_t n, std::size_t r2, const Int& disc);

// Maximal order of the compositum of two fields with maximal orders a and b,
// assuming it has degree deg a * deg b: the tensor order maximalized at the
// primes dividing both discriminants.
Order compositum_order(const Order& a, const Order& b);

enum class BoundPolicy { Auto, Certified, Grh };
enum class Certification { MinkowskiCertified, GrhBach, HeuristicDoubling };
std::string certification_name(Certification c);

struct ClassGroupOptions {
    BoundPolicy policy = BoundPolicy::Auto;
    u64 seed = 1;
    // Gives up with RelationSearchStalled after this many candidate elements.
    std::size_t candidate_budget = 20000000;
};

struct ClassGroupResult {
    AbelianGroupStructure structure;
    Int h;
    std::vector<PrimeIdeal> factor_base;
    std::size_t relations = 0;
    Certification certification = Certification::HeuristicDoubling;
    u64 generation_bound = 0;  // every prime of norm <= this is generated by the factor base
    u64 factor_base_bound = 0;
};

ClassGroupResult class_group_general(const Order& o, const ClassGroupOptions& opt = {});

// Defining polynomial of the cubic field of discriminant d < 0, assuming it
// is unique (the 3-part of Cl(d) is cyclic). Hunter search with trace in {0, 1};
// among the hits the one with least |disc(g)|, then least (s1, s2, s3), wins.
ZPoly cubic_field_of_discriminant(const Int& d);

} // namespace dihedralis

#pragma once

#include "dihedralis/arith.hpp"
#include "dihedralis/polymodp.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dihedralis {

// F_{p^r} with elements encoded as base-p integers of their coefficient
// vectors (low coefficient = lowest digit). Multiplication goes through
// log/exp tables, so the field size is capped.
class FiniteField {
public:
    using Elem = std::uint32_t;
    static constexpr u64 kMaxSize = 1u << 24;

    // Searches the defining polynomial: lowest weight, then lexicographic.
    static std::shared_ptr<const FiniteField> make(u64 p, unsigned r);
    static std::shared_ptr<const FiniteField> make(u64 p, const PolyP& modulus);

    u64 p() const { return p_; }
    unsigned degree() const { return r_; }
    u64 size() const { return q_; }
    const PolyP& modulus() const { return mod_; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem generator() const { return exp_[1]; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const { return sub(0, a); }
    Elem mul(Elem a, Elem b) const {
        if (!a || !b) return 0;
        u64 s = (u64)log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, i64 e) const;
    Elem from_int(i64 v) const;  // image of an integer in the prime field
    Elem frobenius(Elem a) const { return pow(a, (i64)p_); }
    u64 log(Elem a) const { return log_[a]; }   // discrete log to generator()
    Elem exp(u64 k) const { return exp_[k % (q_ - 1)]; }
    std::vector<u64> coefficients(Elem a) const;
    Elem from_coefficients(const std::vector<u64>& c) const;
    // Element of order exactly n (requires n | q-1): generator^((q-1)/n).
    Elem root_of_unity(u64 n) const;
    bool in_prime_field(Elem a) const { return a < p_; }
    std::string str(Elem a) const;
    std::string tag() const { return "F_" + std::to_string(q_); }

    FiniteField(u64 p, const PolyP& modulus);

private:
    u64 p_, q_;
    unsigned r_;
    PolyP mod_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

struct FiniteFieldElement {
    FieldPtr field;
    FiniteField::Elem value = 0;
    std::vector<u64> coefficients() const { return field->coefficients(value); }
};

// Least m >= 1 with x^m = 1.
u64 ff_mult_order(const FiniteFieldElement& x);
u64 ff_mult_order(const FiniteField& F, FiniteField::Elem x);

// Smallest r >= 1 with n | p^r - 1.
unsigned order_degree(u64 p, u64 n);

} // namespace dihedralis

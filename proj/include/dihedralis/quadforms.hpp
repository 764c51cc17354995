#pragma once

#include "dihedralis/arith.hpp"
#include "dihedralis/intmat.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace dihedralis {

struct QuadraticForm {
    Int a, b, c;
    Int discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadraticForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    std::string str() const;
};

bool is_reduced(const QuadraticForm& f);
// Reduced form equivalent to f. If `transform` is given it receives the
// SL2(Z) matrix T (row-major, 2x2) with f(T(x,y)) = reduced(x,y).
QuadraticForm reduce_form(const QuadraticForm& f, IntMatrix* transform = nullptr);
QuadraticForm compose_forms(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm principal_form(const Int& d);
QuadraticForm inverse_form(const QuadraticForm& f);
QuadraticForm power_form(const QuadraticForm& f, Int n);
// All reduced primitive forms of discriminant d, sorted.
std::vector<QuadraticForm> reduced_forms(const Int& d);

class FormClassGroup {
public:
    Int d;
    std::vector<QuadraticForm> forms;     // all reduced forms
    std::vector<QuadraticForm> gens;      // gens[i] generates the i-th invariant factor
    AbelianGroupStructure structure;

    Int order() const { return structure.order(); }
    // Exponents w.r.t. gens, each reduced modulo its invariant factor.
    const IntVec& dlog(const QuadraticForm& f) const;
    QuadraticForm element(const IntVec& exps) const;
    QuadraticForm identity() const { return principal_form(d); }
    QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) const {
        return compose_forms(f, g);
    }

private:
    friend FormClassGroup class_group(const Int& d);

    std::map<QuadraticForm, IntVec> log_;
};

FormClassGroup class_group(const Int& d);

// Image of f under Cl(L) -> Z/q when the q-part of Cl(L) is cyclic; the
// kernel is the unique subgroup of index q. Fails SubgroupNotUnique if the
// q-part is not cyclic and NotDividing if q does not divide h.
long quotient_class(const FormClassGroup& G, u64 q, const QuadraticForm& f);

enum class SplitType { Split, Ramified, Inert };

struct SplittingDatum {
    SplitType type;
    std::optional<QuadraticForm> cls;  // reduced class of a prime above l
    // Unreduced prime form (l, b, c) with b > 0 when possible.
    std::optional<QuadraticForm> prime_form;
};

SplittingDatum prime_frobenius_class(const Int& d, u64 l);

Int analytic_class_number(const Int& d);

} // namespace dihedralis

#pragma once

#include "dihedralis/ffield.hpp"
#include "dihedralis/matmodp.hpp"

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dihedralis {

// F[X]/(X^k) for 1 <= k <= 4. Elements are truncated coefficient vectors.
struct LocalRing {
    FieldPtr F;
    unsigned k = 1;

    static constexpr unsigned kMaxLength = 4;
    using Elem = std::array<FiniteField::Elem, kMaxLength>;

    u64 p() const { return F->p(); }
    Elem zero() const { return Elem{}; }
    Elem one() const { return constant(1); }
    Elem constant(FiniteField::Elem a) const {
        Elem r{};
        r[0] = a;
        return r;
    }
    Elem X() const;  // zero when k == 1
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return sub(zero(), a); }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(FiniteField::Elem c, const Elem& a) const;
    bool is_unit(const Elem& a) const { return a[0] != 0; }
    Elem inv(const Elem& a) const;  // fails NotAUnit
    Elem truncate(const Elem& a, unsigned k2) const;
    std::string str(const Elem& a) const;
    std::string tag() const;
};

using RElem = LocalRing::Elem;

// Row-major 2x2 matrix (a b; c d) over a LocalRing.
struct Mat2 {
    std::array<RElem, 4> e{};
    bool operator==(const Mat2& o) const { return e == o.e; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
};

struct Mat2Hash {
    std::size_t operator()(const Mat2& m) const;
};

namespace m2 {
Mat2 identity(const LocalRing& A);
Mat2 make(const LocalRing& A, const RElem& a, const RElem& b, const RElem& c, const RElem& d);
Mat2 constant(const LocalRing& A, FiniteField::Elem a, FiniteField::Elem b, FiniteField::Elem c,
              FiniteField::Elem d);
Mat2 mul(const LocalRing& A, const Mat2& x, const Mat2& y);
Mat2 add(const LocalRing& A, const Mat2& x, const Mat2& y);
Mat2 scale(const LocalRing& A, const RElem& s, const Mat2& x);
RElem det(const LocalRing& A, const Mat2& x);
RElem trace(const LocalRing& A, const Mat2& x);
Mat2 inv(const LocalRing& A, const Mat2& x);  // fails NotInvertible
Mat2 conj(const LocalRing& A, const Mat2& g, const Mat2& x);  // g x g^-1
Mat2 pow(const LocalRing& A, const Mat2& x, u64 e);
Mat2 truncate(const LocalRing& A, const Mat2& x, unsigned k2);
u64 order(const LocalRing& A, const Mat2& x, u64 cap = 100000000);
bool is_diagonal(const Mat2& x);
bool is_antidiagonal(const Mat2& x);
std::string str(const LocalRing& A, const Mat2& x);
} // namespace m2

// Residual dihedral data: H abelian generated by h_1..h_m, sigma outside H.
// chi_values[i] = (chi(h_i), chi^sigma(h_i)); the residual representation is
// rho(h_i) = diag(chi, chi^sigma), rho(sigma) = (0 1; chi(sigma^2) 0).
struct DihedralGroupData {
    FieldPtr F;
    std::vector<std::pair<FiniteField::Elem, FiniteField::Elem>> chi_values;
    FiniteField::Elem chi_sigma2 = 1;
    std::vector<std::string> h_labels;
    std::string sigma_label = "s";

    // q' = |H^ad| = order of chi/chi^sigma.
    u64 q_prime() const;
    // |C|: scalar matrices in the residual image.
    u64 scalar_kernel_order() const;
    // Degree over F_p of the field generated by the traces of I(chi/chi^sigma).
    unsigned f0_degree() const;
    // Fails InvalidInput when chi == chi^sigma or a value is not a unit.
    void validate() const;
};

// The standard family: H = <h> with chi(h) = zeta, chi^sigma(h) = zeta^-1,
// optionally a central generator z with chi(z) = chi^sigma(z) = z_value.
DihedralGroupData dihedral_data(FieldPtr F, FiniteField::Elem zeta, FiniteField::Elem chi_sigma2,
                                FiniteField::Elem z_value = 0);

// Generators with images in GL_2(A); in_h[i] says whether generator i maps into H.
struct LocalRingRep {
    LocalRing ring;
    std::vector<Mat2> gens;
    std::vector<bool> in_h;

    LocalRingRep truncated(unsigned k2) const;
    LocalRingRep residual() const { return truncated(1); }
    LocalRingRep conjugated(const Mat2& B) const;  // B^-1 g B
    LocalRingRep over(FieldPtr larger) const;     // extension of scalars (F must embed)
};

// Lift of chi to A: values on the h_i and on sigma^2.
struct CharacterLift {
    std::vector<std::pair<RElem, RElem>> values;
    RElem chi_sigma2{};
};

// Teichmuller (constant) lift when `lift` is null. Fails CharacterNotLiftable
// if a lifted value is not a unit or does not reduce to the residual one.
LocalRingRep induce_character(const DihedralGroupData& data, const LocalRing& A,
                              const CharacterLift* lift = nullptr);

// Image of a representation: Gamma = kernel of reduction, plus one lift per
// residual element.
struct ImageData {
    std::vector<Mat2> residual;    // elements of the residual image
    std::vector<Mat2> transversal;  // lifts, same order
    std::vector<bool> residual_in_h;
    std::vector<Mat2> gamma;        // all elements of Gamma
    std::vector<Mat2> gamma_gens;
    u64 order() const { return (u64)residual.size() * gamma.size(); }
};

inline constexpr u64 kImageBudget = 10000000;

// Fails ImageEnumerationBudgetExceeded and InconsistentParity (an element
// reached both as an H and a non-H word).
ImageData enumerate_image(const LocalRingRep& rep, u64 budget = kImageBudget);
std::vector<Mat2> enumerate_group(const LocalRing& A, const std::vector<Mat2>& gens,
                                  u64 budget = kImageBudget);

struct AdjointDecomposition {
    LocalRing ring;
    RElem chi_sigma2{};
    // to_n_i maps vec(a,b,c,d) to (a, d) + (b, c / chi(sigma^2)); from_n_i is its inverse.
    std::array<std::array<RElem, 4>, 4> to_n_i{}, from_n_i{};
    // ad^0 = C(eps) + I via (a, b, c, -a) -> a + (b, c / chi(sigma^2)).
    std::array<std::array<RElem, 3>, 3> ad0_to_eps_i{};
    bool trace_split = false;  // r -> diag(r/2, r/2) available (p odd)
    std::array<RElem, 4> apply(const Mat2& x) const;
};

// Requires H generators diagonal and the first non-H generator (0 1; c 0);
// fails NotDiagonalBasis otherwise. Equivariance is checked on every generator.
AdjointDecomposition adjoint_decompose(const LocalRingRep& rep);

struct ModuleLabel {
    enum Tag { C1, CEps, I, Chi1, Chi2, N };
    Tag tag = C1;
    unsigned multiplicity = 1;
    std::string str() const;
    bool operator==(const ModuleLabel& o) const { return tag == o.tag && multiplicity == o.multiplicity; }
};

// Gamma / Phi(Gamma) for a finite p-group of matrices, with coordinates.
class FrattiniQuotient {
public:
    FrattiniQuotient(const LocalRing& A, const std::vector<Mat2>& gens, u64 budget = kImageBudget);

    u64 p() const { return ring_.p(); }
    std::size_t dim() const { return basis_.size(); }
    u64 group_order() const { return elements_.size(); }
    u64 frattini_order() const { return frattini_.size(); }
    const std::vector<Mat2>& elements() const { return elements_; }
    const std::vector<Mat2>& basis() const { return basis_; }
    const std::vector<Mat2>& frattini() const { return frattini_; }
    VecP coordinates(const Mat2& g) const;  // fails NotInGroup
    // Row i = coordinates of alpha(basis_i).
    MatP action(const std::function<Mat2(const Mat2&)>& alpha) const;

private:
    LocalRing ring_;
    std::vector<Mat2> elements_, frattini_, basis_;
    std::unordered_map<Mat2, VecP, Mat2Hash> coords_;
};

// Change of basis (columns) making the section of H diagonal with
// Teichmuller entries. Fails NoSeparatingElement.
Mat2 teichmuller_basis(const LocalRingRep& rep);

struct FrattiniClassification {
    u64 gamma_order = 1, frattini_order = 1;
    std::size_t dim = 0;
    std::vector<ModuleLabel> labels;
    unsigned r = 0, s = 0;  // C(1)^r + I^s as F_p[H^ad]-module
    bool h_action_trivial = true;
};

FrattiniClassification classify_frattini_module(const LocalRingRep& rep, u64 budget = kImageBudget);

struct DihedralVerdict {
    bool dihedral = false;
    Mat2 basis;                                  // Teichmuller basis used
    std::vector<std::pair<RElem, RElem>> chi;    // (chi, chi^sigma) on the H generators
    Mat2 witness;                                // element of Gamma moved by H (when false)
    FrattiniClassification classification;
};

DihedralVerdict is_dihedral_deformation(const LocalRingRep& rep, u64 budget = kImageBudget);

enum class LiftVariant { Split, Nonsplit };

// Lift to F[X]/(X^2) whose kernel of reduction realizes Z.
// Fails UnrealizableModule and NonsplitUnavailable.
LocalRingRep build_infinitesimal_lift(const DihedralGroupData& data, ModuleLabel::Tag Z,
                                      LiftVariant variant = LiftVariant::Split);

// F_p-span of the conjugation orbit of x under the given matrices, as a basis.
std::vector<Mat2> orbit_span(const LocalRing& A, const std::vector<Mat2>& actors, const Mat2& x);

// S_4 inside SL_2(F_2[e]/(e^2)) over F_4.
struct S4Example {
    LocalRingRep rep;
    LocalRingRep residual;
    DihedralVerdict verdict;
    DihedralVerdict residual_verdict;
};
S4Example s4_example();

// Lift over F_p[e]/(e^3) whose Gamma is the elementary abelian group
// 1 + e diag(r, -r) + e^2 (a b; c r^2 - a), with residual image generated by
// diag(zeta, zeta^-1) and (0 1; 1 0). Needs p odd and q' | p - 1.
LocalRingRep epsilon_cube_example(u64 p = 7, u64 q_prime = 3);

} // namespace dihedralis

#pragma once

#include "dihedralis/ffield.hpp"
#include "dihedralis/numfield.hpp"
#include "dihedralis/quadforms.hpp"
#include "dihedralis/rayclass.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dihedralis {

// L = Q(sqrt d) imaginary, M/L the unramified Z/q-extension, chi = (fixed
// order-q character)^b with values in F = F_{p^r}. The fixed character sends
// the class with quotient coordinate k to zeta^k, zeta = F->root_of_unity(q).
struct TowerSpec {
    Int d;
    u64 q = 0, p = 0, b = 1;
    unsigned r = 1;
    std::shared_ptr<const FormClassGroup> cl;
    FieldPtr F;
    FiniteField::Elem zeta = 0;

    const FormClassGroup& class_group() const { return *cl; }
    Int hL() const { return cl->order(); }
};

// Fails NonFundamental, NotImaginary, NotOddPrime, NotPrime, PEqualsQ,
// NotDividing, SubgroupNotUnique, RamifiedAboveP, BadExponent, FieldTooLarge.
TowerSpec make_tower(const Int& d, u64 q, u64 p, u64 b = 1);

enum class PrimeVerdict { S1, S2, S3, None, ExcludedP };
std::string verdict_name(PrimeVerdict v);

struct PrimeEvidence {
    SplitType split = SplitType::Inert;
    long quotient_coordinate = 0;   // image of the prime above l in Z/q
    unsigned frobenius_order = 1;   // in Gal(M/L), of the prime above l
    u64 order_mod_p = 0;            // [Q_l(mu_p) : Q_l]
    unsigned local_degree = 1;      // [M_lambda : Q_l]
    unsigned residue_degree = 1;    // of M_lambda / Q_l
    bool mu_p_in_local_field = false;
    bool matches_cyclotomic = false;  // chi/chi^sigma(Frob) = l^{+-1} (split l only)
    std::string decomposition_group;  // "1", "C_q", "C_2", "V_4" as subgroup of D_q
};

struct PrimeClassification {
    u64 l = 0;
    PrimeVerdict verdict = PrimeVerdict::None;
    PrimeEvidence evidence;
};

// `conjugate` uses the conjugate prime above l; the verdict must not change.
PrimeClassification classify_prime(const TowerSpec& t, u64 l, bool conjugate = false);

enum class CaseKind { Case1, Case2, Indeterminate };
std::string case_name(CaseKind c);

struct ClassGroupSummary {
    std::vector<Int> invariants;
    Certification certification = Certification::HeuristicDoubling;
    Int order() const;
};

// p-part of the ray class group for S and its split under conjugation.
struct RaySummary {
    std::vector<unsigned> p_exponents;
    std::vector<unsigned> minus, plus;  // empty for p = 2
    Int p_order = 1;
};

// Optional persistent store consulted before computing Cl(M) or ray class data.
class ResultStore {
public:
    virtual ~ResultStore() = default;
    virtual std::optional<ClassGroupSummary> load(const std::string& key) = 0;
    virtual void store(const std::string& key, const ClassGroupSummary& s) = 0;
    virtual std::optional<RaySummary> load_ray(const Int&, const std::vector<u64>&, u64) { return std::nullopt; }
    virtual void store_ray(const Int&, const std::vector<u64>&, u64, const RaySummary&) {}
};

struct PipelineOptions {
    BoundPolicy policy = BoundPolicy::Auto;
    u64 seed = 1;
    ResultStore* store = nullptr;
};

RaySummary ray_summary(const Int& d, const std::vector<u64>& S, u64 p, const PipelineOptions& opt = {});

struct CaseDecision {
    CaseKind kind = CaseKind::Indeterminate;
    Int hL, hM;
    std::vector<Int> clL, clM;  // invariant factors
    Certification certification = Certification::HeuristicDoubling;
    bool elementary_precondition = false;
    int valuation_quotient = 0;  // v_p(h(M)) - v_p(h(L))
    std::string note;
};

// Defining data of M: the key names the polynomials the order is built from.
struct FieldM {
    std::string key;
    Order order;
};
FieldM construct_M(const TowerSpec& t);

// Fails with the engine error of the failing stage, its message prefixed by
// the stage name; a stalled relation search gives Indeterminate instead.
CaseDecision check_case(const TowerSpec& t, const PipelineOptions& opt = {});

enum class DecisionKind { Dihedral, NotDihedral, HypothesesNotMet };
std::string decision_name(DecisionKind k);

struct Decision {
    DecisionKind kind = DecisionKind::HypothesesNotMet;
    std::vector<u64> S;  // finite part; the infinite place is always included
    std::string reason;
    std::vector<std::string> violated;
    std::vector<PrimeClassification> offending;
    std::optional<CaseDecision> case_decision;
    std::optional<RingPresentation> ring, constant_det;
    std::optional<RaySummary> ray;
    Int gamma_order = 1;  // order of the p-part of Gal(L_S/L)
    u64 residual_order = 0;
    bool finite_image = false;
};

Decision decide_dihedral(const TowerSpec& t, const std::vector<u64>& S, const PipelineOptions& opt = {});

struct BostonReport {
    bool conclusive = false;
    bool finite_image = false;
    Int image_order;  // |Gamma| * |G|, when conclusive
    std::string message;
};
BostonReport boston_report(const Decision& d);

struct MinimalEntry {
    u64 l = 0;
    unsigned local_image_order = 0;  // |D_l| inside D_q
    bool locally_irreducible = false;
    bool vexing = false;
    bool in_S = false;
};

struct MinimalS {
    std::vector<u64> S;  // finite part
    std::vector<MinimalEntry> ramified;
};

// Fails EvenPrime for p = 2.
MinimalS minimal_S(const TowerSpec& t);

// The group-theoretic shadow of a Case 2 tower: the infinitesimal lift with
// kernel I(chi/chi^sigma) is not dihedral.
struct RepCrossCheck {
    bool lift_built = false;
    bool dihedral = true;
    std::string labels;
};
RepCrossCheck rep_cross_check(const TowerSpec& t);

// Tables of class-number scans.
struct TableSpec {
    std::string id;
    u64 q = 0, p = 0;
    u64 class_number = 0;  // exact h(L) filter; 0 for the prime-discriminant scan
    bool prime_disc = false;
    u64 bound = 0;
};

// Ids: h15-q3-p5, h15-q5-p3, h21-q3-p7, prime-disc(q,p). Fails UnknownTable.
TableSpec table_spec(const std::string& id, std::optional<u64> bound = std::nullopt);
// Discriminant of Q(sqrt(-l)).
Int prime_field_discriminant(u64 l);
// Discriminants passing the table filter, ordered by |d|. The prime scan runs
// over the fields Q(sqrt(-l)) with l <= bound and q | h.
std::vector<Int> table_discriminants(const TableSpec& spec);

struct TableRow {
    Int d;
    Int hL;
    std::optional<CaseDecision> decision;
    std::string error;  // engine error name and message, when the row failed
};
TableRow run_table_row(const TableSpec& spec, const Int& d, const PipelineOptions& opt = {});

} // namespace dihedralis

#include "dihedralis/cm.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/pipeline.hpp"
#include "dihedralis/reptheory.hpp"

#include <algorithm>

namespace dihedralis {

namespace {

template <class Fn>
auto at_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const EngineError& e) {
        std::string msg = e.what();
        std::string prefix = e.name() + ": ";
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        throw EngineError(e.name(), stage + ": " + msg);
    }
}

ZPoly quadratic_polynomial(const Int& d) {
    // minimal polynomial of (d + sqrt d)/2 up to translation
    if (mod_floor(d, Int(4)) == 0) return ZPoly({-d / 4, 0, 1});
    return ZPoly({(1 - d) / 4, -1, 1});
}

int valuation(Int n, u64 p) {
    if (n == 0) return 0;
    int v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace

std::string case_name(CaseKind c) {
    switch (c) {
    case CaseKind::Case1: return "Case1";
    case CaseKind::Case2: return "Case2";
    case CaseKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string decision_name(DecisionKind k) {
    switch (k) {
    case DecisionKind::Dihedral: return "Dihedral";
    case DecisionKind::NotDihedral: return "NotDihedral";
    case DecisionKind::HypothesesNotMet: return "HypothesesNotMet";
    }
    return "?";
}

Int ClassGroupSummary::order() const {
    Int h = 1;
    for (auto& f : invariants) h *= f;
    return h;
}

FieldM construct_M(const TowerSpec& t) {
    if (t.q == 3) {
        ZPoly cubic = at_stage("cubic field", [&] { return cubic_field_of_discriminant(t.d); });
        ZPoly quad = quadratic_polynomial(t.d);
        Order o = at_stage("compositum", [&] {
            return compositum_order(maximal_order(cubic), Order::from_polynomial(quad));
        });
        return {"compositum:" + cubic.str() + "|" + quad.str(), std::move(o)};
    }
    auto sp = at_stage("class field polynomial",
                       [&] { return subfield_defining_polynomial(t.class_group(), (unsigned)t.q); });
    if (sp.trace_rational) {
        // the degree-q subfield, then the same compositum as for q = 3
        ZPoly quad = quadratic_polynomial(t.d);
        Order o = at_stage("compositum", [&] {
            return compositum_order(maximal_order(sp.trace_poly), Order::from_polynomial(quad));
        });
        return {"compositum:" + sp.trace_poly.str() + "|" + quad.str(), std::move(o)};
    }
    Order o = at_stage("maximal order", [&] { return maximal_order(sp.poly); });
    return {"poly:" + sp.poly.str(), std::move(o)};
}

CaseDecision check_case(const TowerSpec& t, const PipelineOptions& opt) {
    CaseDecision c;
    c.hL = t.hL();
    c.clL = t.class_group().structure.invariant_factors;
    c.elementary_precondition = true;
    for (auto& f : c.clL)
        if (valuation(f, t.p) > 1) c.elementary_precondition = false;

    FieldM M = construct_M(t);
    std::optional<ClassGroupSummary> s;
    if (opt.store) s = opt.store->load(M.key);
    if (!s) {
        ClassGroupOptions co;
        co.policy = opt.policy;
        co.seed = opt.seed;
        try {
            auto r = at_stage("class group of M", [&] { return class_group_general(M.order, co); });
            s = ClassGroupSummary{r.structure.invariant_factors, r.certification};
        } catch (const EngineError& e) {
            if (e.name() != "RelationSearchStalled") throw;
            c.kind = CaseKind::Indeterminate;
            c.note = e.what();
            return c;
        }
        if (opt.store) opt.store->store(M.key, *s);
    }
    c.clM = s->invariants;
    c.hM = s->order();
    c.certification = s->certification;
    c.valuation_quotient = valuation(c.hM, t.p) - valuation(c.hL, t.p);
    if (!c.elementary_precondition) {
        c.kind = CaseKind::Indeterminate;
        c.note = "p-part of Cl(L) is not elementary abelian";
    } else {
        c.kind = c.valuation_quotient > 0 ? CaseKind::Case2 : CaseKind::Case1;
    }
    return c;
}

RaySummary ray_summary(const Int& d, const std::vector<u64>& S, u64 p, const PipelineOptions& opt) {
    if (opt.store)
        if (auto r = opt.store->load_ray(d, S, p)) return *r;
    auto ray = at_stage("ray class group", [&] { return ray_class_group_quadratic(d, S, p, opt.seed); });
    RaySummary out;
    out.p_exponents = ray.p_exponents;
    out.p_order = ray.p_order();
    if (p != 2) {
        auto split = sigma_eigenspace_split(ray);
        out.minus = split.minus;
        out.plus = split.plus;
    }
    if (opt.store) opt.store->store_ray(d, S, p, out);
    return out;
}

Decision decide_dihedral(const TowerSpec& t, const std::vector<u64>& S, const PipelineOptions& opt) {
    Decision D;
    D.S = S;
    std::sort(D.S.begin(), D.S.end());
    D.S.erase(std::unique(D.S.begin(), D.S.end()), D.S.end());
    D.residual_order = 2 * t.q;
    for (u64 l : D.S)
        if (!is_prime(l)) fail("NotPrime", "ramification set entry " + std::to_string(l));

    for (u64 l : D.S) {
        if (l == t.p) {
            D.violated.push_back("S ∩ S_p ≠ ∅ (p = " + std::to_string(l) + " in S)");
            continue;
        }
        auto pc = classify_prime(t, l);
        if (pc.verdict == PrimeVerdict::S1 || pc.verdict == PrimeVerdict::S2 ||
            pc.verdict == PrimeVerdict::S3) {
            D.violated.push_back("S ∩ S₀ ≠ ∅ (" + std::to_string(l) + " is " + verdict_name(pc.verdict) + ")");
            D.offending.push_back(pc);
        }
    }
    if (!D.violated.empty()) {
        D.kind = DecisionKind::HypothesesNotMet;
        D.reason = "ramification set violates the hypotheses";
        return D;
    }

    D.case_decision = check_case(t, opt);
    switch (D.case_decision->kind) {
    case CaseKind::Case2:
        D.kind = DecisionKind::NotDihedral;
        D.reason = "Case2-Hom-nonvanishing";
        return D;
    case CaseKind::Indeterminate:
        D.kind = DecisionKind::HypothesesNotMet;
        D.reason = "Hom vanishing not certified";
        D.violated.push_back("Hom vanishing undecided: " + D.case_decision->note);
        return D;
    case CaseKind::Case1: break;
    }

    D.ray = ray_summary(t.d, D.S, t.p, opt);
    D.gamma_order = D.ray->p_order;
    if (t.p != 2) {
        EigenSplit split;
        split.minus = D.ray->minus;
        split.plus = D.ray->plus;
        D.ring = universal_ring_presentation(t.p, t.r, split);
        D.constant_det = constant_det_presentation(t.p, t.r, split);
    } else {
        D.ring = universal_ring_presentation(t.p, t.r, D.ray->p_exponents);
    }
    D.kind = DecisionKind::Dihedral;
    D.reason = "Case1-Hom-vanishing";
    D.finite_image = true;
    return D;
}

BostonReport boston_report(const Decision& d) {
    BostonReport b;
    if (d.kind != DecisionKind::Dihedral) {
        b.message = "no conclusion from this method";
        return b;
    }
    b.conclusive = true;
    b.finite_image = d.finite_image;
    b.image_order = d.gamma_order * Int((unsigned long)d.residual_order);
    b.message = "finite image: the universal deformation is dihedral";
    return b;
}

RepCrossCheck rep_cross_check(const TowerSpec& t) {
    RepCrossCheck out;
    const FiniteField& F = *t.F;
    auto data = dihedral_data(t.F, F.pow(t.zeta, (i64)t.b), F.one());
    LocalRingRep lift = build_infinitesimal_lift(data, ModuleLabel::I);
    out.lift_built = true;
    auto v = is_dihedral_deformation(lift);
    out.dihedral = v.dihedral;
    for (auto& l : v.classification.labels) {
        if (!out.labels.empty()) out.labels += " + ";
        out.labels += l.str();
    }
    return out;
}

} // namespace dihedralis

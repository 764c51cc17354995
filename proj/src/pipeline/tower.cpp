#include "dihedralis/errors.hpp"
#include "dihedralis/pipeline.hpp"

#include <algorithm>

namespace dihedralis {

TowerSpec make_tower(const Int& d, u64 q, u64 p, u64 b) {
    if (d >= 0) fail("NotImaginary", "d=" + d.get_str() + " must be negative");
    if (!is_fundamental_discriminant(d)) fail("NonFundamental", "d=" + d.get_str());
    if (q < 3 || !is_prime(q)) fail("NotOddPrime", "q=" + std::to_string(q));
    if (!is_prime(p)) fail("NotPrime", "p=" + std::to_string(p));
    if (p == q) fail("PEqualsQ", "p and q must differ");
    if (mpz_fdiv_ui(d.get_mpz_t(), p) == 0)
        fail("RamifiedAboveP", "p=" + std::to_string(p) + " divides d=" + d.get_str());
    if (b % q == 0) fail("BadExponent", "b must be a unit mod q");

    TowerSpec t;
    t.d = d;
    t.q = q;
    t.p = p;
    t.b = b % q;
    t.cl = std::make_shared<FormClassGroup>(class_group(d));
    Int h = t.cl->order();
    if (h % q != 0) fail("NotDividing", std::to_string(q) + " does not divide h=" + h.get_str());
    quotient_class(*t.cl, q, t.cl->identity());  // the q-part must be cyclic
    t.r = order_degree(p, q);
    Int size = 1;
    for (unsigned i = 0; i < t.r; ++i) size *= p;
    if (size > FiniteField::kMaxSize) fail("FieldTooLarge", "F_" + size.get_str());
    t.F = FiniteField::make(p, t.r);
    t.zeta = t.F->root_of_unity(q);
    return t;
}

std::string verdict_name(PrimeVerdict v) {
    switch (v) {
    case PrimeVerdict::S1: return "S1";
    case PrimeVerdict::S2: return "S2";
    case PrimeVerdict::S3: return "S3";
    case PrimeVerdict::None: return "none";
    case PrimeVerdict::ExcludedP: return "excluded_p";
    }
    return "?";
}

PrimeClassification classify_prime(const TowerSpec& t, u64 l, bool conjugate) {
    if (!is_prime(l)) fail("NotPrime", std::to_string(l));
    PrimeClassification out;
    out.l = l;
    PrimeEvidence& ev = out.evidence;
    SplittingDatum sd = prime_frobenius_class(t.d, l);
    ev.split = sd.type;
    if (sd.cls) {
        QuadraticForm f = conjugate ? inverse_form(*sd.cls) : *sd.cls;
        ev.quotient_coordinate = quotient_class(t.class_group(), t.q, f);
    }
    ev.frobenius_order = ev.quotient_coordinate == 0 ? 1 : (unsigned)t.q;
    ev.order_mod_p = l == t.p ? 0 : (t.p == 2 ? 1 : multiplicative_order(l % t.p, t.p));

    // Decomposition group of a prime of M above l inside D_q = Gal(M/Q).
    switch (ev.split) {
    case SplitType::Split:
        ev.local_degree = ev.residue_degree = ev.frobenius_order;
        ev.decomposition_group = ev.frobenius_order == 1 ? "1" : "C_" + std::to_string(t.q);
        break;
    case SplitType::Inert:
        // the inert prime is principal, so it splits completely in M/L
        ev.local_degree = ev.residue_degree = 2 * ev.frobenius_order;
        ev.decomposition_group = "C_2";
        break;
    case SplitType::Ramified:
        // inertia of order 2; the ramified prime has order <= 2 in Cl(L)
        ev.local_degree = 2 * ev.frobenius_order;
        ev.residue_degree = ev.frobenius_order;
        ev.decomposition_group = ev.frobenius_order == 1 ? "C_2" : "D_" + std::to_string(t.q);
        break;
    }
    if (l == t.p) {
        out.verdict = PrimeVerdict::ExcludedP;
        return out;
    }
    // Q_l(mu_p) is unramified of degree ord_p(l)
    ev.mu_p_in_local_field = ev.residue_degree % ev.order_mod_p == 0;

    if (ev.split == SplitType::Split) {
        // chi/chi^sigma = chi^2 on Frob_lambda, against chi_p(Frob) = l mod p
        const FiniteField& F = *t.F;
        long e = (long)((2 * t.b * (u64)ev.quotient_coordinate) % t.q);
        FiniteField::Elem psi = F.pow(t.zeta, e);
        FiniteField::Elem cyc = F.from_int((i64)(l % t.p));
        ev.matches_cyclotomic = psi == cyc || psi == F.inv(cyc);
        if (ev.matches_cyclotomic) out.verdict = PrimeVerdict::S1;
        return out;
    }
    if (ev.mu_p_in_local_field && ev.local_degree == 2) {
        out.verdict = PrimeVerdict::S2;
        return out;
    }
    // S3 needs a local group Z/2 x Z/2, which D_q with q odd does not contain
    if (ev.split == SplitType::Ramified && ev.order_mod_p == 2 && ev.decomposition_group == "V_4")
        out.verdict = PrimeVerdict::S3;
    return out;
}

MinimalS minimal_S(const TowerSpec& t) {
    if (t.p == 2) fail("EvenPrime", "minimal deformation conditions need p odd");
    MinimalS out;
    Int n = abs(t.d);
    for (auto& [l, e] : factor_integer(n)) {
        (void)e;
        u64 ll = l.get_ui();
        MinimalEntry m;
        m.l = ll;
        SplittingDatum sd = prime_frobenius_class(t.d, ll);
        DIH_ASSERT(sd.type == SplitType::Ramified && sd.cls, "prime dividing d ramifies");
        long k = quotient_class(t.class_group(), t.q, *sd.cls);
        // D_l is generated by inertia (order 2) and Frobenius of the ramified prime
        unsigned frob = k == 0 ? 1 : (unsigned)t.q;
        m.local_image_order = 2 * frob;
        m.locally_irreducible = frob >= 3;
        // inertia of order 2 is never absolutely irreducible
        m.vexing = m.locally_irreducible && multiplicative_order(ll % t.p, t.p) == 2;
        m.in_S = m.locally_irreducible && !m.vexing;
        if (m.in_S) out.S.push_back(ll);
        out.ramified.push_back(m);
    }
    return out;
}

} // namespace dihedralis

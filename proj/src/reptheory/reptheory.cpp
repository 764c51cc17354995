#include "dihedralis/errors.hpp"
#include "internal.hpp"

#include <memory>
#include <numeric>
#include <unordered_set>

namespace dihedralis {

namespace {

using FE = FiniteField::Elem;

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

// Degree over F_p of F_p(x).
unsigned element_degree(const FiniteField& F, FE x) {
    unsigned e = 1;
    FE y = F.frobenius(x);
    while (y != x) {
        y = F.frobenius(y);
        ++e;
    }
    return e;
}

// F_p-degree of F_p(z + 1/z) for a generator z of the group of order q'.
unsigned f0_degree_of(const FiniteField& F, u64 qp) {
    FE z = F.root_of_unity(qp);
    return element_degree(F, F.add(z, F.inv(z)));
}

// Roots of T^2 - t T + n in F.
std::vector<FE> quadratic_roots(const FiniteField& F, FE t, FE n) {
    std::vector<FE> out;
    if (F.p() == 2) {
        for (u64 x = 0; x < F.size(); ++x) {
            FE v = (FE)x;
            if (F.add(F.sub(F.mul(v, v), F.mul(t, v)), n) == 0) out.push_back(v);
        }
        return out;
    }
    FE disc = F.sub(F.mul(t, t), F.mul(F.from_int(4), n));
    FE half = F.inv(F.from_int(2));
    if (disc == 0) return {F.mul(t, half)};
    u64 l = F.log(disc);
    if (l % 2) return out;
    FE s = F.exp(l / 2);
    out.push_back(F.mul(F.add(t, s), half));
    out.push_back(F.mul(F.sub(t, s), half));
    return out;
}

// Prime-to-p part of a matrix of finite order.
Mat2 prime_to_p_part(const LocalRing& A, const Mat2& g) {
    u64 p = A.p(), n = m2::order(A, g), pe = 1;
    while (n % p == 0) {
        n /= p;
        pe *= p;
    }
    if (n == 1) return m2::identity(A);
    // exponent m with m = 1 mod n and m = 0 mod p^e
    u64 m = pe * invmod(pe % n, n);
    return m2::pow(A, g, m);
}

MatP sub_identity(MatP m, u64 p, long sign = 1) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = (m[i][i] + p - (sign == 1 ? 1 : p - 1)) % p;
    return m;
}

MatP mat_mul(const MatP& a, const MatP& b, u64 p) {
    if (a.empty()) return {};
    MatP c(a.size(), VecP(b.empty() ? 0 : b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
        }
    return c;
}

// Rows a_1 | a_2 | ... side by side.
MatP hconcat(const std::vector<MatP>& ms, std::size_t rows) {
    MatP out(rows);
    for (auto& m : ms)
        for (std::size_t i = 0; i < rows; ++i) out[i].insert(out[i].end(), m[i].begin(), m[i].end());
    return out;
}

bool is_identity(const MatP& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != (i == j ? 1u : 0u)) return false;
    return true;
}

// Everything derived from a rep already in a Teichmuller basis.
struct Analysis {
    ImageData img;
    std::unique_ptr<FrattiniQuotient> V;
    std::vector<MatP> h_actions;  // one per H-type residual element
    std::vector<std::size_t> h_index;
    MatP sigma_action;
    std::size_t sigma_index = 0;
    FrattiniClassification cls;
};

Analysis analyse(const LocalRingRep& R, u64 budget) {
    const LocalRing& A = R.ring;
    u64 p = A.p();
    Analysis an;
    an.img = enumerate_image(R, budget);
    an.V = std::make_unique<FrattiniQuotient>(A, an.img.gamma_gens, budget);
    const FrattiniQuotient& V = *an.V;
    bool have_sigma = false;
    u64 qp = 1;
    for (std::size_t u = 0; u < an.img.residual.size(); ++u) {
        const Mat2& t = an.img.transversal[u];
        auto alpha = [&](const Mat2& x) { return m2::conj(A, t, x); };
        if (an.img.residual_in_h[u]) {
            an.h_index.push_back(u);
            an.h_actions.push_back(V.action(alpha));
            const Mat2& r = an.img.residual[u];
            if (m2::is_diagonal(r)) {
                FE psi = A.F->div(r.e[0][0], r.e[3][0]);
                qp = lcm_u64(qp, ff_mult_order(*A.F, psi));
            }
        } else if (!have_sigma) {
            have_sigma = true;
            an.sigma_index = u;
            an.sigma_action = V.action(alpha);
        }
    }
    if (!have_sigma) fail("NotDihedral", "no element outside H in the image");

    FrattiniClassification& c = an.cls;
    c.gamma_order = V.group_order();
    c.frattini_order = V.frattini_order();
    std::size_t d = c.dim = V.dim();
    if (d == 0) return an;

    std::vector<MatP> diffs;
    for (auto& m : an.h_actions) diffs.push_back(sub_identity(m, p));
    MatP W = matp::left_kernel(hconcat(diffs, d), p);  // H-fixed part, as rows
    std::size_t w = W.size();
    c.r = (unsigned)w;
    c.h_action_trivial = (w == d);

    MatP Sm = sub_identity(an.sigma_action, p);
    if (w > 0) {
        MatP WS = mat_mul(W, Sm, p);
        if (p == 2) {
            std::size_t blocks = matp::rank(WS, p);
            if (w > 2 * blocks) c.labels.push_back({ModuleLabel::C1, (unsigned)(w - 2 * blocks)});
            if (blocks) c.labels.push_back({ModuleLabel::N, (unsigned)blocks});
        } else {
            std::size_t plus = matp::left_kernel(WS, p).size();
            std::size_t minus = matp::left_kernel(mat_mul(W, sub_identity(an.sigma_action, p, -1), p), p).size();
            DIH_ASSERT(plus + minus == w, "sigma is semisimple on the fixed part");
            if (plus) c.labels.push_back({ModuleLabel::C1, (unsigned)plus});
            if (minus) c.labels.push_back({ModuleLabel::CEps, (unsigned)minus});
        }
    }
    std::size_t nontriv = d - w;
    if (nontriv) {
        if (qp > 2) {
            unsigned f0 = f0_degree_of(*A.F, qp);
            DIH_ASSERT(nontriv % (2 * f0) == 0, "nontrivial part is a sum of copies of I");
            c.s = (unsigned)(nontriv / (2 * f0));
            c.labels.push_back({ModuleLabel::I, c.s});
        } else {
            // H^ad acts by -1: split by sigma into two characters
            MatP U;
            for (auto& m : diffs)
                for (auto& row : m) U.push_back(row);
            SubspaceP Us(U, d, p);
            MatP Ub = Us.basis();
            std::size_t plus = matp::left_kernel(mat_mul(Ub, Sm, p), p).size();
            std::size_t minus = Ub.size() - plus;
            c.s = (unsigned)Ub.size();
            if (plus) c.labels.push_back({ModuleLabel::Chi1, (unsigned)plus});
            if (minus) c.labels.push_back({ModuleLabel::Chi2, (unsigned)minus});
        }
    }
    return an;
}

} // namespace

// ---------------------------------------------------------------------------

u64 DihedralGroupData::q_prime() const {
    u64 q = 1;
    for (auto [a, b] : chi_values) q = lcm_u64(q, ff_mult_order(*F, F->div(a, b)));
    return q;
}

u64 DihedralGroupData::scalar_kernel_order() const {
    LocalRing A{F, 1};
    auto rep = induce_character(*this, A);
    u64 n = 0;
    for (auto& g : enumerate_group(A, rep.gens))
        if (m2::is_diagonal(g) && g.e[0] == g.e[3]) ++n;
    return n;
}

unsigned DihedralGroupData::f0_degree() const { return f0_degree_of(*F, q_prime()); }

void DihedralGroupData::validate() const {
    if (!F) fail("InvalidInput", "no field");
    if (!chi_sigma2) fail("InvalidInput", "chi(sigma^2) must be a unit");
    bool separated = false;
    for (auto [a, b] : chi_values) {
        if (!a || !b) fail("InvalidInput", "character values must be units");
        separated = separated || a != b;
    }
    if (!separated) fail("InvalidInput", "chi equals its conjugate");
}

DihedralGroupData dihedral_data(FieldPtr F, FE zeta, FE chi_sigma2, FE z_value) {
    DihedralGroupData d;
    d.F = F;
    d.chi_values.push_back({zeta, F->inv(zeta)});
    d.h_labels.push_back("h");
    if (z_value) {
        d.chi_values.push_back({z_value, z_value});
        d.h_labels.push_back("z");
    }
    d.chi_sigma2 = chi_sigma2;
    d.validate();
    return d;
}

LocalRingRep LocalRingRep::truncated(unsigned k2) const {
    LocalRingRep r{LocalRing{ring.F, std::min(ring.k, k2)}, {}, in_h};
    for (auto& g : gens) r.gens.push_back(m2::truncate(ring, g, k2));
    return r;
}

LocalRingRep LocalRingRep::conjugated(const Mat2& B) const {
    LocalRingRep r{ring, {}, in_h};
    Mat2 Bi = m2::inv(ring, B);
    for (auto& g : gens) r.gens.push_back(m2::mul(ring, m2::mul(ring, Bi, g), B));
    return r;
}

LocalRingRep LocalRingRep::over(FieldPtr larger) const {
    if (larger->p() != ring.p()) fail("InvalidInput", "characteristic mismatch");
    if (ring.F->degree() != 1 && ring.F != larger)
        fail("InvalidInput", "only extension from the prime field is supported");
    // prime field elements have the same encoding in every extension
    LocalRingRep r = *this;
    r.ring.F = larger;
    return r;
}

LocalRingRep induce_character(const DihedralGroupData& data, const LocalRing& A, const CharacterLift* lift) {
    data.validate();
    if (A.F != data.F && A.F->size() != data.F->size())
        fail("InvalidInput", "ring residue field differs from the character field");
    std::vector<std::pair<RElem, RElem>> vals;
    RElem c;
    if (!lift) {
        for (auto [a, b] : data.chi_values) vals.push_back({A.constant(a), A.constant(b)});
        c = A.constant(data.chi_sigma2);
    } else {
        if (lift->values.size() != data.chi_values.size())
            fail("CharacterNotLiftable", "wrong number of values");
        for (std::size_t i = 0; i < lift->values.size(); ++i) {
            auto [a, b] = lift->values[i];
            if (a[0] != data.chi_values[i].first || b[0] != data.chi_values[i].second)
                fail("CharacterNotLiftable", "value does not reduce to the residual character");
        }
        if (lift->chi_sigma2[0] != data.chi_sigma2)
            fail("CharacterNotLiftable", "chi(sigma^2) does not reduce correctly");
        vals = lift->values;
        c = lift->chi_sigma2;
    }
    LocalRingRep rep{A, {}, {}};
    for (auto& [a, b] : vals) {
        rep.gens.push_back(m2::make(A, a, A.zero(), A.zero(), b));
        rep.in_h.push_back(true);
    }
    rep.gens.push_back(m2::make(A, A.zero(), A.one(), c, A.zero()));
    rep.in_h.push_back(false);
    return rep;
}

// ---------------------------------------------------------------------------

std::array<RElem, 4> AdjointDecomposition::apply(const Mat2& x) const {
    std::array<RElem, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] = ring.add(out[i], ring.mul(to_n_i[i][j], x.e[j]));
    return out;
}

AdjointDecomposition adjoint_decompose(const LocalRingRep& rep) {
    const LocalRing& A = rep.ring;
    AdjointDecomposition D;
    D.ring = A;
    bool found = false;
    for (std::size_t i = 0; i < rep.gens.size(); ++i) {
        const Mat2& g = rep.gens[i];
        if (rep.in_h[i] && !m2::is_diagonal(g)) fail("NotDiagonalBasis", "H generator is not diagonal");
        if (!rep.in_h[i]) {
            if (!m2::is_antidiagonal(g)) fail("NotDiagonalBasis", "sigma-type generator is not antidiagonal");
            if (!found) {
                if (g.e[1] != A.one()) fail("NotDiagonalBasis", "first sigma-type generator must be (0 1; c 0)");
                D.chi_sigma2 = g.e[2];
                found = true;
            }
        }
    }
    if (!found) fail("NotDiagonalBasis", "no generator outside H");
    RElem ci = A.inv(D.chi_sigma2);
    RElem one = A.one();
    // inputs (a, b, c, d); outputs (a, d, b, c/c0)
    D.to_n_i[0][0] = one;
    D.to_n_i[1][3] = one;
    D.to_n_i[2][1] = one;
    D.to_n_i[3][2] = ci;
    D.from_n_i[0][0] = one;
    D.from_n_i[3][1] = one;
    D.from_n_i[1][2] = one;
    D.from_n_i[2][3] = D.chi_sigma2;
    D.ad0_to_eps_i[0][0] = one;
    D.ad0_to_eps_i[1][1] = one;
    D.ad0_to_eps_i[2][2] = ci;
    D.trace_split = A.p() != 2;

    // bijectivity
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RElem s{};
            for (int k = 0; k < 4; ++k) s = A.add(s, A.mul(D.from_n_i[i][k], D.to_n_i[k][j]));
            DIH_ASSERT(s == (i == j ? one : A.zero()), "inverse map");
        }

    // equivariance on every generator
    for (std::size_t gi = 0; gi < rep.gens.size(); ++gi) {
        const Mat2& g = rep.gens[gi];
        for (int j = 0; j < 4; ++j) {
            Mat2 E;
            E.e[j] = one;
            auto lhs = D.apply(m2::conj(A, g, E));
            auto v = D.apply(E);
            std::array<RElem, 4> rhs;
            if (rep.in_h[gi]) {
                RElem psi = A.mul(g.e[0], A.inv(g.e[3]));
                rhs = {v[0], v[1], A.mul(psi, v[2]), A.mul(A.inv(psi), v[3])};
            } else {
                // g = rho(sigma h) with chi^sigma(h) = x and chi(h) = y / chi(sigma^2)
                RElem x = g.e[1], y = g.e[2];
                RElem psi = A.mul(y, A.inv(A.mul(D.chi_sigma2, x)));
                rhs = {v[1], v[0], A.mul(A.inv(psi), v[3]), A.mul(psi, v[2])};
            }
            if (lhs != rhs) fail("NotEquivariant", "adjoint map fails on generator " + std::to_string(gi));
        }
    }
    return D;
}

std::string ModuleLabel::str() const {
    static const char* names[] = {"C(1)", "C(eps)", "I(chi/chi^s)", "C(chi1)", "C(chi2)", "N"};
    std::string s = names[tag];
    if (multiplicity != 1) s += "^" + std::to_string(multiplicity);
    return s;
}

// ---------------------------------------------------------------------------

Mat2 teichmuller_basis(const LocalRingRep& rep) {
    const LocalRing& A = rep.ring;
    const FiniteField& F = *A.F;
    ImageData img = enumerate_image(rep);

    std::size_t sep = img.residual.size();
    FE a = 0, b = 0;
    for (std::size_t u = 0; u < img.residual.size() && sep == img.residual.size(); ++u) {
        if (!img.residual_in_h[u]) continue;
        const Mat2& r = img.residual[u];
        FE t = F.add(r.e[0][0], r.e[3][0]);
        FE n = F.sub(F.mul(r.e[0][0], r.e[3][0]), F.mul(r.e[1][0], r.e[2][0]));
        auto roots = quadratic_roots(F, t, n);
        if (roots.size() != 2) continue;
        sep = u;
        a = roots[0];
        b = roots[1];
        if (m2::is_diagonal(r)) {
            a = r.e[0][0];
            b = r.e[3][0];
        }
    }
    if (sep == img.residual.size()) fail("NoSeparatingElement", "no element of H with distinct eigenvalues in F");

    Mat2 s = prime_to_p_part(A, img.transversal[sep]);
    RElem ah = A.constant(a), bh = A.constant(b);
    RElem dinv = A.inv(A.sub(ah, bh));
    Mat2 I = m2::identity(A);
    // (s - other) / (lambda - other) projects onto the lambda-eigenspace
    auto projector = [&](const RElem& other, const RElem& denom) {
        return m2::scale(A, denom, m2::add(A, s, m2::scale(A, A.neg(other), I)));
    };
    Mat2 Pa = projector(bh, dinv);
    Mat2 Pb = projector(ah, A.neg(dinv));
    auto column = [&](const Mat2& P, int prefer) {
        for (int c : {prefer, 1 - prefer}) {
            if (A.is_unit(P.e[c]) || A.is_unit(P.e[2 + c])) return std::array<RElem, 2>{P.e[c], P.e[2 + c]};
        }
        fail("InternalError", "projector reduces to zero");
    };
    auto v1 = column(Pa, 0), v2 = column(Pb, 1);
    Mat2 B = m2::make(A, v1[0], v2[0], v1[1], v2[1]);
    if (!A.is_unit(m2::det(A, B))) fail("InternalError", "eigenvectors are dependent");

    // the constant diagonal matrices over H must form the section
    Mat2 Bi = m2::inv(A, B);
    std::unordered_set<Mat2, Mat2Hash> gamma(img.gamma.begin(), img.gamma.end());
    for (std::size_t u = 0; u < img.residual.size(); ++u) {
        if (!img.residual_in_h[u]) continue;
        Mat2 c = m2::mul(A, m2::mul(A, Bi, img.transversal[u]), B);
        Mat2 r = m2::truncate(A, c, 1);
        if (!m2::is_diagonal(r)) fail("InternalError", "H is not diagonal in the Teichmuller basis");
        Mat2 D = m2::constant(A, r.e[0][0], 0, 0, r.e[3][0]);
        Mat2 back = m2::mul(A, m2::mul(A, B, D), Bi);
        if (!gamma.count(m2::mul(A, m2::inv(A, img.transversal[u]), back)))
            fail("InternalError", "Teichmuller diagonal is not in the image");
    }
    return B;
}

FrattiniClassification classify_frattini_module(const LocalRingRep& rep, u64 budget) {
    Mat2 B = teichmuller_basis(rep);
    return analyse(rep.conjugated(B), budget).cls;
}

DihedralVerdict is_dihedral_deformation(const LocalRingRep& rep, u64 budget) {
    const LocalRing& A = rep.ring;
    DihedralVerdict out;
    out.basis = teichmuller_basis(rep);
    LocalRingRep R = rep.conjugated(out.basis);
    Analysis an = analyse(R, budget);
    out.classification = an.cls;
    out.dihedral = true;
    for (std::size_t i = 0; i < an.h_actions.size() && out.dihedral; ++i) {
        const MatP& m = an.h_actions[i];
        if (is_identity(m)) continue;
        out.dihedral = false;
        for (std::size_t j = 0; j < m.size(); ++j) {
            VecP e(m.size(), 0);
            e[j] = 1;
            if (m[j] != e) {
                out.witness = an.V->basis()[j];
                break;
            }
        }
    }
    if (out.dihedral != an.cls.h_action_trivial)
        fail("InternalError", "fixed space and action disagree");
    if (!out.dihedral) return out;

    // recover chi and compare with the induced representation on every element
    for (std::size_t i = 0; i < R.gens.size(); ++i)
        if (R.in_h[i]) out.chi.push_back({R.gens[i].e[0], R.gens[i].e[3]});
    const Mat2& s = an.img.transversal[an.sigma_index];
    Mat2 si = m2::inv(A, s);
    for (std::size_t u = 0; u < an.img.residual.size(); ++u) {
        for (const Mat2& gm : an.img.gamma) {
            Mat2 g = m2::mul(A, gm, an.img.transversal[u]);
            RElem tr = m2::trace(A, g), ind;
            if (an.img.residual_in_h[u]) {
                if (!m2::is_diagonal(g)) fail("InternalError", "dihedral image is not diagonal on H");
                RElem chi = g.e[0];
                RElem chis = m2::mul(A, m2::mul(A, s, g), si).e[0];
                ind = A.add(chi, chis);
            } else {
                if (!m2::is_antidiagonal(g)) fail("InternalError", "dihedral image is not antidiagonal off H");
                ind = A.zero();
            }
            if (tr != ind) fail("InternalError", "trace differs from the induced representation");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

LocalRingRep build_infinitesimal_lift(const DihedralGroupData& data, ModuleLabel::Tag Z, LiftVariant variant) {
    LocalRing A{data.F, 2};
    u64 p = A.p(), qp = data.q_prime();
    LocalRingRep base = induce_character(data, A);
    const FiniteField& F = *data.F;
    FE c = data.chi_sigma2;

    switch (Z) {
    case ModuleLabel::N:
        if (p != 2) fail("UnrealizableModule", "N occurs only for p = 2");
        break;
    case ModuleLabel::CEps:
        if (p == 2) fail("UnrealizableModule", "C(eps) = C(1) in characteristic 2");
        break;
    case ModuleLabel::I:
        if (qp <= 2) fail("UnrealizableModule", "I(chi/chi^s) splits when chi/chi^s has order <= 2");
        break;
    case ModuleLabel::Chi1:
    case ModuleLabel::Chi2:
        if (qp > 2) fail("UnrealizableModule", "C(chi1), C(chi2) need chi/chi^s of order <= 2");
        break;
    default:
        break;
    }
    if (variant == LiftVariant::Nonsplit && !(p == 2 && Z == ModuleLabel::C1))
        fail("NonsplitUnavailable", "every such extension is split");

    RElem X = A.X();
    auto one_plus_x = [&](const Mat2& z) { return m2::add(A, m2::identity(A), m2::scale(A, X, z)); };

    if (variant == LiftVariant::Nonsplit) {
        LocalRingRep rep{A, {}, {}};
        for (std::size_t i = 0; i < base.gens.size(); ++i)
            if (base.in_h[i]) {
                rep.gens.push_back(base.gens[i]);
                rep.in_h.push_back(true);
            }
        rep.gens.push_back(one_plus_x(m2::identity(A)));
        rep.in_h.push_back(true);
        rep.gens.push_back(m2::make(A, A.zero(), A.add(A.one(), X), A.constant(c), A.zero()));
        rep.in_h.push_back(false);
        return rep;
    }

    Mat2 z;
    switch (Z) {
    case ModuleLabel::C1: z = m2::identity(A); break;
    case ModuleLabel::CEps: z = m2::constant(A, 1, 0, 0, F.neg(1)); break;
    case ModuleLabel::N: z = m2::constant(A, 1, 0, 0, 0); break;
    case ModuleLabel::I:
    case ModuleLabel::Chi1: z = m2::constant(A, 0, 1, c, 0); break;
    case ModuleLabel::Chi2: z = m2::constant(A, 0, 1, F.neg(c), 0); break;
    }
    LocalRingRep rep = base;
    for (const Mat2& y : orbit_span(A, base.gens, z)) {
        rep.gens.push_back(one_plus_x(y));
        rep.in_h.push_back(true);
    }
    return rep;
}

S4Example s4_example() {
    auto F2 = FiniteField::make(2, 1);
    auto F4 = FiniteField::make(2, 2);
    LocalRing A{F2, 2};
    // SL_2(F_2) = S_3: an element of order 3 and a transposition
    Mat2 a = m2::constant(A, 1, 1, 1, 0);
    Mat2 s = m2::constant(A, 0, 1, 1, 0);
    // V_4 = 1 + e * (span of the three involutions)
    Mat2 v = m2::add(A, m2::identity(A), m2::scale(A, A.X(), s));
    LocalRingRep rep{A, {a, s, v}, {true, false, true}};
    S4Example ex;
    ex.rep = rep.over(F4);
    ex.residual = ex.rep.residual();
    ex.verdict = is_dihedral_deformation(ex.rep);
    ex.residual_verdict = is_dihedral_deformation(ex.residual);
    return ex;
}

LocalRingRep epsilon_cube_example(u64 p, u64 q_prime) {
    if (p == 2) fail("InvalidInput", "needs p odd");
    u64 zeta_order = q_prime % 2 ? q_prime : 2 * q_prime;
    if ((p - 1) % zeta_order) fail("InvalidInput", "q' must divide p - 1");
    auto F = FiniteField::make(p, 1);
    LocalRing A{F, 3};
    FE z = F->root_of_unity(zeta_order);
    RElem e = A.X(), e2 = A.mul(e, e);
    Mat2 I = m2::identity(A);
    auto lift = [&](const RElem& coeff, const Mat2& m) { return m2::scale(A, coeff, m); };
    Mat2 g1 = m2::add(A, I, m2::add(A, lift(e, m2::constant(A, 1, 0, 0, F->neg(1))),
                                    lift(e2, m2::constant(A, 0, 0, 0, 1))));
    Mat2 g2 = m2::add(A, I, lift(e2, m2::constant(A, 1, 0, 0, F->neg(1))));
    Mat2 g3 = m2::add(A, I, lift(e2, m2::constant(A, 0, 1, 0, 0)));
    Mat2 g4 = m2::add(A, I, lift(e2, m2::constant(A, 0, 0, 1, 0)));
    LocalRingRep rep{A,
                     {m2::constant(A, z, 0, 0, F->inv(z)), m2::constant(A, 0, 1, 1, 0), g1, g2, g3, g4},
                     {true, false, true, true, true, true}};
    return rep;
}

} // namespace dihedralis

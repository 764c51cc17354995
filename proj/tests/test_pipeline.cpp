#include "doctest.h"

#include "dihedralis/arith.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"
#include "dihedralis/pipeline.hpp"
#include "dihedralis/quadforms.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace dihedralis;

namespace {

// Shared across test cases so each sextic class group is computed once.
class MemoryStore : public ResultStore {
public:
    std::optional<ClassGroupSummary> load(const std::string& key) override {
        auto it = m_.find(key);
        if (it == m_.end()) return std::nullopt;
        ++hits;
        return it->second;
    }
    void store(const std::string& key, const ClassGroupSummary& s) override { m_[key] = s; }
    int hits = 0;

private:
    std::map<std::string, ClassGroupSummary> m_;
};

PipelineOptions opts() {
    static MemoryStore store;
    PipelineOptions o;
    o.store = &store;
    return o;
}

std::string error_name(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const EngineError& e) {
        return e.name();
    }
    return "";
}

int vp(Int n, u64 p) {
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Residue degrees of l in the cubic field of discriminant d, with ramification.
std::multiset<std::pair<unsigned, unsigned>> cubic_pattern(const Order& k3, u64 l) {
    std::multiset<std::pair<unsigned, unsigned>> s;
    for (auto& P : factor_rational_prime(k3, l)) s.insert({P.e, P.f});
    return s;
}

const std::vector<long> kSomeH15 = {-239, -439, -751};

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("tower validation") {
    auto t = make_tower(-4219, 3, 5);
    CHECK(t.hL() == 15);
    CHECK(t.r == 2);
    CHECK(t.F->size() == 25);
    CHECK(ff_mult_order(*t.F, t.zeta) == 3);
    CHECK(make_tower(-8059, 3, 7).r == 1);
    CHECK(make_tower(-4219, 3, 5, 2).b == 2);

    CHECK(error_name([] { make_tower(23, 3, 5); }) == "NotImaginary");
    CHECK(error_name([] { make_tower(-12, 3, 5); }) == "NonFundamental");
    CHECK(error_name([] { make_tower(-4219, 2, 5); }) == "NotOddPrime");
    CHECK(error_name([] { make_tower(-4219, 3, 3); }) == "PEqualsQ");
    CHECK(error_name([] { make_tower(-4219, 3, 4); }) == "NotPrime");
    CHECK(error_name([] { make_tower(-23, 3, 23); }) == "RamifiedAboveP");
    CHECK(error_name([] { make_tower(-4219, 3, 5, 3); }) == "BadExponent");
    CHECK(error_name([] { make_tower(-4, 3, 5); }) == "NotDividing");
    CHECK(error_name([] { make_tower(-4027, 3, 5); }) == "SubgroupNotUnique");  // Z/3 x Z/3
    // a cyclic 3-part still determines M
    CHECK(make_tower(-1999, 3, 5).hL() == 27);
}

TEST_CASE("prime classification against the cubic field") {
    // Split types from the cubic subfield: l split in L splits completely in
    // K3 iff its class is in the index-3 subgroup, and is inert in K3 otherwise.
    for (auto [d, p] : std::vector<std::pair<long, u64>>{{-4219, 5}, {-8059, 7}, {-4219, 2}, {-239, 11}}) {
        CAPTURE(d);
        CAPTURE(p);
        auto t = make_tower(d, 3, p);
        Order k3 = maximal_order(cubic_field_of_discriminant(d));
        for (u64 l : primes_up_to(500)) {
            CAPTURE(l);
            auto c = classify_prime(t, l);
            if (l == p) {
                CHECK(c.verdict == PrimeVerdict::ExcludedP);
                continue;
            }
            auto pat = cubic_pattern(k3, l);
            int kr = kronecker_symbol(Int(d), Int((unsigned long)l));
            u64 ordp = p == 2 ? 1 : multiplicative_order(l % p, p);
            bool expect_s1 = false, expect_s2 = false;
            if (kr == 1) {
                bool complete = pat.size() == 3;
                CHECK((complete || pat == std::multiset<std::pair<unsigned, unsigned>>{{1, 3}}));
                CHECK(c.evidence.frobenius_order == (complete ? 1u : 3u));
                // chi/chi^sigma(Frob) is 1 or a primitive cube root; l^{+-1} mod p must match
                expect_s1 = complete ? ordp == 1 : ordp == 3;
            } else if (kr == -1) {
                CHECK(pat == std::multiset<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}});
                expect_s2 = 2 % ordp == 0;
            } else {
                CHECK(pat == std::multiset<std::pair<unsigned, unsigned>>{{1, 1}, {2, 1}});
                expect_s2 = ordp == 1;
            }
            CHECK((c.verdict == PrimeVerdict::S1) == expect_s1);
            CHECK((c.verdict == PrimeVerdict::S2) == expect_s2);
            CHECK(c.verdict != PrimeVerdict::S3);
        }
    }
}

TEST_CASE("smallest S1 and S2 primes for -4219") {
    auto t = make_tower(-4219, 3, 5);
    u64 s1 = 0, s2 = 0;
    for (u64 l : primes_up_to(499)) {
        auto v = classify_prime(t, l).verdict;
        if (v == PrimeVerdict::S1 && !s1) s1 = l;
        if (v == PrimeVerdict::S2 && !s2) s2 = l;
    }
    CHECK(s1 == 211);
    CHECK(s2 == 19);
    auto e = classify_prime(t, 211).evidence;
    CHECK(e.split == SplitType::Split);
    CHECK(e.frobenius_order == 1);
    CHECK(e.order_mod_p == 1);
    CHECK(e.decomposition_group == "1");
    auto e2 = classify_prime(t, 19).evidence;
    CHECK(e2.split == SplitType::Inert);
    CHECK(e2.local_degree == 2);
    CHECK(e2.mu_p_in_local_field);
}

TEST_CASE("classification ignores the choice of prime above l") {
    for (auto [d, p] : std::vector<std::pair<long, u64>>{{-4219, 5}, {-8059, 7}, {-23, 2}, {-23, 7}}) {
        auto t = make_tower(d, 3, p);
        for (u64 l : primes_up_to(2000)) {
            auto a = classify_prime(t, l), b = classify_prime(t, l, true);
            CHECK(a.verdict == b.verdict);
            CHECK(a.evidence.frobenius_order == b.evidence.frobenius_order);
        }
    }
}

TEST_CASE("S3 never occurs for odd q") {
    for (long d : {-23L, -31L, -4219L, -8059L, -1999L}) {
        for (u64 p : {2ull, 5ull, 7ull, 11ull, 13ull}) {
            if (d % (long)p == 0) continue;
            auto t = make_tower(d, 3, p);
            for (u64 l : primes_up_to(3000)) CHECK(classify_prime(t, l).verdict != PrimeVerdict::S3);
        }
    }
}

TEST_CASE("the exponent b") {
    // q = 3: {l, l^-1} holds both primitive cube roots, so b never matters
    for (auto [d, p] : std::vector<std::pair<long, u64>>{{-4219, 5}, {-8059, 7}, {-23, 13}}) {
        auto t1 = make_tower(d, 3, p, 1), t2 = make_tower(d, 3, p, 2);
        for (u64 l : primes_up_to(1500)) CHECK(classify_prime(t1, l).verdict == classify_prime(t2, l).verdict);
    }
    // q = 5 with 5 | p - 1: matching chi_p picks out two of the four
    // primitive fifth roots, so S1 does depend on which character is induced
    auto a = make_tower(-47, 5, 11, 1), b = make_tower(-47, 5, 11, 2);
    int differ = 0;
    for (u64 l : primes_up_to(3000)) {
        auto va = classify_prime(a, l), vb = classify_prime(b, l);
        if (va.verdict != vb.verdict) {
            ++differ;
            CHECK(va.evidence.split == SplitType::Split);
            CHECK(va.evidence.order_mod_p == 5);
        }
    }
    CHECK(differ > 0);
    // the class-group criterion and the decision do not see b
    auto c1 = check_case(make_tower(-4219, 3, 5, 1), opts());
    auto c2 = check_case(make_tower(-4219, 3, 5, 2), opts());
    CHECK(c1.kind == c2.kind);
    CHECK(c1.hM == c2.hM);
}

TEST_CASE("case decisions") {
    auto c = check_case(make_tower(-4219, 3, 5), opts());
    CHECK(c.kind == CaseKind::Case2);
    CHECK(c.hL == 15);
    CHECK(c.hM == 125);
    CHECK(c.elementary_precondition);
    CHECK(c.valuation_quotient == 2);

    auto c2 = check_case(make_tower(-19867, 3, 5), opts());
    CHECK(c2.kind == CaseKind::Case2);
    CHECK(c2.hM == 500);

    auto c3 = check_case(make_tower(-8059, 3, 7), opts());
    CHECK(c3.kind == CaseKind::Case2);

    for (long d : kSomeH15) {
        CAPTURE(d);
        CHECK(check_case(make_tower(d, 3, 5), opts()).kind == CaseKind::Case1);
    }

    // Z/75: the 5-part of Cl(L) is not elementary
    auto ind = check_case(make_tower(-4703, 3, 5), opts());
    CHECK(ind.kind == CaseKind::Indeterminate);
    CHECK(!ind.elementary_precondition);
}

TEST_CASE("case decisions against the cubic class number") {
    // h(M) = h(L) h(K3)^2 / 3 up to a power of 3 (Brauer relations), so for p > 3
    // the p-adic valuation of h(M)/h(L) is 2 v_p(h(K3)).
    for (auto [d, p] : std::vector<std::pair<long, u64>>{
             {-4219, 5}, {-19867, 5}, {-8059, 7}, {-239, 5}, {-439, 5}, {-23, 5}, {-1999, 5}, {-2819, 5}}) {
        CAPTURE(d);
        auto t = make_tower(d, 3, p);
        auto c = check_case(t, opts());
        Int hk3 = class_group_general(maximal_order(cubic_field_of_discriminant(d))).h;
        CHECK(c.valuation_quotient == 2 * vp(hk3, p));
        CHECK((c.kind == CaseKind::Case2) == (vp(hk3, p) > 0));
    }
}

TEST_CASE("decisions and presentations") {
    auto t = make_tower(-4219, 3, 5);
    auto D = decide_dihedral(t, {}, opts());
    CHECK(D.kind == DecisionKind::NotDihedral);
    CHECK(D.reason == "Case2-Hom-nonvanishing");
    CHECK(!boston_report(D).conclusive);
    CHECK(boston_report(D).message == "no conclusion from this method");

    for (long d : kSomeH15) {
        CAPTURE(d);
        auto tc = make_tower(d, 3, 5);
        auto E = decide_dihedral(tc, {}, opts());
        REQUIRE(E.kind == DecisionKind::Dihedral);
        CHECK(E.ring->str() == "W(F_25)[X1]/((1+X1)^5-1)");
        CHECK(E.constant_det->str() == E.ring->str());
        CHECK(E.ray->plus.empty());
        CHECK(E.ray->minus == std::vector<unsigned>{1});
        // variables = p-rank of Cl(L)
        std::size_t rank = 0;
        for (auto& f : tc.class_group().structure.invariant_factors)
            if (f % 5 == 0) ++rank;
        CHECK(E.ring->variables() == rank);
        auto B = boston_report(E);
        CHECK(B.conclusive);
        CHECK(B.finite_image);
        CHECK(B.image_order == 30);
    }

    // S meeting S0 or S_p
    auto tc = make_tower(kSomeH15[0], 3, 5);
    u64 s1 = 0, none = 0;
    for (u64 l : primes_up_to(2000)) {
        auto v = classify_prime(tc, l).verdict;
        if (v == PrimeVerdict::S1 && !s1) s1 = l;
        if (v == PrimeVerdict::None && !none && l > 5) none = l;
    }
    REQUIRE(s1);
    REQUIRE(none);
    auto H = decide_dihedral(tc, {s1}, opts());
    CHECK(H.kind == DecisionKind::HypothesesNotMet);
    REQUIRE(H.violated.size() == 1);
    CHECK(H.violated[0].find("S ∩ S₀ ≠ ∅") == 0);
    CHECK(H.offending.at(0).l == s1);
    CHECK(!boston_report(H).conclusive);

    auto P = decide_dihedral(tc, {5}, opts());
    CHECK(P.kind == DecisionKind::HypothesesNotMet);
    CHECK(P.violated.at(0).find("S ∩ S_p ≠ ∅") == 0);

    // a harmless prime keeps the verdict; the presentation now sees the ray class group
    auto N = decide_dihedral(tc, {none}, opts());
    CHECK(N.kind == DecisionKind::Dihedral);
    auto ray = ray_class_group_quadratic(tc.d, {none}, 5);
    CHECK(N.ring->variables() == ray.p_exponents.size());
    CHECK(N.gamma_order == ray.p_order());

    CHECK(error_name([&] { decide_dihedral(tc, {9}); }) == "NotPrime");
}

TEST_CASE("case and decision agree") {
    for (long d : {-4219L, -19867L, -239L, -439L, -751L}) {
        auto t = make_tower(d, 3, 5);
        bool case1 = check_case(t, opts()).kind == CaseKind::Case1;
        bool dihedral = decide_dihedral(t, {}, opts()).kind == DecisionKind::Dihedral;
        CHECK(case1 == dihedral);
    }
    auto ind = decide_dihedral(make_tower(-4703, 3, 5), {}, opts());
    CHECK(ind.kind == DecisionKind::HypothesesNotMet);
}

TEST_CASE("p = 2 towers") {
    auto t = make_tower(-23, 3, 2);
    CHECK(t.r == 2);
    auto D = decide_dihedral(t, {}, opts());
    REQUIRE(D.kind == DecisionKind::Dihedral);
    CHECK(D.ring->str() == "W(F_4)");
    CHECK(!D.constant_det);
    CHECK(error_name([&] { minimal_S(t); }) == "EvenPrime");
}

TEST_CASE("minimal ramification sets") {
    // ramified primes split completely in M/L, so every local image has order 2
    for (long d : {-23L, -4219L, -8059L, -1999L, -2692L, -4772L}) {
        CAPTURE(d);
        auto t = make_tower(d, 3, 5);
        auto m = minimal_S(t);
        CHECK(m.S.empty());
        Order k3 = maximal_order(cubic_field_of_discriminant(d));
        std::set<u64> seen;
        for (auto& e : m.ramified) {
            CHECK(e.local_image_order == 2);
            CHECK(!e.locally_irreducible);
            CHECK(!e.vexing);
            // an unramified and a ramified prime of degree one in the cubic field
            CHECK(cubic_pattern(k3, e.l) == std::multiset<std::pair<unsigned, unsigned>>{{1, 1}, {2, 1}});
            seen.insert(e.l);
        }
        for (auto& [l, k] : factor_integer(abs(Int(d)))) CHECK(seen.count(l.get_ui()));
    }
}

TEST_CASE("Case 2 towers carry a non-dihedral infinitesimal lift") {
    for (auto [d, p] : std::vector<std::pair<long, u64>>{{-4219, 5}, {-19867, 5}, {-8059, 7}}) {
        auto t = make_tower(d, 3, p);
        REQUIRE(check_case(t, opts()).kind == CaseKind::Case2);
        auto x = rep_cross_check(t);
        CHECK(x.lift_built);
        CHECK(!x.dihedral);
        CHECK(x.labels.find("I") != std::string::npos);
    }
}

TEST_CASE("table definitions") {
    auto s = table_spec("h15-q3-p5");
    CHECK(s.q == 3);
    CHECK(s.p == 5);
    CHECK(s.class_number == 15);
    CHECK(s.bound == 34483);
    CHECK(table_spec("h15-q3-p5", 20000).bound == 20000);
    auto pd = table_spec("prime-disc(3,5)", 3100);
    CHECK(pd.prime_disc);
    CHECK(pd.bound == 3100);
    CHECK(error_name([] { table_spec("h16-q3-p5"); }) == "UnknownTable");
    CHECK(error_name([] { table_spec("prime-disc(3,3)"); }) == "UnknownTable");
    CHECK(error_name([] { table_spec("prime-disc(3,17)"); }) == "MissingBound");

    CHECK(prime_field_discriminant(2) == -8);
    CHECK(prime_field_discriminant(673) == -2692);
    CHECK(prime_field_discriminant(2819) == -2819);

    // field counts from the analytic class number formula
    auto h15 = table_discriminants(s);
    std::size_t count = 0;
    for (long n = 3; n <= 34483; ++n)
        if (is_fundamental_discriminant(Int(-n)) && analytic_class_number(Int(-n)) == 15) ++count;
    CHECK(h15.size() == count);
    CHECK(count == 68);
    CHECK(std::is_sorted(h15.begin(), h15.end(), [](const Int& a, const Int& b) { return a > b; }));

    CHECK(table_discriminants(table_spec("h15-q3-p5", 2)).empty());
    auto t = run_table_row(table_spec("prime-disc(3,5)", 3100), Int(-4027));
    CHECK(t.error.find("SubgroupNotUnique") == 0);
}

TEST_CASE("stage names on errors") {
    // q = 5 needs the degree-5 subfield; failures carry the stage
    try {
        construct_M(make_tower(-47, 5, 3));
    } catch (const EngineError& e) {
        std::string w = e.what();
        CHECK((w.find("compositum") != std::string::npos || w.find("maximal order") != std::string::npos ||
               w.find("class field polynomial") != std::string::npos));
    }
}

} // TEST_SUITE

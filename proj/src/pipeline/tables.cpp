#include "dihedralis/errors.hpp"
#include "dihedralis/pipeline.hpp"

#include <algorithm>
#include <map>
#include <regex>

namespace dihedralis {

namespace {

struct Row {
    u64 q, p, h, bound;
};

// Class-number scans and their default bounds.
const std::map<std::string, Row> kClassNumberTables = {
    {"h15-q3-p5", {3, 5, 15, 34483}},
    {"h15-q5-p3", {5, 3, 15, 34483}},
    {"h21-q3-p7", {3, 7, 21, 14419}},
    {"h21-q7-p3", {7, 3, 21, 5867}},
    {"h33-q3-p11", {3, 11, 33, 28163}},
    {"h35-q5-p7", {5, 7, 35, 16451}},
};

// Prime-discriminant scans: default bound is the largest listed discriminant.
const std::map<std::pair<u64, u64>, u64> kPrimeDiscBounds = {
    {{3, 5}, 13873}, {{3, 7}, 11971}, {{3, 11}, 3061}, {{3, 13}, 9397},
    {{5, 11}, 1489}, {{5, 19}, 3701}, {{7, 13}, 997},
};

} // namespace

Int prime_field_discriminant(u64 l) {
    if (l == 2) return -8;
    Int L = (unsigned long)l;
    return l % 4 == 3 ? Int(-L) : Int(-4 * L);
}

TableSpec table_spec(const std::string& id, std::optional<u64> bound) {
    TableSpec s;
    s.id = id;
    auto it = kClassNumberTables.find(id);
    if (it != kClassNumberTables.end()) {
        s.q = it->second.q;
        s.p = it->second.p;
        s.class_number = it->second.h;
        s.bound = bound.value_or(it->second.bound);
        return s;
    }
    static const std::regex pd(R"(prime-disc\((\d+),(\d+)\))");
    std::smatch m;
    if (std::regex_match(id, m, pd)) {
        s.q = std::stoull(m[1]);
        s.p = std::stoull(m[2]);
        s.prime_disc = true;
        if (s.q < 3 || !is_prime(s.q) || !is_prime(s.p) || s.p == s.q) fail("UnknownTable", id);
        auto b = kPrimeDiscBounds.find({s.q, s.p});
        if (bound) s.bound = *bound;
        else if (b != kPrimeDiscBounds.end()) s.bound = b->second;
        else fail("MissingBound", "no default bound for " + id);
        return s;
    }
    fail("UnknownTable", id);
}

std::vector<Int> table_discriminants(const TableSpec& spec) {
    std::vector<Int> out;
    if (spec.prime_disc) {
        // the fields Q(sqrt(-l)) for primes l up to the bound
        for (u64 l : primes_up_to(spec.bound)) {
            Int d = prime_field_discriminant(l);
            if (reduced_forms(d).size() % spec.q == 0) out.push_back(d);
        }
        std::sort(out.begin(), out.end(), [](const Int& a, const Int& b) { return a > b; });
        return out;
    }
    for (u64 n = 3; n <= spec.bound; ++n) {
        Int d = -Int((unsigned long)n);
        if (!is_fundamental_discriminant(d)) continue;
        if (reduced_forms(d).size() != spec.class_number) continue;
        out.push_back(d);
    }
    return out;
}

TableRow run_table_row(const TableSpec& spec, const Int& d, const PipelineOptions& opt) {
    TableRow row;
    row.d = d;
    try {
        TowerSpec t = make_tower(d, spec.q, spec.p);
        row.hL = t.hL();
        row.decision = check_case(t, opt);
    } catch (const EngineError& e) {
        row.error = e.what();
        if (row.hL == 0) row.hL = Int((unsigned long)reduced_forms(d).size());
    }
    return row;
}

} // namespace dihedralis

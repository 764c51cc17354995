#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace dihedralis {

std::string certification_name(Certification c) {
    switch (c) {
    case Certification::MinkowskiCertified: return "minkowski-certified";
    case Certification::GrhBach: return "grh-bach";
    case Certification::HeuristicDoubling: return "heuristic-doubling";
    }
    return "?";
}

namespace {

// Descent beyond this bound is skipped and the result is only heuristic.
constexpr u64 kDescentCap = 2000000;

struct Primes {
    const Order& o;
    std::map<u64, std::vector<PrimeIdeal>> above;
    explicit Primes(const Order& ord) : o(ord) {}
    const std::vector<PrimeIdeal>& get(u64 l) {
        auto it = above.find(l);
        if (it != above.end()) return it->second;
        return above.emplace(l, factor_rational_prime(o, l)).first->second;
    }
};

struct Factored {
    // (prime l, index above l, valuation)
    std::vector<std::tuple<u64, std::size_t, long>> parts;
};

// Factor the principal ideal (alpha) if every rational prime dividing its norm
// is <= lmax. Returns false otherwise.
bool factor_element(Primes& P, const IntVec& alpha, const Int& norm, u64 lmax, Factored& out) {
    out.parts.clear();
    Int N = abs(norm);
    if (N == 0) return false;
    std::map<u64, unsigned> fac;
    if (N.fits_ulong_p()) {
        u64 v = N.get_ui();
        if (v > 1) {
            // cheap trial division first, rho on what is left
            for (u64 p = 2; p * p <= v && p <= 1000; p += (p == 2 ? 1 : 2)) {
                while (v % p == 0) {
                    ++fac[p];
                    v /= p;
                }
            }
            if (v > 1) {
                if (v <= lmax && is_prime(v)) {
                    ++fac[v];
                } else {
                    if (is_prime(v)) return false;
                    for (auto& [p, e] : factor_u64(v)) {
                        if (p > lmax) return false;
                        fac[p] += e;
                    }
                }
            }
        }
    } else {
        Int r = N;
        fac = trial_factor(r, lmax);
        if (r != 1) return false;
    }
    for (auto& [l, e] : fac) {
        if (l > lmax) return false;
        const auto& ps = P.get(l);
        long sum = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            long v;
            if (ps.size() == 1) {
                v = (long)e / ps[i].f;
            } else {
                v = valuation(P.o, ps[i], alpha);
            }
            sum += v * ps[i].f;
            if (v) out.parts.emplace_back(l, i, v);
        }
        DIH_ASSERT(sum == (long)e, "valuations account for the norm");
    }
    return true;
}

struct Harvest {
    LatticeAccumulator acc;
    std::size_t relations = 0;
    explicit Harvest(std::size_t k) : acc(k) {}
};

class Engine {
public:
    Engine(const Order& o, const ClassGroupOptions& opt) : o_(o), P_(o), opt_(opt), rng_(opt.seed) {}

    std::vector<std::pair<u64, std::size_t>> factor_base(u64 bound) {
        std::vector<std::pair<u64, std::size_t>> fb;
        for (u64 l : primes_up_to(bound)) {
            const auto& ps = P_.get(l);
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (ps[i].norm() <= (long)bound) fb.emplace_back(l, i);
        }
        std::stable_sort(fb.begin(), fb.end(), [&](auto& a, auto& b) {
            return P_.get(a.first)[a.second].norm() < P_.get(b.first)[b.second].norm();
        });
        return fb;
    }

    IntMatrix reduced_basis(const Ideal& I) { return lll_reduce(o_, I.hnf); }

    IntVec random_element(const IntMatrix& B, long C) {
        std::size_t n = o_.degree();
        IntVec a(n, 0);
        for (;;) {
            bool nz = false;
            for (std::size_t i = 0; i < B.rows(); ++i) {
                long c = (long)(rng_() % (2 * C + 1)) - C;
                if (!c) continue;
                nz = true;
                for (std::size_t j = 0; j < n; ++j) a[j] += c * B(i, j);
            }
            if (nz) return a;
        }
    }

    // Collect `want` relations on the factor base with bound fb_bound.
    Harvest harvest(const std::vector<std::pair<u64, std::size_t>>& fb, u64 fb_bound,
                    std::size_t want) {
        std::size_t k = fb.size();
        Harvest h(k);
        std::map<std::pair<u64, std::size_t>, std::size_t> index;
        for (std::size_t i = 0; i < k; ++i) index[fb[i]] = i;
        std::size_t n = o_.degree();
        long C = 1;
        std::size_t since_success = 0;
        // The first full-rank determinant is often a multiple of h; keep going
        // until it survives `calm` further relations unchanged.
        std::size_t calm = std::max<std::size_t>(10, k), last_change = 0;
        Factored f;
        std::set<IntVec> seen;
        auto settled = [&] {
            if (!h.acc.full_rank()) return false;
            if (h.acc.determinant() == 1) return true;  // cannot shrink further
            return h.relations >= want && h.relations >= last_change + calm;
        };
        while (!settled()) {
            // random ideal: product of up to three factor base primes
            Ideal I = principal_ideal(o_, o_.one());
            int parts = (int)(rng_() % 4);
            for (int t = 0; t < parts; ++t) {
                auto& [l, i] = fb[rng_() % k];
                I = ideal_mul(o_, I, P_.get(l)[i].ideal);
            }
            IntMatrix B = reduced_basis(I);
            for (int trial = 0; trial < 40; ++trial) {
                if (++candidates_ > opt_.candidate_budget)
                    fail("RelationSearchStalled", "candidate budget exhausted with " +
                                                      std::to_string(h.relations) + " relations");
                IntVec a = random_element(B, C);
                Int N = o_.norm(a);
                if (!factor_element(P_, a, N, fb_bound, f)) {
                    ++since_success;
                    continue;
                }
                IntVec rel(k, 0);
                bool ok = true;
                for (auto& [l, i, v] : f.parts) {
                    auto it = index.find({l, i});
                    if (it == index.end()) {
                        ok = false;
                        break;
                    }
                    rel[it->second] = v;
                }
                if (!ok || !seen.insert(rel).second) {
                    ++since_success;
                    continue;
                }
                since_success = 0;
                ++h.relations;
                if (h.acc.insert(rel)) last_change = h.relations;
            }
            if (since_success > 200 * n) {
                ++C;
                since_success = 0;
            }
        }
        return h;
    }

    // Every prime of norm in (fb_bound, bound] is shown to lie in the group
    // generated by smaller primes.
    void descend(u64 fb_bound, u64 bound) {
        struct Item {
            Int norm;
            u64 l;
            std::size_t i;
        };
        std::vector<Item> items;
        for (u64 l : primes_up_to(bound)) {
            const auto& ps = P_.get(l);
            for (std::size_t i = 0; i < ps.size(); ++i) {
                Int N = ps[i].norm();
                if (N > (long)fb_bound && N <= (long)bound) items.push_back({N, l, i});
            }
        }
        std::stable_sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.norm < b.norm; });
        std::map<std::pair<u64, std::size_t>, std::size_t> rank;  // order of handling
        for (std::size_t t = 0; t < items.size(); ++t) rank[{items[t].l, items[t].i}] = t;
        auto fb = factor_base(fb_bound);
        Factored f;
        for (std::size_t t = 0; t < items.size(); ++t) {
            const PrimeIdeal& p = P_.get(items[t].l)[items[t].i];
            u64 lmax = items[t].norm.get_ui();
            bool done = false;
            for (int round = 0; round < 400 && !done; ++round) {
                Ideal I = p.ideal;
                if (round > 0 && !fb.empty()) {
                    auto& [l, i] = fb[rng_() % fb.size()];
                    I = ideal_mul(o_, I, P_.get(l)[i].ideal);
                }
                IntMatrix B = reduced_basis(I);
                long C = 1 + round / 100;
                for (int trial = 0; trial < 30 && !done; ++trial) {
                    if (++candidates_ > opt_.candidate_budget)
                        fail("RelationSearchStalled", "candidate budget exhausted during descent");
                    IntVec a = random_element(B, C);
                    if (!factor_element(P_, a, o_.norm(a), lmax, f)) continue;
                    bool ok = true;
                    long vp = 0;
                    for (auto& [l, i, v] : f.parts) {
                        if (l == items[t].l && i == items[t].i) {
                            vp = v;
                            continue;
                        }
                        Int Nq = P_.get(l)[i].norm();
                        if (Nq <= (long)fb_bound) continue;
                        auto it = rank.find({l, i});
                        if (it == rank.end() || it->second >= t) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && vp == 1) done = true;
                }
            }
            if (!done)
                fail("RelationSearchStalled", "descent failed at " + p.str() + " of norm " +
                                                  items[t].norm.get_str());
        }
    }

    std::size_t candidates() const { return candidates_; }
    Primes& primes() { return P_; }

private:
    const Order& o_;
    Primes P_;
    ClassGroupOptions opt_;
    std::mt19937_64 rng_;
    std::size_t candidates_ = 0;
};

} // namespace

ClassGroupResult class_group_general(const Order& o, const ClassGroupOptions& opt) {
    Int disc = o.discriminant();
    for (auto& [p, e] : factor_integer(abs(disc))) {
        if (e < 2) continue;
        if (!p.fits_ulong_p() || !is_maximal_at(o, p.get_ui())) fail("NotMaximal", "at " + p.get_str());
    }
    std::size_t n = o.degree();
    long double ld = std::log(std::fabs((long double)disc.get_d()));
    BoundPolicy pol = opt.policy;
    if (pol == BoundPolicy::Auto)
        pol = (n <= 6 && abs(disc) <= Int("1000000000000")) ? BoundPolicy::Certified : BoundPolicy::Grh;
    ClassGroupResult res;
    u64 bound;
    if (pol == BoundPolicy::Certified) {
        Int mb = minkowski_bound(o);
        DIH_ASSERT(mb.fits_ulong_p(), "Minkowski bound fits");
        bound = mb.get_ui();
        res.certification = Certification::MinkowskiCertified;
    } else {
        bound = (u64)std::ceil(12 * ld * ld);
        res.certification = Certification::GrhBach;
    }
    if (n == 1) bound = 1;
    u64 fb_bound = std::min<u64>(bound, std::max<u64>(30, (u64)std::ceil(0.25L * ld * ld)));

    Engine eng(o, opt);
    if (fb_bound < 2) {
        res.structure = abelian_group_structure(IntMatrix(0, 0));
        res.h = 1;
        res.generation_bound = bound;
        res.factor_base_bound = fb_bound;
        return res;
    }

    // Harvest, then confirm h on a 25% larger factor base with twice the relations.
    std::size_t want;
    Int h_prev = -1;
    for (int round = 0; round < 8; ++round) {
        auto fb = eng.factor_base(fb_bound);
        std::size_t k = fb.size();
        if (k == 0) {  // no prime of small norm: nothing to generate
            res.h = 1;
            res.structure = abelian_group_structure(IntMatrix(0, 0));
            break;
        }
        want = (round == 0 ? 1 : 2) * (k + 10);
        Harvest H = eng.harvest(fb, fb_bound, want);
        Int h = H.acc.determinant();
        if (h == h_prev) {
            res.h = h;
            res.structure = abelian_group_structure(H.acc.basis());
            for (auto& [l, i] : fb) res.factor_base.push_back(eng.primes().get(l)[i]);
            res.relations = H.relations;
            break;
        }
        h_prev = h;
        fb_bound = std::max<u64>(fb_bound + 1, (u64)std::ceil(1.25L * fb_bound));
    }
    if (res.h == 0) fail("RelationSearchStalled", "class number did not stabilize");
    DIH_ASSERT(res.structure.order() == res.h, "structure order matches determinant");

    if (bound > kDescentCap) {
        res.certification = Certification::HeuristicDoubling;
        res.generation_bound = fb_bound;
    } else {
        if (bound > fb_bound) eng.descend(fb_bound, bound);
        res.generation_bound = bound;
    }
    res.factor_base_bound = fb_bound;
    return res;
}

} // namespace dihedralis

#include "dihedralis/cli.hpp"
#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"
#include "dihedralis/reptheory.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace dihedralis::cli {

using json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string cache_dir;
    u64 seed = 1;
    std::string format = "json";
    std::string policy = "auto";
    long precision = 0;
    unsigned jobs = 1;
};

struct TowerArgs {
    std::string disc;
    u64 q = 0, p = 0, b = 1;
};

std::string S(const Int& x) { return x.get_str(); }
std::string S(u64 x) { return std::to_string(x); }

json ints(const std::vector<Int>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

template <class T>
json nums(const std::vector<T>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(std::to_string(x));
    return a;
}

Int parse_int(const std::string& s, const std::string& what) {
    Int x;
    if (s.empty() || x.set_str(s, 10) != 0) fail("BadInput", what + " is not an integer: '" + s + "'");
    return x;
}

BoundPolicy policy_of(const Config& c) {
    if (c.policy == "certified") return BoundPolicy::Certified;
    if (c.policy == "grh") return BoundPolicy::Grh;
    return BoundPolicy::Auto;
}

// Cached results certified below the requested policy are not reused.
class PolicyStore : public ResultStore {
public:
    PolicyStore(DiskCache& c, BoundPolicy p) : cache_(c), policy_(p) {}
    std::optional<ClassGroupSummary> load(const std::string& key) override {
        auto s = cache_.load(key);
        if (s && policy_ == BoundPolicy::Certified && s->certification != Certification::MinkowskiCertified)
            return std::nullopt;
        return s;
    }
    void store(const std::string& key, const ClassGroupSummary& s) override { cache_.store(key, s); }
    std::optional<RaySummary> load_ray(const Int& d, const std::vector<u64>& S, u64 p) override {
        return cache_.load_ray(d, S, p);
    }
    void store_ray(const Int& d, const std::vector<u64>& S, u64 p, const RaySummary& r) override {
        cache_.store_ray(d, S, p, r);
    }

private:
    DiskCache& cache_;
    BoundPolicy policy_;
};

json header(const std::string& command) {
    json j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

std::string split_name(SplitType t) {
    switch (t) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    case SplitType::Ramified: return "ramified";
    }
    return "?";
}

json prime_json(const PrimeClassification& c) {
    const auto& e = c.evidence;
    json j;
    j["l"] = S(c.l);
    j["verdict"] = verdict_name(c.verdict);
    j["splitting"] = split_name(e.split);
    j["quotient_coordinate"] = std::to_string(e.quotient_coordinate);
    j["frobenius_order"] = std::to_string(e.frobenius_order);
    j["order_mod_p"] = S(e.order_mod_p);
    j["local_degree"] = std::to_string(e.local_degree);
    j["mu_p_in_local_field"] = e.mu_p_in_local_field;
    j["matches_cyclotomic"] = e.matches_cyclotomic;
    j["decomposition_group"] = e.decomposition_group;
    return j;
}

json case_json(const CaseDecision& c) {
    json j;
    j["case"] = case_name(c.kind);
    j["hL"] = S(c.hL);
    j["hM"] = c.hM == 0 ? json(nullptr) : json(S(c.hM));
    j["clL"] = ints(c.clL);
    j["clM"] = ints(c.clM);
    j["certification"] = c.hM == 0 ? json(nullptr) : json(certification_name(c.certification));
    j["elementary_precondition"] = c.elementary_precondition;
    j["valuation_quotient"] = std::to_string(c.valuation_quotient);
    j["note"] = c.note;
    return j;
}

json tower_json(const TowerSpec& t) {
    json j;
    j["d"] = S(t.d);
    j["q"] = S(t.q);
    j["p"] = S(t.p);
    j["b"] = S(t.b);
    j["r"] = std::to_string(t.r);
    j["hL"] = S(t.hL());
    j["clL"] = t.class_group().structure.str();
    return j;
}

TowerSpec tower_of(const TowerArgs& a) {
    if (a.disc.empty()) fail("BadInput", "--disc is required");
    if (!a.q || !a.p) fail("BadInput", "--q and --p are required");
    return make_tower(parse_int(a.disc, "--disc"), a.q, a.p, a.b);
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- classgroup -----------------------------------------------------------

int cmd_classgroup(const Config& cfg, const std::string& disc, const std::string& poly, std::ostream& out) {
    json j = header("classgroup");
    if (!disc.empty() == !poly.empty()) fail("BadInput", "give exactly one of --disc and --poly");
    if (!disc.empty()) {
        Int d = parse_int(disc, "--disc");
        if (!is_fundamental_discriminant(d) || d >= 0) fail("NonFundamental", d.get_str());
        auto G = class_group(d);
        j["input"] = {{"disc", S(d)}};
        j["h"] = S(G.order());
        j["invariants"] = ints(G.structure.invariant_factors);
        j["structure"] = G.structure.str();
        j["certification"] = "exact-forms";
    } else {
        ZPoly f = ZPoly::parse(poly);
        std::string key = "poly:" + f.str();
        DiskCache cache(resolve_cache_dir(cfg.cache_dir));
        PolicyStore store(cache, policy_of(cfg));
        auto s = store.load(key);
        if (!s) {
            ClassGroupOptions o;
            o.policy = policy_of(cfg);
            o.seed = cfg.seed;
            auto r = class_group_general(maximal_order(f), o);
            s = ClassGroupSummary{r.structure.invariant_factors, r.certification};
            store.store(key, *s);
        }
        AbelianGroupStructure st;
        st.invariant_factors = s->invariants;
        j["input"] = {{"poly", f.str()}};
        j["degree"] = std::to_string(f.degree());
        j["h"] = S(s->order());
        j["invariants"] = ints(s->invariants);
        j["structure"] = st.str();
        j["certification"] = certification_name(s->certification);
    }
    emit(out, j);
    return kOk;
}

// ---- classpoly ------------------------------------------------------------

int cmd_classpoly(const Config& cfg, const std::string& disc, std::ostream& out) {
    Int d = parse_int(disc, "--disc");
    DiskCache cache(resolve_cache_dir(cfg.cache_dir));
    auto c = cache.load_classpoly(d);
    if (!c) {
        c = hilbert_class_polynomial(d, cfg.precision);
        cache.store_classpoly(d, *c);
    }
    json j = header("classpoly");
    j["disc"] = S(d);
    j["degree"] = std::to_string(c->poly.degree());
    j["coefficients"] = ints(c->poly.c);
    j["polynomial"] = c->poly.str();
    j["precision_bits"] = std::to_string(c->precision);
    emit(out, j);
    return kOk;
}

// ---- decide ---------------------------------------------------------------

int cmd_decide(const Config& cfg, const TowerArgs& a, const std::vector<u64>& Sset, std::ostream& out,
               std::ostream& err) {
    TowerSpec t = tower_of(a);
    DiskCache cache(resolve_cache_dir(cfg.cache_dir));
    PolicyStore store(cache, policy_of(cfg));
    PipelineOptions opt;
    opt.policy = policy_of(cfg);
    opt.seed = cfg.seed;
    opt.store = &store;
    Decision D = decide_dihedral(t, Sset, opt);
    BostonReport B = boston_report(D);

    json j = header("decide");
    j["tower"] = tower_json(t);
    j["ramified_set"] = nums(D.S);
    j["verdict"] = decision_name(D.kind);
    j["reason"] = D.reason;
    j["case"] = D.case_decision ? json(case_name(D.case_decision->kind)) : json(nullptr);
    j["hL"] = S(t.hL());
    j["hM"] = D.case_decision && D.case_decision->hM != 0 ? json(S(D.case_decision->hM)) : json(nullptr);
    j["ring_presentation"] = D.ring ? json(D.ring->str()) : json(nullptr);
    j["constant_det_presentation"] = D.constant_det ? json(D.constant_det->str()) : json(nullptr);
    json b;
    b["conclusive"] = B.conclusive;
    b["finite_image"] = B.finite_image;
    b["image_order"] = B.conclusive ? json(S(B.image_order)) : json(nullptr);
    b["message"] = B.message;
    j["boston"] = b;
    json ev;
    ev["violated"] = D.violated;
    json off = json::array();
    for (auto& o : D.offending) off.push_back(prime_json(o));
    ev["offending_primes"] = off;
    ev["case_decision"] = D.case_decision ? case_json(*D.case_decision) : json(nullptr);
    if (D.ray) {
        ev["ray_p_exponents"] = nums(D.ray->p_exponents);
        ev["minus_exponents"] = nums(D.ray->minus);
        ev["plus_exponents"] = nums(D.ray->plus);
        ev["gamma_order"] = S(D.ray->p_order);
    }
    ev["residual_image_order"] = S(D.residual_order);
    j["evidence"] = ev;
    emit(out, j);
    if (D.kind == DecisionKind::HypothesesNotMet) {
        err << "HypothesesNotMet:";
        for (auto& v : D.violated) err << " " << v << ";";
        err << "\n";
        return kHypothesesNotMet;
    }
    return kOk;
}

// ---- classify-primes ------------------------------------------------------

std::string md_escape(std::string s) {
    std::string o;
    for (char c : s) {
        if (c == '|') o += '\\';
        o += c;
    }
    return o;
}

int cmd_classify(const Config& cfg, const TowerArgs& a, u64 bound, const std::vector<u64>& primes,
                 std::ostream& out) {
    TowerSpec t = tower_of(a);
    std::vector<u64> ls = primes.empty() ? primes_up_to(bound) : primes;
    std::vector<PrimeClassification> rows;
    for (u64 l : ls) rows.push_back(classify_prime(t, l));
    if (cfg.format == "json") {
        json j = header("classify-primes");
        j["tower"] = tower_json(t);
        json r = json::array();
        for (auto& c : rows) r.push_back(prime_json(c));
        j["primes"] = r;
        emit(out, j);
    } else if (cfg.format == "csv") {
        out << "l,verdict,splitting,frobenius_order,order_mod_p,local_degree,mu_p,decomposition_group\n";
        for (auto& c : rows) {
            auto& e = c.evidence;
            out << c.l << "," << verdict_name(c.verdict) << "," << split_name(e.split) << "," << e.frobenius_order
                << "," << e.order_mod_p << "," << e.local_degree << "," << (e.mu_p_in_local_field ? 1 : 0) << ","
                << e.decomposition_group << "\n";
        }
    } else {
        out << "| l | verdict | splitting | Frob order in Gal(M/L) | ord_p(l) | local degree | decomposition group |\n";
        out << "|---|---|---|---|---|---|---|\n";
        for (auto& c : rows) {
            auto& e = c.evidence;
            out << "| " << c.l << " | " << verdict_name(c.verdict) << " | " << split_name(e.split) << " | "
                << e.frobenius_order << " | " << e.order_mod_p << " | " << e.local_degree << " | "
                << md_escape(e.decomposition_group) << " |\n";
        }
    }
    return kOk;
}

// ---- minimal-s ------------------------------------------------------------

int cmd_minimal(const TowerArgs& a, std::ostream& out) {
    TowerSpec t = tower_of(a);
    auto m = minimal_S(t);
    json j = header("minimal-s");
    j["tower"] = tower_json(t);
    j["S"] = nums(m.S);
    j["includes_infinity"] = true;
    json r = json::array();
    for (auto& e : m.ramified) {
        json x;
        x["l"] = S(e.l);
        x["local_image_order"] = std::to_string(e.local_image_order);
        x["locally_irreducible"] = e.locally_irreducible;
        x["vexing"] = e.vexing;
        x["in_S"] = e.in_S;
        r.push_back(x);
    }
    j["ramified_primes"] = r;
    emit(out, j);
    return kOk;
}

// ---- table ----------------------------------------------------------------

std::string display_label(const TableSpec& spec, const Int& d) {
    // prime scans are indexed by l, with d = -l or -4l
    if (!spec.prime_disc) return S(d);
    Int l = -d;
    if (l % 4 == 0) l /= 4;
    if (l == 8) l = 2;
    return S(l);
}

int cmd_table(const Config& cfg, const std::string& id, std::optional<u64> bound, std::ostream& out) {
    TableSpec spec = table_spec(id, bound);
    auto ds = table_discriminants(spec);
    DiskCache cache(resolve_cache_dir(cfg.cache_dir));
    PolicyStore store(cache, policy_of(cfg));
    PipelineOptions opt;
    opt.policy = policy_of(cfg);
    opt.seed = cfg.seed;
    opt.store = &store;

    std::vector<TableRow> rows(ds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < ds.size();) rows[i] = run_table_row(spec, ds[i], opt);
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, (unsigned)std::max<std::size_t>(1, ds.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<std::string> c1, c2, ind, errs;
    for (auto& r : rows) {
        std::string lab = display_label(spec, r.d);
        if (!r.error.empty()) errs.push_back(lab);
        else if (r.decision->kind == CaseKind::Case1) c1.push_back(lab);
        else if (r.decision->kind == CaseKind::Case2) c2.push_back(lab);
        else ind.push_back(lab);
    }

    if (cfg.format == "json") {
        json j = header("table");
        j["table"] = spec.id;
        j["q"] = S(spec.q);
        j["p"] = S(spec.p);
        j["class_number"] = spec.prime_disc ? json(nullptr) : json(S(spec.class_number));
        j["prime_discriminants"] = spec.prime_disc;
        j["bound"] = S(spec.bound);
        json arr = json::array();
        for (auto& r : rows) {
            json x;
            x["d"] = S(r.d);
            x["label"] = display_label(spec, r.d);
            x["hL"] = S(r.hL);
            if (r.decision) {
                json c = case_json(*r.decision);
                for (auto& [k, v] : c.items())
                    if (k != "hL") x[k] = v;
            } else {
                x["case"] = nullptr;
            }
            x["error"] = r.error.empty() ? json(nullptr) : json(r.error);
            arr.push_back(x);
        }
        j["rows"] = arr;
        json s;
        s["fields"] = std::to_string(rows.size());
        s["case1"] = c1;
        s["case2"] = c2;
        s["indeterminate"] = ind;
        s["errors"] = errs;
        j["summary"] = s;
        emit(out, j);
    } else if (cfg.format == "csv") {
        out << "d,label,hL,hM,case,certification,error\n";
        for (auto& r : rows) {
            out << r.d << "," << display_label(spec, r.d) << "," << r.hL << ",";
            if (r.decision) {
                out << (r.decision->hM == 0 ? "" : S(r.decision->hM)) << "," << case_name(r.decision->kind) << ","
                    << (r.decision->hM == 0 ? "" : certification_name(r.decision->certification));
            } else {
                out << ",,";
            }
            std::string e = r.error;
            for (auto& ch : e)
                if (ch == ',' || ch == '\n') ch = ';';
            out << "," << e << "\n";
        }
    } else {
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (auto& x : v) s += (s.empty() ? "" : ", ") + x;
            return s;
        };
        if (spec.prime_disc) {
            out << "| q | p | negative prime discriminants with case (2) |\n|---|---|---|\n";
            out << "| " << spec.q << " | " << spec.p << " | " << join(c2) << " |\n";
        } else {
            out << "| p | q | fields L | results |\n|---|---|---|---|\n";
            std::string res;
            if (!c2.empty()) res += "case (2): discriminants: " + join(c2) + "; ";
            res += "case (1): " + (c2.empty() ? "all " + std::to_string(c1.size()) + " fields"
                                               : "all " + std::to_string(c1.size()) + " others");
            if (!ind.empty()) res += "; indeterminate: " + join(ind);
            if (!errs.empty()) res += "; errors: " + join(errs);
            out << "| " << spec.p << " | " << spec.q << " | all imaginary quadratic fields of class number "
                << spec.class_number << " with \\|d\\| <= " << spec.bound << " (" << rows.size() << " fields) | "
                << res << " |\n";
        }
        out << "\n| d | h(L) | h(M) | case | certification | error |\n|---|---|---|---|---|---|\n";
        for (auto& r : rows) {
            out << "| " << r.d << " | " << r.hL << " | ";
            if (r.decision)
                out << (r.decision->hM == 0 ? "" : S(r.decision->hM)) << " | " << case_name(r.decision->kind)
                    << " | " << (r.decision->hM == 0 ? "" : certification_name(r.decision->certification));
            else
                out << " | | ";
            out << " | " << md_escape(r.error) << " |\n";
        }
    }
    return kOk;
}

// ---- rep-check ------------------------------------------------------------

json verdict_json(const DihedralVerdict& v) {
    json j;
    j["dihedral"] = v.dihedral;
    const auto& c = v.classification;
    j["gamma_order"] = S(c.gamma_order);
    j["frattini_order"] = S(c.frattini_order);
    j["frattini_dim"] = std::to_string(c.dim);
    json l = json::array();
    for (auto& x : c.labels) l.push_back(x.str());
    j["labels"] = l;
    j["h_action_trivial"] = c.h_action_trivial;
    return j;
}

ModuleLabel::Tag tag_of(const std::string& s) {
    static const std::map<std::string, ModuleLabel::Tag> m = {
        {"C1", ModuleLabel::C1}, {"CEps", ModuleLabel::CEps}, {"I", ModuleLabel::I},
        {"Chi1", ModuleLabel::Chi1}, {"Chi2", ModuleLabel::Chi2}, {"N", ModuleLabel::N}};
    auto it = m.find(s);
    if (it == m.end()) fail("BadInput", "unknown module " + s);
    return it->second;
}

int cmd_rep(bool s4, bool cube, const std::string& lift, bool nonsplit, u64 p, u64 qp, std::ostream& out) {
    json j = header("rep-check");
    if (s4 + cube + !lift.empty() != 1) fail("BadInput", "give one of --s4-example, --epsilon-cube, --lift");
    if (s4) {
        auto ex = s4_example();
        j["fixture"] = "s4";
        j["ring"] = ex.rep.ring.tag();
        j["image_order"] = S(enumerate_image(ex.rep).order());
        j["verdict"] = verdict_json(ex.verdict);
        j["residual_verdict"] = verdict_json(ex.residual_verdict);
    } else if (cube) {
        auto rep = epsilon_cube_example(p ? p : 7, qp ? qp : 3);
        j["fixture"] = "epsilon-cube";
        j["ring"] = rep.ring.tag();
        j["verdict"] = verdict_json(is_dihedral_deformation(rep));
        j["truncated_verdict"] = verdict_json(is_dihedral_deformation(rep.truncated(2)));
    } else {
        if (!p || !qp) fail("BadInput", "--lift needs --p and --q-prime");
        if (qp < 3 || !is_prime(qp) || !is_prime(p) || p == qp) fail("BadInput", "need odd primes q' != p");
        auto F = FiniteField::make(p, order_degree(p, qp));
        auto data = dihedral_data(F, F->root_of_unity(qp), F->one());
        auto rep = build_infinitesimal_lift(data, tag_of(lift), nonsplit ? LiftVariant::Nonsplit : LiftVariant::Split);
        j["fixture"] = "infinitesimal-lift";
        j["module"] = lift;
        j["variant"] = nonsplit ? "nonsplit" : "split";
        j["ring"] = rep.ring.tag();
        j["image_order"] = S(enumerate_image(rep).order());
        j["verdict"] = verdict_json(is_dihedral_deformation(rep));
    }
    emit(out, j);
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dihedral universal deformations over imaginary quadratic fields", "dihedralis"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default: $DIHEDRALIS_CACHE)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--bound-policy", cfg.policy)->check(CLI::IsMember({"auto", "certified", "grh"}));
    app.add_option("--precision", cfg.precision, "starting precision in bits for class polynomials");
    app.add_option("--jobs", cfg.jobs, "worker threads for tables")->check(CLI::PositiveNumber);

    TowerArgs ta;
    auto tower_opts = [&](CLI::App* c) {
        c->add_option("--disc", ta.disc, "fundamental discriminant d < 0");
        c->add_option("--q", ta.q, "odd prime dividing h(d)");
        c->add_option("--p", ta.p, "coefficient characteristic");
        c->add_option("--b", ta.b, "exponent of the character");
    };

    std::string poly, table_id;
    auto* cg = app.add_subcommand("classgroup", "class group of a quadratic discriminant or a number field");
    cg->add_option("--disc", ta.disc);
    cg->add_option("--poly", poly);
    auto* cp = app.add_subcommand("classpoly", "Hilbert class polynomial");
    cp->add_option("--disc", ta.disc)->required();
    std::vector<u64> Sset;
    auto* de = app.add_subcommand("decide", "dihedrality of the universal deformation");
    tower_opts(de);
    de->add_option("--ramified-set", Sset, "finite primes allowed to ramify")->delimiter(',');
    u64 bound = 500;
    std::vector<u64> primes;
    auto* cl = app.add_subcommand("classify-primes", "S1/S2/S3 membership of primes");
    tower_opts(cl);
    cl->add_option("--bound", bound, "classify all primes up to this bound");
    cl->add_option("--primes", primes, "explicit primes")->delimiter(',');
    auto* ms = app.add_subcommand("minimal-s", "minimal ramification set");
    tower_opts(ms);
    std::optional<u64> tbound;
    auto* tb = app.add_subcommand("table", "class-number scans");
    tb->add_option("id", table_id, "h15-q3-p5, h15-q5-p3, h21-q3-p7, prime-disc(q,p), ...")->required();
    tb->add_option("--bound", tbound, "scan bound on |d| (on l for prime scans)");
    bool s4 = false, cube = false, nonsplit = false;
    std::string lift;
    u64 qp = 0;
    auto* rc = app.add_subcommand("rep-check", "representation-theory fixtures");
    rc->add_flag("--s4-example", s4);
    rc->add_flag("--epsilon-cube", cube);
    rc->add_option("--lift", lift, "module realized by an infinitesimal lift: C1, CEps, I, N, Chi1, Chi2");
    rc->add_flag("--nonsplit", nonsplit);
    rc->add_option("--p", ta.p);
    rc->add_option("--q-prime", qp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (cfg.format != "json" && !(*cl || *tb)) fail("BadInput", "--format " + cfg.format + " is only for tables");
        if (*cg) return cmd_classgroup(cfg, ta.disc, poly, out);
        if (*cp) return cmd_classpoly(cfg, ta.disc, out);
        if (*de) return cmd_decide(cfg, ta, Sset, out, err);
        if (*cl) return cmd_classify(cfg, ta, bound, primes, out);
        if (*ms) return cmd_minimal(ta, out);
        if (*tb) return cmd_table(cfg, table_id, tbound, out);
        if (*rc) return cmd_rep(s4, cube, lift, nonsplit, ta.p, qp, out);
    } catch (const EngineError& e) {
        err << e.what() << "\n";
        return kEngineError;
    }
    return kOk;
}

} // namespace dihedralis::cli

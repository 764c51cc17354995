#include "dihedralis/cli.hpp"
#include "dihedralis/errors.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace dihedralis::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) fail("HashFailure", "sha256");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

fs::path resolve_cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("DIHEDRALIS_CACHE"); env && *env) return env;
    return ".dihedralis-cache";
}

DiskCache::DiskCache(fs::path root) : root_(std::move(root)) {}

fs::path DiskCache::classgroup_path(const std::string& key) const {
    return root_ / "classgroup" / (sha256_hex(key) + ".json");
}

fs::path DiskCache::classpoly_path(const Int& d) const { return root_ / "classpoly" / (d.get_str() + ".json"); }

fs::path DiskCache::rayclass_path(const Int& d, const std::vector<u64>& S, u64 p) const {
    std::string s;
    for (u64 l : S) s += std::to_string(l) + ",";
    return root_ / "rayclass" / (d.get_str() + "-" + sha256_hex(s).substr(0, 16) + "-" + std::to_string(p) + ".json");
}

std::string DiskCache::read_payload(const fs::path& path, const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ifstream in(path);
    if (!in) {
        ++misses_;
        return "";
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        ++misses_;
        return "";
    }
    if (j.value("schema", 0) != kSchema || j.value("engine", "") != kEngineVersion || j.value("key", "") != key ||
        !j.contains("payload")) {
        ++misses_;
        return "";
    }
    ++hits_;
    return j["payload"].dump();
}

void DiskCache::write_entry(const fs::path& path, const std::string& key, const std::string& certification,
                            const std::string& payload_json) {
    json j;
    j["schema"] = kSchema;
    j["engine"] = kEngineVersion;
    j["key"] = key;
    j["certification"] = certification;
    j["payload"] = json::parse(payload_json);
    std::lock_guard<std::mutex> lock(mu_);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail("CacheWriteFailed", path.parent_path().string() + ": " + ec.message());
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    fs::path tmp = path;
    tmp += ".tmp-" + tid.str();
    {
        std::ofstream out(tmp);
        if (!out) fail("CacheWriteFailed", tmp.string());
        out << j.dump(1) << "\n";
    }
    fs::rename(tmp, path, ec);
    if (ec) fail("CacheWriteFailed", path.string() + ": " + ec.message());
}

namespace {

json ints(const std::vector<Int>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

std::vector<Int> parse_ints(const json& a) {
    std::vector<Int> v;
    for (auto& x : a) v.emplace_back(x.get<std::string>());
    return v;
}

Certification parse_certification(const std::string& s) {
    for (auto c : {Certification::MinkowskiCertified, Certification::GrhBach, Certification::HeuristicDoubling})
        if (certification_name(c) == s) return c;
    fail("CacheCorrupt", "certification " + s);
}

} // namespace

std::optional<ClassGroupSummary> DiskCache::load(const std::string& key) {
    std::string p = read_payload(classgroup_path(key), key);
    if (p.empty()) return std::nullopt;
    json j = json::parse(p);
    ClassGroupSummary s;
    s.invariants = parse_ints(j.at("invariants"));
    s.certification = parse_certification(j.at("certification"));
    return s;
}

void DiskCache::store(const std::string& key, const ClassGroupSummary& s) {
    json j;
    j["invariants"] = ints(s.invariants);
    j["h"] = s.order().get_str();
    j["certification"] = certification_name(s.certification);
    write_entry(classgroup_path(key), key, certification_name(s.certification), j.dump());
}

namespace {

std::string ray_key(const Int& d, const std::vector<u64>& S, u64 p) {
    std::string k = "ray:" + d.get_str() + ":";
    for (u64 l : S) k += std::to_string(l) + ",";
    return k + ":" + std::to_string(p);
}

} // namespace

std::optional<RaySummary> DiskCache::load_ray(const Int& d, const std::vector<u64>& S, u64 p) {
    std::string key = ray_key(d, S, p);
    std::string payload = read_payload(rayclass_path(d, S, p), key);
    if (payload.empty()) return std::nullopt;
    json j = json::parse(payload);
    RaySummary r;
    r.p_exponents = j.at("p_exponents").get<std::vector<unsigned>>();
    r.minus = j.at("minus").get<std::vector<unsigned>>();
    r.plus = j.at("plus").get<std::vector<unsigned>>();
    r.p_order = Int(j.at("p_order").get<std::string>());
    return r;
}

void DiskCache::store_ray(const Int& d, const std::vector<u64>& S, u64 p, const RaySummary& r) {
    json j;
    j["p_exponents"] = r.p_exponents;
    j["minus"] = r.minus;
    j["plus"] = r.plus;
    j["p_order"] = r.p_order.get_str();
    write_entry(rayclass_path(d, S, p), ray_key(d, S, p), "exact", j.dump());
}

std::optional<ClassPolynomial> DiskCache::load_classpoly(const Int& d) {
    std::string key = "classpoly:" + d.get_str();
    std::string payload = read_payload(classpoly_path(d), key);
    if (payload.empty()) return std::nullopt;
    json j = json::parse(payload);
    ClassPolynomial c;
    c.poly = ZPoly(parse_ints(j.at("coefficients")));
    c.precision = j.at("precision").get<long>();
    return c;
}

void DiskCache::store_classpoly(const Int& d, const ClassPolynomial& c) {
    json j;
    j["coefficients"] = ints(c.poly.c);
    j["precision"] = (long)c.precision;
    write_entry(classpoly_path(d), "classpoly:" + d.get_str(), "precision-doubling", j.dump());
}

} // namespace dihedralis::cli

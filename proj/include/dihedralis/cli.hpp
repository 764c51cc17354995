#pragma once

#include "dihedralis/cm.hpp"
#include "dihedralis/pipeline.hpp"

#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>

namespace dihedralis::cli {

inline constexpr int kSchema = 1;
inline constexpr const char* kEngineVersion = "dihedralis-1";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kEngineError = 2;
inline constexpr int kHypothesesNotMet = 3;

std::string sha256_hex(const std::string& data);

// On-disk cache. Entries carry the schema and engine version; a mismatch
// makes the entry invisible. Writes go to a temporary file and are renamed.
//   classpoly/<d>.json
//   classgroup/<sha256 of the normalized field description>.json
//   rayclass/<d>-<sha256 of S, 16 hex>-<p>.json
class DiskCache : public ResultStore {
public:
    explicit DiskCache(std::filesystem::path root);
    const std::filesystem::path& root() const { return root_; }

    std::optional<ClassGroupSummary> load(const std::string& key) override;
    void store(const std::string& key, const ClassGroupSummary& s) override;
    std::optional<RaySummary> load_ray(const Int& d, const std::vector<u64>& S, u64 p) override;
    void store_ray(const Int& d, const std::vector<u64>& S, u64 p, const RaySummary& r) override;
    std::optional<ClassPolynomial> load_classpoly(const Int& d);
    void store_classpoly(const Int& d, const ClassPolynomial& c);

    std::filesystem::path classgroup_path(const std::string& key) const;
    std::filesystem::path classpoly_path(const Int& d) const;
    std::filesystem::path rayclass_path(const Int& d, const std::vector<u64>& S, u64 p) const;

    int hits() const { return hits_; }
    int misses() const { return misses_; }

private:
    std::string read_payload(const std::filesystem::path& path, const std::string& key);
    void write_entry(const std::filesystem::path& path, const std::string& key, const std::string& certification,
                     const std::string& payload_json);

    std::filesystem::path root_;
    std::mutex mu_;
    int hits_ = 0, misses_ = 0;
};

// --cache-dir, else DIHEDRALIS_CACHE, else ./.dihedralis-cache.
std::filesystem::path resolve_cache_dir(const std::string& flag);

// Entry point of the command-line tool; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dihedralis::cli

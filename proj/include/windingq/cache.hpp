#pragma once

#include "windingq/decomp.hpp"

#include <filesystem>
#include <optional>

namespace windingq {

inline constexpr int kCacheFormatVersion = 1;

struct CacheEntry {
    int format_version = kCacheFormatVersion;
    long level = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Int>>> symbol_table;
    std::vector<std::size_t> free_symbols;
    RatMatrix basis_change;
    std::map<long, IntMatrix> hecke;   // T_p on H for the primes p computed so far
    std::vector<std::pair<std::string, std::vector<FingerprintEntry>>> fingerprints;

    static CacheEntry capture(const ManinSpace& space, const HeckeCache& hecke,
                              const std::vector<IsotypicClass>& classes);
    ManinSpace space() const;
    // Seeds a Hecke cache on the rebuilt space with the stored operators.
    void seed(HeckeCache& cache) const;
};

std::filesystem::path cache_path(const std::filesystem::path& dir, long level);

std::string serialize(const CacheEntry& entry);
// nullopt on any version, checksum or format mismatch.
std::optional<CacheEntry> deserialize(const std::string& text);

// Atomic: the entry is written to a temporary file and renamed. Throws IoFailure.
void cache_store(const std::filesystem::path& dir, const CacheEntry& entry);
// A missing, truncated, corrupt or outdated file is a miss.
std::optional<CacheEntry> cache_load(const std::filesystem::path& dir, long level);

} // namespace windingq

#pragma once

// Binary orbit cache, one file per (p, l, n, group).
//
// Layout (all integers little-endian):
//   magic "WRORBIT\0", u32 format_version, u32 p, u32 ell, u32 n, u32 group,
//   u64 pool_hash, u64 invariant_fiber_count, u8 refines, u8 exact, u64 record_count,
//   then per record: 2n x (u32 r, u32 s), u64 orbit size, i32 depth, i64 label value.

#include <filesystem>
#include <optional>

#include "weilrep/group.hpp"

namespace weilrep {

constexpr std::uint32_t kOrbitCacheVersion = 1;

std::filesystem::path orbit_cache_path(const std::filesystem::path& dir,
                                       const RingParams& params, GroupTag group);

void write_orbit_cache(const std::filesystem::path& file, const HermitianSpace& V,
                       const OrbitCertificate& cert);

/// Returns nullopt when the file is missing, malformed, or was written for another
/// instance or pool.
std::optional<OrbitCertificate> read_orbit_cache(const std::filesystem::path& file,
                                                 const HermitianSpace& V,
                                                 const GeneratorPool& pool);

/// count_orbits with the cache consulted first and refreshed on a miss. An empty dir
/// disables caching. hit is set when the cache was used.
OrbitCertificate count_orbits_cached(const HermitianSpace& V, const GeneratorPool& pool,
                                     const std::filesystem::path& dir,
                                     bool* hit = nullptr);

}  // namespace weilrep

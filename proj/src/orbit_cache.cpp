#include "weilrep/orbit_cache.hpp"

#include <cstring>
#include <fstream>

namespace weilrep {

namespace {

constexpr char kMagic[8] = {'W', 'R', 'O', 'R', 'B', 'I', 'T', '\0'};

template <class T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& v) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    u |= static_cast<std::make_unsigned_t<T>>(buf[i]) << (8 * i);
  v = static_cast<T>(u);
  return true;
}

}  // namespace

std::filesystem::path orbit_cache_path(const std::filesystem::path& dir,
                                       const RingParams& params, GroupTag group) {
  return dir / ("orbits_p" + std::to_string(params.p) + "_l" + std::to_string(params.ell) +
                "_n" + std::to_string(params.n) + "_" + to_string(group) + ".bin");
}

void write_orbit_cache(const std::filesystem::path& file, const HermitianSpace& V,
                       const OrbitCertificate& cert) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write orbit cache " + tmp.string());
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kOrbitCacheVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(V.params().p));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(V.params().ell));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(V.params().n));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(cert.group));
    put<std::uint64_t>(out, cert.pool_hash);
    put<std::uint64_t>(out, cert.invariant_fiber_count);
    put<std::uint8_t>(out, cert.refines ? 1 : 0);
    put<std::uint8_t>(out, cert.exact ? 1 : 0);
    put<std::uint64_t>(out, cert.orbits.size());
    for (const auto& rec : cert.orbits) {
      for (const auto& a : rec.representative.c) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(a.r));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(a.s));
      }
      put<std::uint64_t>(out, rec.size);
      put<std::int32_t>(out, rec.label.depth);
      put<std::int64_t>(out, rec.label.value);
    }
  }
  std::filesystem::rename(tmp, file);
}

std::optional<OrbitCertificate> read_orbit_cache(const std::filesystem::path& file,
                                                 const HermitianSpace& V,
                                                 const GeneratorPool& pool) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    return std::nullopt;
  std::uint32_t version, p, ell, n, group;
  std::uint64_t hash, fibers, count;
  std::uint8_t refines, exact;
  if (!get(in, version) || !get(in, p) || !get(in, ell) || !get(in, n) || !get(in, group) ||
      !get(in, hash) || !get(in, fibers) || !get(in, refines) || !get(in, exact) ||
      !get(in, count))
    return std::nullopt;
  if (version != kOrbitCacheVersion || Int(p) != V.params().p ||
      int(ell) != V.params().ell || int(n) != V.params().n ||
      group != static_cast<std::uint32_t>(pool.group) || hash != pool.hash())
    return std::nullopt;
  if (count > V.size()) return std::nullopt;

  OrbitCertificate cert;
  cert.group = pool.group;
  cert.pool_description = pool.description();
  cert.pool_hash = hash;
  cert.invariant_fiber_count = fibers;
  cert.refines = refines != 0;
  cert.exact = exact != 0;
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    OrbitRecord rec;
    rec.representative = V.zero();
    for (auto& a : rec.representative.c) {
      std::uint32_t r, s;
      if (!get(in, r) || !get(in, s)) return std::nullopt;
      a = {Int(r), Int(s)};
      try {
        V.ring().check(a);
      } catch (const ParamError&) {
        return std::nullopt;
      }
    }
    std::int32_t depth;
    std::int64_t value;
    if (!get(in, rec.size) || !get(in, depth) || !get(in, value)) return std::nullopt;
    rec.label = {depth, value};
    total += rec.size;
    cert.orbits.push_back(std::move(rec));
  }
  if (total != V.size()) return std::nullopt;
  cert.bfs_orbit_count = cert.orbits.size();
  return cert;
}

OrbitCertificate count_orbits_cached(const HermitianSpace& V, const GeneratorPool& pool,
                                     const std::filesystem::path& dir, bool* hit) {
  if (hit) *hit = false;
  if (dir.empty()) return count_orbits(V, pool);
  const auto file = orbit_cache_path(dir, V.params(), pool.group);
  if (auto cached = read_orbit_cache(file, V, pool)) {
    if (hit) *hit = true;
    return *cached;
  }
  OrbitCertificate cert = count_orbits(V, pool);
  write_orbit_cache(file, V, cert);
  return cert;
}

}  // namespace weilrep

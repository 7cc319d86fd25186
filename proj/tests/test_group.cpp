#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "weilrep/orbit_cache.hpp"

using namespace weilrep;

namespace {

// Orbits of an explicit list of group elements, by union over all images.
std::vector<std::vector<std::uint64_t>> brute_orbits(const HermitianSpace& V,
                                                     const std::vector<AMatrix>& G) {
  std::vector<char> seen(V.size(), 0);
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t i = 0; i < V.size(); ++i) {
    if (seen[i]) continue;
    std::set<std::uint64_t> orbit;
    const HVector x = V.from_index(i);
    for (const auto& g : G) orbit.insert(V.index(apply(V, g, x)));
    for (auto j : orbit) seen[j] = 1;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::set<std::vector<AElem>> keys(const std::vector<AMatrix>& G) {
  std::set<std::vector<AElem>> s;
  for (const auto& g : G) s.insert(g.entries());
  return s;
}

}  // namespace

TEST_CASE("pool elements lie in their groups") {
  for (auto [l, n] : {std::pair<int, int>{1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
    const HermitianSpace V(RingParams::make(3, l, n));
    for (GroupTag g : {GroupTag::U, GroupTag::SU, GroupTag::Sp}) {
      const GeneratorPool pool = generator_pool(V, g);
      CHECK(!pool.elements.empty());
      CHECK(!pool.core().empty());
      for (const auto& e : pool.elements) {
        CHECK(is_symplectic(V, e.map));
        if (g == GroupTag::Sp) continue;
        REQUIRE(e.unitary.has_value());
        CHECK(is_unitary(V, *e.unitary));
        CHECK(embed_unitary(V, *e.unitary) == e.map);
        if (g == GroupTag::SU) CHECK(det(V, *e.unitary) == V.ring().one());
      }
    }
  }
}

TEST_CASE("matrix helpers") {
  const HermitianSpace V(RingParams::make(3, 2, 2));
  const Ring& A = V.ring();
  const AMatrix s = weyl_swap(V, 0);
  CHECK(is_unitary(V, s));
  CHECK(mat_mul(V, s, unitary_inverse(V, s)) == identity_matrix(V));
  const AMatrix t = torus(V, 1, A.make(2, 1));
  CHECK(is_unitary(V, t));
  const AMatrix tr = unitary_transvection(V, V.u(0), 4);
  CHECK(is_unitary(V, tr));
  CHECK(det(V, tr) == A.one());
  CHECK(det(V, mat_mul(V, t, s)) == A.mul(det(V, t), det(V, s)));
  CHECK_THROWS_AS(eichler(V, V.u(0), V.v(0)), ParamError);
  CHECK(is_symplectic(V, eichler(V, V.u(0), V.u(1))));
  CHECK(compose(V, minus_identity(V), minus_identity(V)) == identity_map(V));
}

TEST_CASE("pool closure equals the exhaustive unitary group") {
  for (int l : {1, 2}) {
    const HermitianSpace V(RingParams::make(3, l, 1));
    const auto U = enumerate_group_exhaustive(V, GroupTag::U);
    const auto C = enumerate_group_closure(V, generator_pool(V, GroupTag::U));
    CHECK(C.size() == U.size());
    CHECK(keys(C) == keys(U));

    const auto SU = enumerate_group_exhaustive(V, GroupTag::SU);
    std::set<AElem> dets;
    for (const auto& g : U) dets.insert(det(V, g));
    CHECK(SU.size() * dets.size() == U.size());
    const auto CS = enumerate_group_closure(V, generator_pool(V, GroupTag::SU));
    CHECK(keys(CS) == keys(SU));
  }
}

TEST_CASE("orbit labels are constant on brute-force orbits and separate them") {
  for (int l : {1, 2}) {
    const HermitianSpace V(RingParams::make(3, l, 1));
    const auto U = enumerate_group_exhaustive(V, GroupTag::U);
    const auto orbits = brute_orbits(V, U);
    std::set<OrbitLabel> labels;
    for (const auto& o : orbits) {
      const OrbitLabel lab = orbit_invariant(V, V.from_index(o.front()));
      for (auto i : o) REQUIRE(orbit_invariant(V, V.from_index(i)) == lab);
      labels.insert(lab);
    }
    CHECK(labels.size() == orbits.size());
    CHECK(orbits.size() == predicted_orbit_count(V.params(), GroupTag::U));

    const OrbitCertificate c = count_orbits(V, generator_pool(V, GroupTag::U));
    CHECK(c.exact);
    CHECK(c.bfs_orbit_count == orbits.size());
    std::multiset<std::uint64_t> a, b;
    for (const auto& o : orbits) a.insert(o.size());
    for (const auto& o : c.orbits) b.insert(o.size);
    CHECK(a == b);
  }
}

TEST_CASE("orbit counts against the predicted formulas") {
  for (auto [p, l, n] : {std::tuple<Int, int, int>{3, 1, 1}, {5, 1, 1}, {3, 2, 1}, {3, 1, 2}, {5, 2, 1}}) {
    const HermitianSpace V(RingParams::make(p, l, n));
    for (GroupTag g : {GroupTag::U, GroupTag::Sp}) {
      const OrbitCertificate c = count_orbits(V, generator_pool(V, g));
      CHECK(c.exact);
      CHECK(c.bfs_orbit_count == predicted_orbit_count(V.params(), g));
      std::uint64_t total = 0;
      for (const auto& o : c.orbits) total += o.size;
      CHECK(total == V.size());
    }
  }
}

TEST_CASE("Sp cells are the depth layers") {
  const HermitianSpace V(RingParams::make(3, 2, 1));
  const OrbitCertificate c = count_orbits(V, generator_pool(V, GroupTag::Sp));
  std::map<int, std::uint64_t> by_depth;
  for (const auto& o : c.orbits) by_depth[o.label.depth] += o.size;
  CHECK(by_depth == std::map<int, std::uint64_t>{{0, 648}, {1, 72}, {2, 8}, {3, 1}});
  for (const auto& g : enumerate_map_closure(V, generator_pool(V, GroupTag::Sp))) {
    CHECK(is_symplectic(V, g));
    for (std::uint64_t i = 0; i < V.size(); i += 37) {
      const HVector x = V.from_index(i);
      CHECK(V.depth(apply(V, g, x)) == V.depth(x));
    }
  }
}

TEST_CASE("congruence subgroup") {
  const HermitianSpace V(RingParams::make(3, 2, 1));
  const auto U = enumerate_group_exhaustive(V, GroupTag::U);
  const auto omega = congruence_subgroup(V, U);
  CHECK(U.size() % omega.size() == 0);
  const auto k = keys(omega);
  for (const auto& a : omega)
    for (const auto& b : omega) REQUIRE(k.count(mat_mul(V, a, b).entries()) == 1);
}

TEST_CASE("orbit cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "weilrep_test_cache";
  std::filesystem::remove_all(dir);
  const HermitianSpace V(RingParams::make(3, 2, 1));
  const GeneratorPool pu = generator_pool(V, GroupTag::U);
  bool hit = true;
  const OrbitCertificate a = count_orbits_cached(V, pu, dir, &hit);
  CHECK_FALSE(hit);
  const OrbitCertificate b = count_orbits_cached(V, pu, dir, &hit);
  CHECK(hit);
  CHECK(a.bfs_orbit_count == b.bfs_orbit_count);
  CHECK(a.exact == b.exact);
  REQUIRE(a.orbits.size() == b.orbits.size());
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    CHECK(a.orbits[i].representative == b.orbits[i].representative);
    CHECK(a.orbits[i].size == b.orbits[i].size);
    CHECK(a.orbits[i].label == b.orbits[i].label);
  }
  const auto file = orbit_cache_path(dir, V.params(), GroupTag::U);
  CHECK_FALSE(read_orbit_cache(file, V, generator_pool(V, GroupTag::SU)).has_value());
  CHECK_FALSE(read_orbit_cache(file, HermitianSpace(RingParams::make(3, 1, 1)), pu).has_value());
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  CHECK_FALSE(read_orbit_cache(file, V, pu).has_value());
  std::filesystem::remove_all(dir);
}

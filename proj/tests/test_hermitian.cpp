#include <doctest.h>

#include <random>
#include <set>

#include "weilrep/hermitian.hpp"

using namespace weilrep;

namespace {

HVector random_vector(const HermitianSpace& V, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, V.size() - 1);
  return V.from_index(d(rng));
}

}  // namespace

TEST_CASE("symplectic basis") {
  const HermitianSpace V(RingParams::make(3, 2, 2));
  const Ring& A = V.ring();
  for (int i = 0; i < V.n(); ++i)
    for (int j = 0; j < V.n(); ++j) {
      CHECK(V.herm(V.u(i), V.v(j)) == (i == j ? A.one() : A.zero()));
      CHECK(V.herm(V.u(i), V.u(j)) == A.zero());
      CHECK(V.herm(V.v(i), V.v(j)) == A.zero());
    }
}

TEST_CASE("h is skew hermitian and sesquilinear, f is alternating") {
  for (int l = 1; l <= 3; ++l) {
    const HermitianSpace V(RingParams::make(3, l, 2));
    const Ring& A = V.ring();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, A.size() - 1);
    for (int t = 0; t < 300; ++t) {
      const HVector x = random_vector(V, rng), y = random_vector(V, rng);
      const AElem a = A.from_index(pick(rng)), b = A.from_index(pick(rng));
      CHECK(V.herm(y, x) == A.neg(A.involution(V.herm(x, y))));
      CHECK(V.herm(V.scale(a, x), V.scale(b, y)) ==
            A.mul(A.mul(A.involution(a), b), V.herm(x, y)));
      CHECK(V.alt_f(x, x) == 0);
      CHECK(V.alt_f(x, y) == mod(-V.alt_f(y, x), A.r_mod()));
    }
  }
}

TEST_CASE("index round trip and mixed coordinates") {
  const HermitianSpace V(RingParams::make(3, 2, 1));
  for (std::uint64_t i = 0; i < V.size(); ++i) {
    const HVector x = V.from_index(i);
    CHECK(V.index(x) == i);
    CHECK(V.from_mixed(V.mixed(x)) == x);
  }
}

// Brute-force oracles over all of V at p = 3, l = 2, n = 1.
TEST_CASE("submodule lattice, perpendiculars and duals by enumeration") {
  const HermitianSpace V(RingParams::make(3, 2, 1));
  const int top = 2 * V.params().ell - 1;
  std::vector<HVector> all;
  V.for_each([&](std::uint64_t, const HVector& x) { all.push_back(x); });
  REQUIRE(all.size() == V.size());

  for (int k = 0; k <= top; ++k) {
    const SubmoduleDesc Wk = V.ideal_multiple(k);
    std::vector<HVector> members;
    for (const auto& x : all)
      if (V.depth(x) >= k) members.push_back(x);
    CHECK(V.cardinality(Wk) == members.size());
    for (const auto& x : all) CHECK(V.contains(Wk, x) == (V.depth(x) >= k));

    // perp by pairing against every member
    std::uint64_t perp = 0;
    const SubmoduleDesc P = V.perp(Wk);
    for (const auto& x : all) {
      bool orth = true;
      for (const auto& y : members) orth = orth && V.alt_f(x, y) == 0;
      perp += orth ? 1 : 0;
      CHECK(orth == V.contains(P, x));
      CHECK(orth == V.contains(V.perp_of(k), x));
    }
    CHECK(perp * members.size() == V.size());
    CHECK(V.enumerate(Wk).size() == members.size());
  }

  const Int q = V.params().p;
  for (int i = 1; i <= V.params().ell; ++i) {
    // V(m^i) = {x : f(x, V) in p^i R}
    const SubmoduleDesc D = V.dual_submodule(i);
    for (const auto& x : all) {
      bool in = true;
      for (const auto& y : V.additive_generators()) in = in && V.alt_f(x, y) % ipow(q, i) == 0;
      CHECK(in == V.contains(D, x));
      CHECK(in == (V.depth(x) >= 2 * i - 1));
    }
  }
}

TEST_CASE("image of h(x, x) is the skew part") {
  const HermitianSpace V(RingParams::make(3, 2, 1));
  std::set<AElem> image;
  V.for_each([&](std::uint64_t, const HVector& x) { image.insert(V.herm(x, x)); });
  const Ring& A = V.ring();
  std::set<AElem> skew;
  for (const auto& a : A.elements())
    if (A.involution(a) == A.neg(a)) skew.insert(a);
  CHECK(image == skew);
}

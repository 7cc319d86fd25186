#include <doctest.h>

#include <random>

#include "weilrep/weil.hpp"

using namespace weilrep;

namespace {

RLinearMap random_element(const HermitianSpace& V, const GeneratorPool& pool, std::mt19937_64& rng,
                          int length) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.elements.size() - 1);
  RLinearMap g = identity_map(V);
  for (int k = 0; k < length; ++k) g = compose(V, g, pool.elements[pick(rng)].map);
  return g;
}

std::vector<Mat<Complex>> dense_generators(const Schrodinger& S, const RLinearMap* g) {
  std::vector<Mat<Complex>> out;
  for (const auto& k : S.generators())
    out.push_back(to_dense<Complex>(S.op(g ? heis_conj(S.space(), *g, k) : k)));
  return out;
}

}  // namespace

TEST_CASE("modular roots of unity") {
  for (Int order : {3, 9, 18, 27, 54, 125, 250}) {
    const ModP z = ModP::root_of_unity(1, order);
    ModP acc = ModP(1);
    for (Int k = 0; k < order; ++k) {
      CHECK(ModP::root_of_unity(k, order) == acc);
      if (k > 0) CHECK(acc != ModP(1));
      acc = acc * z;
    }
    CHECK(acc == ModP(1));
  }
}

// Dense Kronecker oracle: the solution space of T S(k) = S(gk) T has dimension 1, and the
// structured intertwiner lies in it.
TEST_CASE("Schur dimension one against the dense Kronecker system") {
  for (auto [p, l] : {std::pair<Int, int>{3, 1}, {5, 1}, {3, 2}}) {
    const WeilModule W(RingParams::make(p, l, 1));
    const HermitianSpace& V = W.space();
    const GeneratorPool pool = generator_pool(V, GroupTag::Sp);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 6; ++t) {
      const RLinearMap g = random_element(V, pool, rng, 5);
      const auto a = dense_generators(W.schrodinger(), nullptr);
      const auto b = dense_generators(W.schrodinger(), &g);
      CHECK(hom_dimension<Complex>(a, b, 1e-9) == 1);
      CHECK(W.intertwiner_solution_dim(g) == 1);
      const PhaseMatrix T = W.intertwiner(g);
      CHECK(W.check_intertwining(T, g));
      const Mat<Complex> dt = to_dense<Complex>(T);
      double r = 0;
      for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, (dt * a[k] - b[k] * dt).cwiseAbs().maxCoeff());
      CHECK(r < 1e-9);
      CHECK(T == normalized(T));
    }
  }
}

TEST_CASE("intertwiners of M-preserving elements are monomial") {
  const WeilModule W(RingParams::make(3, 2, 1));
  const HermitianSpace& V = W.space();
  for (const auto& e : generator_pool(V, GroupTag::U).elements)
    if (W.preserves_m(e.map)) CHECK(to_monomial(W.intertwiner(e.map)).has_value());
}

TEST_CASE("non-symplectic maps are rejected") {
  const WeilModule W(RingParams::make(5, 1, 1));
  const HermitianSpace& V = W.space();
  const RLinearMap twice = map_from_function(V, [&](const HVector& x) { return V.scale_r(2, x); });
  CHECK_THROWS_AS(W.intertwiner(twice), ParamError);
}

TEST_CASE("N-action and parity") {
  for (auto [p, l] : {std::pair<Int, int>{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const WeilModule W(RingParams::make(p, l, 1));
    const Ring& A = W.space().ring();
    const auto N = A.norm_one_group();
    for (const auto& a : N)
      for (const auto& b : N) CHECK(compose(W.n_action(a), W.n_action(b)) == W.n_action(A.mul(a, b)));
    CHECK(W.n_action(A.neg(A.one())) == W.parity());
    const int c = W.permutation_normalization(W.parity());
    CHECK(c == (((p - 1) / 2) % 2 == 0 ? 1 : -1));
    const Index plus = parity_basis(W, 1).cols(), minus = parity_basis(W, -1).cols();
    CHECK(static_cast<std::size_t>(plus + minus) == W.dim());
    CHECK(plus == (static_cast<Index>(W.dim()) + 1) / 2);
  }
}

TEST_CASE("normalized Weil operators multiply up to a sign, trivially when q^n = 1 mod 4") {
  for (auto [p, l, n] : {std::tuple<Int, int, int>{3, 1, 1}, {5, 1, 1}, {3, 2, 1}, {3, 1, 2}}) {
    const WeilModule W(RingParams::make(p, l, n));
    const HermitianSpace& V = W.space();
    const GeneratorPool pool = generator_pool(V, GroupTag::Sp);
    const bool one = ipow(p, n) % 4 == 1;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
      const RLinearMap g = random_element(V, pool, rng, 3), h = random_element(V, pool, rng, 3);
      const auto wg = weil_normalize(W, W.intertwiner(g)), wh = weil_normalize(W, W.intertwiner(h));
      const auto wgh = weil_normalize(W, W.intertwiner(compose(V, g, h)));
      const Mat<Complex> prod = wg.w * wh.w;
      const double dp = (prod - wgh.w).cwiseAbs().maxCoeff();
      const double dm = (prod + wgh.w).cwiseAbs().maxCoeff();
      CHECK(std::min(dp, dm) < 1e-9);
      if (one) CHECK(dp < 1e-9);
      const Mat<Complex> ww = wg.w.adjoint() * wg.w;
      CHECK((ww - Mat<Complex>::Identity(ww.rows(), ww.cols())).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

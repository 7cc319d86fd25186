#include <doctest.h>

#include <algorithm>

#include "weilrep/decomposition.hpp"

using namespace weilrep;

namespace {

template <class S>
std::vector<Int> dims(const std::vector<Block<S>>& bl) {
  std::vector<Int> d;
  for (const auto& b : bl) d.push_back(b.basis.cols());
  return d;
}

std::vector<Int> sorted_desc(std::vector<Int> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace

TEST_CASE("dimension formulas") {
  CHECK(top_dimension(3, 2, 1) == 4);
  CHECK(top_dimension(3, 3, 1) == 12);
  CHECK(top_dimension(3, 2, 2) == 120);
  CHECK(classical_plus_dimension(3, 1) == 1);
  CHECK(classical_minus_dimension(3, 1) == 2);
  CHECK(classical_plus_dimension(5, 1) == 3);
  CHECK(classical_plus_dimension(7, 1) == 3);
  CHECK(classical_plus_dimension(3, 2) == 5);
  for (auto [p, l, n] : {std::tuple<Int, int, int>{3, 2, 1}, {3, 3, 1}, {3, 2, 2}, {5, 2, 1}, {5, 3, 2}}) {
    const PredictedDims d = predicted_dimensions(RingParams::make(p, l, n));
    Int sum = 0;
    for (Int x : d.u_constituents) sum += x;
    CHECK(sum == d.dim_x);
    CHECK(d.dim_x == ipow(p, (2 * l - 1) * n));
    CHECK(static_cast<Int>(d.u_constituents.size()) == 2 * (ipow(p, l) - 1) / (p - 1));
    Int layers = 0;
    for (auto [a, b] : d.sp_layers) layers += a + b;
    CHECK(layers == d.dim_x);
  }
}

TEST_CASE("U-decomposition at p = 3, l = 2, n = 1") {
  const WeilModule W(RingParams::make(3, 2, 1));
  const auto bl = u_constituents<Complex>(W, 1e-9);
  CHECK(dims(bl) == std::vector<Int>{4, 4, 4, 4, 4, 4, 1, 2});
  CHECK(bl.front().label == "Top(phi_0)");
  CHECK(bl[6].label.rfind("Bot/", 0) == 0);
  Mat<Complex> all(W.dim(), 0);
  for (const auto& b : bl) {
    CHECK(b.basis.cols() == b.predicted);
    Mat<Complex> next(W.dim(), all.cols() + b.basis.cols());
    next << all, b.basis;
    all = next;
  }
  // Orthonormal blocks, mutually orthogonal.
  CHECK((all.adjoint() * all - Mat<Complex>::Identity(27, 27)).cwiseAbs().maxCoeff() < 1e-9);

  const GeneratorPool pool = generator_pool(W.space(), GroupTag::U);
  const PoolOperators ops = pool_operators(W, pool, false);
  for (const auto& b : bl) {
    CHECK(invariance_residual<Complex>(ops, b.basis, false, 0) < 1e-9);
    CHECK(block_commutant<Complex>(W, ops, b.basis, 1e-9) == 1);
  }
  CHECK(commutant_on_x<Complex>(W, pool, 1e-9).dim == 8);
  CHECK(commutant_on_x<Complex>(W, generator_pool(W.space(), GroupTag::Sp), 1e-9).dim == 4);
}

TEST_CASE("dense commutant of all pool operators agrees with the monomial reduction") {
  for (auto [p, l] : {std::pair<Int, int>{3, 1}, {5, 1}, {3, 2}}) {
    const WeilModule W(RingParams::make(p, l, 1));
    for (GroupTag g : {GroupTag::U, GroupTag::Sp}) {
      const GeneratorPool pool = generator_pool(W.space(), g);
      const PoolOperators ops = pool_operators(W, pool, false);
      std::vector<Mat<Complex>> dense;
      for (const auto& t : ops.t) dense.push_back(to_dense<Complex>(t));
      const Index d = commutant_dimension_dense<Complex>(dense, 1e-9);
      CHECK(static_cast<Index>(commutant_on_x<Complex>(W, pool, 1e-9).dim) == d);
      CHECK(static_cast<Index>(commutant_on_x<ModP>(W, pool, 0).dim) == d);
      CHECK(d == static_cast<Index>(predicted_orbit_count(W.params(), g)));
    }
  }
}

TEST_CASE("float and exact backends give the same block dimensions") {
  for (auto [l, n] : {std::pair<int, int>{1, 1}, {2, 1}, {1, 2}, {3, 1}}) {
    const WeilModule W(RingParams::make(3, l, n));
    const auto f = u_constituents<Complex>(W, 1e-9);
    const auto e = u_constituents<ModP>(W, 0);
    CHECK(dims(f) == dims(e));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i].label == e[i].label);
    const auto sf = sp_filtration<Complex>(W, 1e-9);
    const auto se = sp_filtration<ModP>(W, 0);
    CHECK(sf.chain_dims == se.chain_dims);
    CHECK(dims(sf.layers) == dims(se.layers));
  }
}

TEST_CASE("classical split") {
  for (auto [p, want] : {std::pair<Int, std::vector<Int>>{3, {2, 1}}, {5, {3, 2}}, {7, {4, 3}}}) {
    const WeilModule W(RingParams::make(p, 1, 1));
    CHECK(sorted_desc(dims(classical_split<Complex>(W))) == want);
    CHECK(sorted_desc(dims(classical_split<ModP>(W))) == want);
  }
}

TEST_CASE("Bot and Top") {
  const WeilModule W(RingParams::make(3, 3, 1));
  CHECK(bot_supports(W).size() == 27);
  CHECK(bot_transversal(W).size() == 27);
  const Mat<Complex> B = bot_basis<Complex>(W);
  CHECK(remove_bot<Complex>(W, B).cwiseAbs().maxCoeff() < 1e-9);
  const auto top = top_eigenspaces<Complex>(W, 1e-9);
  CHECK(top.size() == 18);
  for (const auto& b : top) {
    CHECK(b.basis.cols() == 12);
    CHECK((B.adjoint() * b.basis).cwiseAbs().maxCoeff() < 1e-9);
  }
  const auto bl = u_constituents<Complex>(W, 1e-9);
  CHECK(sorted_desc(dims(bl)) == predicted_dimensions(W.params()).u_constituents);
}

TEST_CASE("Sp filtration") {
  const WeilModule W(RingParams::make(3, 2, 1));
  const auto f = sp_filtration<Complex>(W, 1e-9);
  CHECK(f.chain_dims == std::vector<std::size_t>{3, 27});
  CHECK(dims(f.layers) == std::vector<Int>{12, 12, 1, 2});
  CHECK(f.layers.front().label == "Y_1+");
  const PoolOperators ops = pool_operators(W, generator_pool(W.space(), GroupTag::Sp), false);
  for (const auto& b : f.layers) {
    CHECK(invariance_residual<Complex>(ops, b.basis, false, 0) < 1e-9);
    CHECK(block_commutant<Complex>(W, ops, b.basis, 1e-9) == 1);
  }
}

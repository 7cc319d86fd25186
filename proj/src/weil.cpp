#include "weilrep/weil.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weilrep {

PhaseMatrix from_monomial(const MonomialOp& op) {
  PhaseMatrix t{op.dim(), op.order, std::vector<PhaseVector>(op.dim())};
  for (std::size_t v = 0; v < op.dim(); ++v)
    t.cols[v] = PhaseVector{op.order, {{op.perm[v], op.phase[v]}}};
  return t;
}

std::optional<MonomialOp> to_monomial(const PhaseMatrix& t) {
  MonomialOp op{t.order, std::vector<std::uint32_t>(t.dim), std::vector<Int>(t.dim)};
  for (std::size_t v = 0; v < t.dim; ++v) {
    if (t.cols[v].entries.size() != 1) return std::nullopt;
    op.perm[v] = t.cols[v].entries.front().first;
    op.phase[v] = t.cols[v].entries.front().second;
  }
  return op;
}

PhaseMatrix normalized(PhaseMatrix t) {
  for (const auto& col : t.cols) {
    if (col.entries.empty()) continue;
    const Int shift = col.entries.front().second;
    for (auto& c : t.cols)
      for (auto& [i, e] : c.entries) e = mod(e - shift, t.order);
    break;
  }
  return t;
}

MonomialOp with_order(const MonomialOp& op, Int order) {
  if (order % op.order != 0) throw ParamError("with_order: order must be a multiple");
  MonomialOp out = op;
  out.order = order;
  for (auto& e : out.phase) e *= order / op.order;
  return out;
}

WeilModule::WeilModule(RingParams params, Int lambda_unit) : S_(params, lambda_unit) {}

bool WeilModule::preserves_m(const RLinearMap& g) const {
  const auto& V = space();
  const Ring& A = V.ring();
  for (int j = 0; j < V.n(); ++j)
    for (const HVector& m : {V.u(j), V.scale(A.pi(), V.u(j))}) {
      const HVector gm = apply(V, g, m);
      for (int i = 0; i < V.n(); ++i)
        if (gm.c[V.n() + i] != A.zero()) return false;
    }
  return true;
}

PhaseMatrix WeilModule::intertwiner(const RLinearMap& g) const {
  const auto& V = space();
  if (!is_symplectic(V, g)) throw ParamError("intertwiner: element is not symplectic");
  // T e_0 spans the fixed space of S(0, g m), m in M; then T e_v = S(0, g v) T e_0.
  std::vector<HVector> gm;
  for (int j = 0; j < V.n(); ++j) {
    gm.push_back(apply(V, g, V.u(j)));
    gm.push_back(apply(V, g, V.scale(V.ring().pi(), V.u(j))));
  }
  std::vector<MonomialOp> ops;
  for (const auto& w : gm)
    if (w != V.zero()) ops.push_back(S_.translation(w));
  const OrbitPhaseSolution fixed = monomial_fixed_space(ops, true);
  if (fixed.consistent == 0) throw std::runtime_error("intertwiner: empty solution space");
  if (fixed.consistent > 1)
    throw std::runtime_error("intertwiner: solution space has dimension > 1");
  const PhaseVector& y = fixed.basis.front();
  PhaseMatrix t{dim(), order(), std::vector<PhaseVector>(dim())};
  for (std::uint32_t v = 0; v < dim(); ++v)
    t.cols[v] = S_.apply_translation(apply(V, g, S_.q_vector(v)), y);
  return normalized(std::move(t));
}

bool WeilModule::check_intertwining(const PhaseMatrix& t, const RLinearMap& g) const {
  const auto& V = space();
  if (t.dim != dim() || t.order != order()) return false;
  for (const HeisElem& k : S_.generators()) {
    const MonomialOp right = S_.op(k);
    const MonomialOp left = S_.op(heis_conj(V, g, k));
    for (std::uint32_t x = 0; x < dim(); ++x) {
      // (T S(k)) e_x = zeta^{a_x} T e_{sigma x};  (S(gk) T) e_x = S(gk) (T e_x).
      PhaseVector lhs = t.cols[right.perm[x]];
      for (auto& [i, e] : lhs.entries) e = mod(e + right.phase[x], order());
      if (lhs != apply(left, t.cols[x])) return false;
    }
  }
  return true;
}

std::size_t WeilModule::intertwiner_solution_dim(const RLinearMap& g) const {
  const auto& V = space();
  std::vector<MonomialOp> left, right;
  for (const HeisElem& k : S_.generators()) {
    right.push_back(S_.op(k));
    left.push_back(S_.op(heis_conj(V, g, k)));
  }
  return monomial_pair_space(left, right, false).consistent;
}

MonomialOp WeilModule::n_action(const AElem& a) const {
  const auto& V = space();
  const Ring& A = V.ring();
  if (!A.is_unit(a) || A.norm(a) != 1 % A.r_mod())
    throw ParamError("n_action: element is not in N");
  MonomialOp op = MonomialOp::identity(dim(), order());
  for (std::uint32_t v = 0; v < dim(); ++v) op.perm[v] = S_.q_index(V.scale(a, S_.q_vector(v)));
  return op;
}

MonomialOp WeilModule::parity() const { return n_action(space().ring().neg(space().ring().one())); }

int WeilModule::permutation_normalization(const MonomialOp& perm) const {
  if (!perm.is_permutation()) throw ParamError("permutation_normalization: phases present");
  const MonomialOp par = parity();
  if (compose(perm, par) != compose(par, perm))
    throw ParamError("permutation_normalization: operator does not commute with P(-1)");
  // On X- with basis e_v - e_{-v} (v the smaller index of its pair) each basis vector
  // is sent to plus or minus another; on X+ the same permutation has no signs.
  int sign = 1;
  for (std::uint32_t v = 0; v < dim(); ++v) {
    const std::uint32_t mv = par.perm[v];
    if (mv <= v) continue;
    const std::uint32_t w = perm.perm[v];
    if (par.perm[w] < w) sign = -sign;
  }
  return sign;
}

Mat<Complex> parity_basis(const WeilModule& W, int sign) {
  const MonomialOp par = W.parity();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  bool has_zero = false;
  for (std::uint32_t v = 0; v < W.dim(); ++v) {
    if (par.perm[v] == v) has_zero = true;
    if (par.perm[v] > v) pairs.emplace_back(v, par.perm[v]);
  }
  const Index cols = static_cast<Index>(pairs.size()) + (sign > 0 && has_zero ? 1 : 0);
  Mat<Complex> b = Mat<Complex>::Zero(W.dim(), cols);
  Index c = 0;
  if (sign > 0 && has_zero) b(0, c++) = 1.0;
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& [v, mv] : pairs) {
    b(v, c) = h;
    b(mv, c) = sign > 0 ? h : -h;
    ++c;
  }
  return b;
}

WeilOperator weil_normalize(const WeilModule& W, const PhaseMatrix& t, double tol) {
  const Mat<Complex> t0 =
      to_dense<Complex>(t) / std::sqrt(static_cast<double>(std::max<std::size_t>(1, t.weight())));
  const Mat<Complex> bp = parity_basis(W, 1), bm = parity_basis(W, -1);
  double rp = 0, rm = 0;
  const Mat<Complex> mp = restrict_to<Complex>(t0 * bp, bp, &rp);
  const Mat<Complex> mm = restrict_to<Complex>(t0 * bm, bm, &rm);
  const double residual = std::max(rp, rm);
  if (residual > tol) throw std::runtime_error("weil_normalize: T does not preserve X+/X-");
  const Complex dp = mp.rows() ? Eigen::PartialPivLU<Mat<Complex>>(mp).determinant() : Complex(1);
  const Complex dm = mm.rows() ? Eigen::PartialPivLU<Mat<Complex>>(mm).determinant() : Complex(1);
  const Complex c = dm / dp;
  return WeilOperator{c * t0, c, residual};
}

}  // namespace weilrep

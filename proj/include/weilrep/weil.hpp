#pragma once

// Intertwiners T with T S(k) = S(^g k) T for g in Sp, computed exactly as phase
// matrices, the N-action P(a), and c(g)-normalized Weil operators.

#include <optional>
#include <vector>

#include "weilrep/heisenberg.hpp"
#include "weilrep/linalg.hpp"

namespace weilrep {

/// Square matrix whose nonzero entries are roots of unity, stored by sparse columns.
struct PhaseMatrix {
  std::size_t dim = 0;
  Int order = 1;
  std::vector<PhaseVector> cols;

  /// Nonzero entries per column (constant for intertwiners).
  std::size_t weight() const { return cols.empty() ? 0 : cols.front().entries.size(); }
  bool operator==(const PhaseMatrix&) const = default;
};

PhaseMatrix from_monomial(const MonomialOp& op);
/// Defined when every column has a single nonzero entry.
std::optional<MonomialOp> to_monomial(const PhaseMatrix& t);
/// Scales so the first nonzero entry in column-major order equals 1.
PhaseMatrix normalized(PhaseMatrix t);
/// Re-expresses phases over a multiple of the current order.
MonomialOp with_order(const MonomialOp& op, Int order);

class WeilModule {
 public:
  explicit WeilModule(RingParams params, Int lambda_unit = 1);

  const Schrodinger& schrodinger() const { return S_; }
  const HermitianSpace& space() const { return S_.space(); }
  const RingParams& params() const { return S_.params(); }
  std::size_t dim() const { return S_.dim(); }
  Int order() const { return S_.order(); }

  /// g M = M for the A-span M of u_1..u_n.
  bool preserves_m(const RLinearMap& g) const;

  /// The unique (up to scalar) intertwiner, normalized. Throws ParamError for
  /// non-symplectic g and std::runtime_error when the solution space is not 1-dimensional.
  PhaseMatrix intertwiner(const RLinearMap& g) const;
  /// Exact check of T S(k) = S(^g k) T on the H-generators.
  bool check_intertwining(const PhaseMatrix& t, const RLinearMap& g) const;
  /// Dimension of the joint solution space, by orbit-phase propagation on matrix entries.
  std::size_t intertwiner_solution_dim(const RLinearMap& g) const;

  /// P(a) e_v = e_{a v}, a in N.
  MonomialOp n_action(const AElem& a) const;
  MonomialOp parity() const;
  /// det(P|X-) / det(P|X+) for a permutation operator commuting with P(-1): a sign.
  int permutation_normalization(const MonomialOp& perm) const;

 private:
  Schrodinger S_;
};

// ---- Dense conversions ----------------------------------------------------------

template <class S>
std::vector<S> root_table(Int order) {
  std::vector<S> t(static_cast<std::size_t>(order));
  for (Int k = 0; k < order; ++k) t[k] = ScalarTraits<S>::root(k, order);
  return t;
}

template <class S>
Mat<S> to_dense(const PhaseMatrix& t) {
  const auto roots = root_table<S>(t.order);
  Mat<S> m = Mat<S>::Zero(t.dim, t.dim);
  for (std::size_t j = 0; j < t.cols.size(); ++j)
    for (const auto& [i, e] : t.cols[j].entries) m(i, j) = roots[e];
  return m;
}

template <class S>
Mat<S> to_dense(const MonomialOp& op) {
  return to_dense<S>(from_monomial(op));
}

/// Columns from sparse phase vectors.
template <class S>
Mat<S> to_dense(const std::vector<PhaseVector>& vs, std::size_t dim) {
  Mat<S> m = Mat<S>::Zero(dim, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    const auto roots = root_table<S>(vs[j].order);
    for (const auto& [i, e] : vs[j].entries) m(i, j) = roots[e];
  }
  return m;
}

/// T * B using the sparse columns of T.
template <class S>
Mat<S> apply_sparse(const PhaseMatrix& t, const Mat<S>& b) {
  const auto roots = root_table<S>(t.order);
  Mat<S> out = Mat<S>::Zero(t.dim, b.cols());
  for (std::size_t j = 0; j < t.cols.size(); ++j)
    for (const auto& [i, e] : t.cols[j].entries) out.row(i) += roots[e] * b.row(j);
  return out;
}

template <class S>
Mat<S> apply_sparse(const MonomialOp& op, const Mat<S>& b) {
  const auto roots = root_table<S>(op.order);
  Mat<S> out(op.dim(), b.cols());
  for (std::size_t v = 0; v < op.dim(); ++v) out.row(op.perm[v]) = roots[op.phase[v]] * b.row(v);
  return out;
}

// ---- Normalized Weil operators (float backend) ---------------------------------

/// Orthonormal basis of the +1 (sign > 0) or -1 eigenspace of P(-1).
Mat<Complex> parity_basis(const WeilModule& W, int sign);

struct WeilOperator {
  Mat<Complex> w;   // c * T / sqrt(weight), unitary
  Complex c;        // normalization factor applied to the unitary T / sqrt(weight)
  double residual;  // failure of T to preserve the parity eigenspaces
};

/// W = c T with c = det(T|X-) / det(T|X+) computed on the unitary rescaling of T.
/// Throws std::runtime_error if T does not preserve X+ and X-.
WeilOperator weil_normalize(const WeilModule& W, const PhaseMatrix& t, double tol = 1e-8);

}  // namespace weilrep

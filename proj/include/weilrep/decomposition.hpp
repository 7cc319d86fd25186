#pragma once

// Bot/Top splitting, N-eigenspaces, the recursive U-decomposition, the Sp filtration,
// predicted dimension formulas and commutant dimensions.

#include <string>
#include <vector>

#include "weilrep/weil.hpp"

namespace weilrep {

// ---- Predictions ----------------------------------------------------------------

/// (q^((2k-1)n) - q^((2k-3)n)) / (2 q^(k-1)) where k = l - j, the Top-type dimension
/// at recursion depth j.
Int top_dimension(Int q, int k, int n);
/// (q^n + 1)/2 if q^n = 1 mod 4 else (q^n - 1)/2; the minus variant is the complement.
Int classical_plus_dimension(Int q, int n);
Int classical_minus_dimension(Int q, int n);

struct PredictedDims {
  /// Constituent dimensions with multiplicities, largest first.
  std::vector<Int> u_constituents;
  /// |G_i|, i = 0..2l-2.
  std::vector<Int> g_sizes;
  /// dim X+-(phi) for phi in G_(2s) \ G_(2s+2), s = 0..l-2; then phi = 1 (+, -).
  std::vector<Int> isotypic_strata;
  Int isotypic_trivial_plus = 0;
  Int isotypic_trivial_minus = 0;
  /// Y_i+- dims of the Sp filtration, i = 1..l: (plus, minus).
  std::vector<std::pair<Int, Int>> sp_layers;
  Int dim_x = 0;
  Int dim_bot = 0;
};

PredictedDims predicted_dimensions(const RingParams& params);

// ---- The norm-one group ------------------------------------------------------------

struct NormGroup {
  std::vector<AElem> elements;  // canonical order
  AElem generator;
  Int order = 0;
  /// generator^k for k = 0..order-1.
  std::vector<AElem> powers;
};

/// N together with a generator; throws std::runtime_error if N is not cyclic.
NormGroup norm_group(const Ring& A);
/// N cap (1 + r^j) as exponents k of the generator of N cap (1 + r).
struct PrincipalUnits {
  AElem generator;  // generates N cap (1 + r)
  Int order = 0;    // p^(l-1)
  std::vector<AElem> powers;
};
PrincipalUnits principal_units(const Ring& A);

// ---- Subspaces ------------------------------------------------------------------------

template <class S>
struct Block {
  std::string label;
  Mat<S> basis;         // orthonormal (float) or independent columns (exact)
  Int predicted = 0;
};

/// t(w) = pi * lift(w) for w running over the Q-index of the quotient model (p, l-1, n).
/// Requires l > 1.
std::vector<std::uint32_t> bot_transversal(const WeilModule& W);
/// Supports of E_t = sum over z in nQ of e_(t+z), in transversal order.
std::vector<std::vector<std::uint32_t>> bot_supports(const WeilModule& W);

/// Columns E_t (normalized for the float backend).
template <class S>
Mat<S> bot_basis(const WeilModule& W);

/// (I - projection onto Bot) applied to b.
template <class S>
Mat<S> remove_bot(const WeilModule& W, const Mat<S>& b);

/// Sparse basis of X(phi_j), phi_j(a0) = exp(2 pi i j / |N|), for the generator a0 of N.
std::vector<PhaseVector> n_isotypic_basis(const WeilModule& W, const NormGroup& N, Int j);

template <class S>
std::vector<Block<S>> top_eigenspaces(const WeilModule& W, double tol);

/// ell = 1: eigenspaces of W(-1) = c(-1) P(-1), labels "X+" and "X-".
template <class S>
std::vector<Block<S>> classical_split(const WeilModule& W);

/// Full recursive U-decomposition: Top(phi) blocks then the pulled-back Bot blocks.
template <class S>
std::vector<Block<S>> u_constituents(const WeilModule& W, double tol);

/// Y_i^+- of the Sp filtration together with the chain dims X(r^k V), k = l..2l-1.
template <class S>
struct SpFiltration {
  std::vector<std::size_t> chain_dims;
  std::vector<Block<S>> layers;
};

template <class S>
SpFiltration<S> sp_filtration(const WeilModule& W, double tol);

// ---- Operators of a pool ----------------------------------------------------------

struct PoolOperators {
  std::vector<std::string> names;
  std::vector<PhaseMatrix> t;
  std::vector<bool> core;
};

PoolOperators pool_operators(const WeilModule& W, const GeneratorPool& pool, bool core_only);

struct CommutantResult {
  std::size_t dim = 0;
  std::size_t monomial_dim = 0;     // dim of the commutant of the monomial part
  std::size_t monomial_ops = 0;
  std::size_t constraint_ops = 0;   // non-monomial operators imposed afterwards
  std::string method;
};

/// Commutant of the pool's Weil operators on all of X.
template <class S>
CommutantResult commutant_on_x(const WeilModule& W, const GeneratorPool& pool, double tol);

/// Dense Kronecker commutant of restricted core operators on a subspace.
template <class S>
Index block_commutant(const WeilModule& W, const PoolOperators& ops, const Mat<S>& basis,
                      double tol);

/// Largest invariance residual of a subspace under the given operators (0/1 for exact).
template <class S>
double invariance_residual(const PoolOperators& ops, const Mat<S>& basis, bool random_probe,
                           std::uint64_t seed);

}  // namespace weilrep

#pragma once

// Heisenberg group H = R x V and the Schroedinger representation on X = C[Q], with
// operators kept in exact monomial form.

#include <cstdint>
#include <vector>

#include "weilrep/group.hpp"

namespace weilrep {

struct HeisElem {
  Int r = 0;
  HVector u;
  bool operator==(const HeisElem&) const = default;
};

HeisElem heis_mul(const HermitianSpace& V, const HeisElem& a, const HeisElem& b);
HeisElem heis_inverse(const HermitianSpace& V, const HeisElem& a);
/// ^g k = (r, g u).
HeisElem heis_conj(const HermitianSpace& V, const RLinearMap& g, const HeisElem& k);

/// Sparse vector with entries exp(2 pi i e / order); entries are (index, e).
struct PhaseVector {
  Int order = 1;
  std::vector<std::pair<std::uint32_t, Int>> entries;  // sorted by index
  bool operator==(const PhaseVector&) const = default;
};

/// e_v -> exp(2 pi i phase[v] / order) e_{perm[v]}.
struct MonomialOp {
  Int order = 1;
  std::vector<std::uint32_t> perm;
  std::vector<Int> phase;

  std::size_t dim() const { return perm.size(); }
  static MonomialOp identity(std::size_t dim, Int order);
  bool is_permutation() const;
  bool operator==(const MonomialOp&) const = default;
};

/// a * b (apply b first). Orders must agree.
MonomialOp compose(const MonomialOp& a, const MonomialOp& b);
MonomialOp inverse(const MonomialOp& a);
PhaseVector apply(const MonomialOp& a, const PhaseVector& x);
/// Multiplies every phase by exp(2 pi i e / order).
MonomialOp twist(const MonomialOp& a, Int e);

/// Result of solving x_{sigma(v)} = zeta^{phi(v)} x_v over an orbit structure.
struct OrbitPhaseSolution {
  std::size_t orbits = 0;
  std::size_t consistent = 0;
  /// One vector per consistent orbit, in order of least node.
  std::vector<PhaseVector> basis;
};

/// Common fixed vectors of a set of monomial operators of equal order.
OrbitPhaseSolution monomial_fixed_space(const std::vector<MonomialOp>& ops,
                                        bool want_basis = true);

/// Solutions T of T = L_k T R_k^{-1} for all k, indexed by node z * dim + x for T_{z,x}.
OrbitPhaseSolution monomial_pair_space(const std::vector<MonomialOp>& left,
                                       const std::vector<MonomialOp>& right,
                                       bool want_basis = false);

class Schrodinger {
 public:
  /// lambda(r) = exp(2 pi i lambda_unit r / p^l); lambda_unit must be a unit mod p.
  explicit Schrodinger(RingParams params, Int lambda_unit = 1);

  const HermitianSpace& space() const { return V_; }
  const RingParams& params() const { return V_.params(); }
  Int lambda_unit() const { return unit_; }
  /// Phase order p^l.
  Int order() const { return V_.ring().r_mod(); }
  /// |Q| = p^((2l-1)n).
  std::size_t dim() const { return dim_; }

  std::uint32_t q_index(const HVector& v) const;
  HVector q_vector(std::uint32_t i) const;
  HVector m_part(const HVector& x) const;
  HVector q_part(const HVector& x) const;

  MonomialOp op(const HeisElem& k) const;
  MonomialOp translation(const HVector& w) const { return op(HeisElem{0, w}); }
  /// (1,0), (0,u_i), (0,v_i), (0,pi u_i), (0,pi v_i).
  std::vector<HeisElem> generators() const;

  /// S(0, w) x for a sparse x, without materializing S(0, w).
  PhaseVector apply_translation(const HVector& w, const PhaseVector& x) const;

  /// Common fixed space of S(0, w), w over R-module generators of W. Throws
  /// ParamError when W is not totally isotropic for f.
  OrbitPhaseSolution fixed_space(const std::vector<HVector>& generators) const;
  OrbitPhaseSolution fixed_space(const SubmoduleDesc& W) const;

 private:
  HermitianSpace V_;
  Int unit_;
  std::size_t dim_;
};

std::size_t schrodinger_dim(const RingParams& params);

}  // namespace weilrep

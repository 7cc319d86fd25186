#pragma once

// The free A-module V = A^(2n) in the symplectic basis u_1..u_n, v_1..v_n with the
// skew hermitian form h(u_i, v_j) = delta_ij, the alternating R-form f = Re h, and the
// submodule lattice r^k V.

#include <cstdint>
#include <functional>
#include <vector>

#include "weilrep/ring.hpp"

namespace weilrep {

struct HVector {
  std::vector<AElem> c;  // u_1..u_n, v_1..v_n coordinates
  bool operator==(const HVector&) const = default;
};

/// Intensional description of an R-submodule of V.
struct SubmoduleDesc {
  enum class Kind { IdealMultiple, Dual, PerpOf };
  Kind kind = Kind::IdealMultiple;
  /// k for r^k V, i for V(m^i), k for (r^k V)^perp.
  int exponent = 0;
  bool operator==(const SubmoduleDesc&) const = default;
};

class HermitianSpace {
 public:
  explicit HermitianSpace(RingParams params);

  const Ring& ring() const { return ring_; }
  const RingParams& params() const { return ring_.params(); }
  int n() const { return ring_.params().n; }
  int rank() const { return 2 * n(); }

  /// |V| = |A|^(2n).
  std::uint64_t size() const { return size_; }

  HVector zero() const { return HVector{std::vector<AElem>(rank(), ring_.zero())}; }
  HVector basis(int j) const;  // j < n: u_(j+1); j >= n: v_(j-n+1)
  HVector u(int i) const { return basis(i); }
  HVector v(int i) const { return basis(n() + i); }

  HVector add(const HVector& x, const HVector& y) const;
  HVector sub(const HVector& x, const HVector& y) const;
  HVector neg(const HVector& x) const;
  HVector scale(const AElem& a, const HVector& x) const;
  HVector scale_r(Int r, const HVector& x) const;

  /// h(x, y) = sum x_i^* J_ij y_j with J = [[0, I], [-I, 0]].
  AElem herm(const HVector& x, const HVector& y) const;
  Int alt_f(const HVector& x, const HVector& y) const { return herm(x, y).r; }
  /// pi-coordinate of h(x, y); only defined modulo p^(l-1), canonical residue returned.
  Int k_part(const HVector& x, const HVector& y) const { return herm(x, y).s; }

  /// min valuation over coordinates; depth(0) = 2l - 1.
  int depth(const HVector& x) const;

  std::uint64_t index(const HVector& x) const;
  HVector from_index(std::uint64_t i) const;
  void for_each(const std::function<void(std::uint64_t, const HVector&)>& fn) const;

  /// u_j, v_j, pi u_j, pi v_j: generators of V as an R-module.
  std::vector<HVector> additive_generators() const;

  SubmoduleDesc ideal_multiple(int k) const;
  /// V(m^i) = {v : f(v, V) in m^i}, 1 <= i <= l.
  SubmoduleDesc dual_submodule(int i) const;
  /// (r^k V)^perp, returned as the ideal multiple r^(2l-1-k) V.
  SubmoduleDesc perp(const SubmoduleDesc& u) const;
  /// Unevaluated descriptor {v : f(v, r^k V) = 0}, membership tested by pairing.
  SubmoduleDesc perp_of(int k) const;

  bool contains(const SubmoduleDesc& d, const HVector& x) const;
  std::uint64_t cardinality(const SubmoduleDesc& d) const;
  /// R-module generators of r^k V.
  std::vector<HVector> module_generators(int k) const;
  /// Materialized elements; throws ParamError above the size threshold.
  std::vector<HVector> enumerate(const SubmoduleDesc& d,
                                 std::uint64_t threshold = 59049) const;

  /// Mixed-modulus coordinates: r-parts (mod p^l) then s-parts (mod p^(l-1)).
  std::vector<Int> mixed(const HVector& x) const;
  HVector from_mixed(const std::vector<Int>& m) const;

 private:
  Ring ring_;
  std::uint64_t size_;
};

}  // namespace weilrep

#pragma once

// Group elements acting on V: A-matrices (unitary group U and SU) and R-linear maps in
// mixed-modulus block form (symplectic group Sp). Generator pools, closure, and the
// orbit machinery with its two-sided certificate.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weilrep/hermitian.hpp"

namespace weilrep {

enum class GroupTag { U, SU, Sp };

std::string to_string(GroupTag g);
/// Accepts "u", "su", "sp" (any case).
GroupTag parse_group(const std::string& s);

/// Square matrix over A, row-major. Column j is the image of basis vector j.
class AMatrix {
 public:
  AMatrix() = default;
  explicit AMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

  int dim() const { return dim_; }
  AElem& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const AElem& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }
  const std::vector<AElem>& entries() const { return a_; }
  bool operator==(const AMatrix&) const = default;

 private:
  int dim_ = 0;
  std::vector<AElem> a_;
};

using UnitaryMatrix = AMatrix;

/// R-linear endomorphism of V acting on mixed coordinates z = (r-parts; s-parts).
/// Stored as a (4n x 4n) row-major integer matrix [[B11, B12], [B21, B22]];
/// rows 0..2n-1 are reduced mod p^l, rows 2n..4n-1 mod p^(l-1), and B12 = 0 mod p.
class RLinearMap {
 public:
  RLinearMap() = default;
  RLinearMap(int size, std::vector<Int> m) : size_(size), m_(std::move(m)) {}

  int size() const { return size_; }
  Int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i) * size_ + j]; }
  Int& operator()(int i, int j) { return m_[static_cast<std::size_t>(i) * size_ + j]; }
  const std::vector<Int>& entries() const { return m_; }
  bool operator==(const RLinearMap&) const = default;

 private:
  int size_ = 0;
  std::vector<Int> m_;
};

// ---- A-matrices ----------------------------------------------------------------

AMatrix identity_matrix(const HermitianSpace& V);
AMatrix mat_mul(const HermitianSpace& V, const AMatrix& a, const AMatrix& b);
HVector apply(const HermitianSpace& V, const AMatrix& g, const HVector& x);
/// Transpose composed with the involution entrywise.
AMatrix star_transpose(const HermitianSpace& V, const AMatrix& g);
/// g^{*T} J g == J, exact.
bool is_unitary(const HermitianSpace& V, const AMatrix& g);
AElem det(const HermitianSpace& V, const AMatrix& g);
/// Inverse of a unitary matrix, J^{-1} g^{*T} J.
AMatrix unitary_inverse(const HermitianSpace& V, const AMatrix& g);

/// v -> v + a h(u, v) u for isotropic u.
AMatrix unitary_transvection(const HermitianSpace& V, const HVector& u, Int a);
/// u_i -> alpha u_i, v_i -> (alpha^*)^{-1} v_i.
AMatrix torus(const HermitianSpace& V, int i, const AElem& alpha);
/// u_i -> v_i, v_i -> -u_i.
AMatrix weyl_swap(const HermitianSpace& V, int i);
/// u_i -> u_{perm[i]}, v_i -> v_{perm[i]}.
AMatrix index_permutation(const HermitianSpace& V, const std::vector<int>& perm);
AMatrix scalar_matrix(const HermitianSpace& V, const AElem& a);

// ---- R-linear maps ------------------------------------------------------------

RLinearMap identity_map(const HermitianSpace& V);
/// Map determined by the images of the additive generators e_j, pi e_j.
RLinearMap map_from_function(const HermitianSpace& V,
                             const std::function<HVector(const HVector&)>& fn);
RLinearMap compose(const HermitianSpace& V, const RLinearMap& a, const RLinearMap& b);
HVector apply(const HermitianSpace& V, const RLinearMap& g, const HVector& x);
bool is_well_defined(const HermitianSpace& V, const RLinearMap& g);
/// f(gx, gy) = f(x, y) on all pairs of additive generators, plus well-definedness
/// and injectivity on V/rV.
bool is_symplectic(const HermitianSpace& V, const RLinearMap& g);
RLinearMap embed_unitary(const HermitianSpace& V, const AMatrix& g);
/// v -> v + f(v,u) w + f(v,w) u. Throws ParamError unless f(u, w) = 0.
RLinearMap eichler(const HermitianSpace& V, const HVector& u, const HVector& w);
RLinearMap minus_identity(const HermitianSpace& V);

// ---- Pools --------------------------------------------------------------------

struct PoolElement {
  std::string name;
  RLinearMap map;
  std::optional<AMatrix> unitary;  // set for U and SU pool elements
  /// Member of the small generating subset used for operator-level checks.
  bool core = false;
};

struct GeneratorPool {
  GroupTag group = GroupTag::U;
  std::vector<PoolElement> elements;
  std::uint64_t hash() const;
  std::string description() const;
  std::vector<const PoolElement*> core() const;
};

GeneratorPool generator_pool(const HermitianSpace& V, GroupTag group);

// ---- Enumeration ---------------------------------------------------------------

constexpr std::uint64_t kExhaustiveBound = 10'000'000;

/// All unitary (or det-1 unitary) matrices, by filtering every candidate A-matrix.
/// Throws ParamError if |A|^(4n^2) exceeds the bound.
std::vector<AMatrix> enumerate_group_exhaustive(const HermitianSpace& V, GroupTag group,
                                                std::uint64_t bound = kExhaustiveBound);
/// Products reachable from the pool (U or SU). Throws ParamError past max_size.
std::vector<AMatrix> enumerate_group_closure(const HermitianSpace& V,
                                             const GeneratorPool& pool,
                                             std::uint64_t max_size = 2'000'000);
/// Sp closure as R-linear maps.
std::vector<RLinearMap> enumerate_map_closure(const HermitianSpace& V,
                                              const GeneratorPool& pool,
                                              std::uint64_t max_size = 2'000'000);

/// Congruence subgroup: elements of the list with g = I mod r^(2l-3). Requires l > 1.
std::vector<AMatrix> congruence_subgroup(const HermitianSpace& V,
                                         const std::vector<AMatrix>& group);

// ---- Orbits --------------------------------------------------------------------

/// depth k and the class of h(x0, x0) in S / (S cap r^(2l-1-k)) as an s-residue.
/// The zero vector has depth 2l - 1 and value 0.
struct OrbitLabel {
  int depth = 0;
  Int value = 0;
  auto operator<=>(const OrbitLabel&) const = default;
};

std::string to_string(const OrbitLabel& label, const RingParams& params);

OrbitLabel orbit_invariant(const HermitianSpace& V, const HVector& x);

struct OrbitRecord {
  HVector representative;  // least index in the orbit
  std::uint64_t size = 0;
  OrbitLabel label;
};

struct OrbitCertificate {
  GroupTag group = GroupTag::U;
  std::string pool_description;
  std::uint64_t pool_hash = 0;
  std::vector<OrbitRecord> orbits;
  std::size_t bfs_orbit_count = 0;
  std::size_t invariant_fiber_count = 0;
  /// Every BFS orbit lies in a single invariant fiber.
  bool refines = false;
  bool exact = false;
};

/// Partition of V under the pool (Sp labels are depth cells, U/SU labels are
/// orbit_invariant). Labels are checked on every vector.
OrbitCertificate count_orbits(const HermitianSpace& V, const GeneratorPool& pool);

/// Predicted orbit counts: 2l for Sp, 2(q^(l-1) + ... + 1) for U and SU.
std::size_t predicted_orbit_count(const RingParams& params, GroupTag group);

}  // namespace weilrep

#include "weilrep/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace weilrep {

std::string to_string(GroupTag g) {
  switch (g) {
    case GroupTag::U: return "u";
    case GroupTag::SU: return "su";
    case GroupTag::Sp: return "sp";
  }
  return "?";
}

GroupTag parse_group(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "u") return GroupTag::U;
  if (t == "su") return GroupTag::SU;
  if (t == "sp") return GroupTag::Sp;
  throw ParamError("unknown group '" + s + "' (expected u, su or sp)");
}

// ---- A-matrices ----------------------------------------------------------------

namespace {

AMatrix gram_matrix(const HermitianSpace& V) {
  const Ring& A = V.ring();
  AMatrix j(V.rank());
  for (int i = 0; i < V.n(); ++i) {
    j(i, V.n() + i) = A.one();
    j(V.n() + i, i) = A.neg(A.one());
  }
  return j;
}

AElem det_rec(const Ring& A, const AMatrix& g, std::vector<int>& rows, int col) {
  const int m = g.dim();
  if (col == m) return A.one();
  AElem acc = A.zero();
  int sign = 0;
  for (int i = 0; i < m; ++i) {
    if (rows[i]) continue;
    rows[i] = 1;
    AElem term = A.mul(g(i, col), det_rec(A, g, rows, col + 1));
    rows[i] = 0;
    acc = (sign % 2 == 0) ? A.add(acc, term) : A.sub(acc, term);
    ++sign;
  }
  return acc;
}

}  // namespace

AMatrix identity_matrix(const HermitianSpace& V) {
  AMatrix g(V.rank());
  for (int i = 0; i < V.rank(); ++i) g(i, i) = V.ring().one();
  return g;
}

AMatrix mat_mul(const HermitianSpace& V, const AMatrix& a, const AMatrix& b) {
  const Ring& A = V.ring();
  const int m = a.dim();
  if (b.dim() != m) throw ParamError("mat_mul: dimension mismatch");
  AMatrix c(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const AElem aik = a(i, k);
      if (aik == A.zero()) continue;
      for (int j = 0; j < m; ++j) c(i, j) = A.add(c(i, j), A.mul(aik, b(k, j)));
    }
  return c;
}

HVector apply(const HermitianSpace& V, const AMatrix& g, const HVector& x) {
  const Ring& A = V.ring();
  HVector y = V.zero();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) y.c[i] = A.add(y.c[i], A.mul(g(i, j), x.c[j]));
  return y;
}

AMatrix star_transpose(const HermitianSpace& V, const AMatrix& g) {
  AMatrix t(g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) t(j, i) = V.ring().involution(g(i, j));
  return t;
}

bool is_unitary(const HermitianSpace& V, const AMatrix& g) {
  if (g.dim() != V.rank()) return false;
  const AMatrix j = gram_matrix(V);
  return mat_mul(V, star_transpose(V, g), mat_mul(V, j, g)) == j;
}

AElem det(const HermitianSpace& V, const AMatrix& g) {
  std::vector<int> rows(g.dim(), 0);
  return det_rec(V.ring(), g, rows, 0);
}

AMatrix unitary_inverse(const HermitianSpace& V, const AMatrix& g) {
  const AMatrix j = gram_matrix(V);
  AMatrix jinv = j;
  for (auto i = 0; i < j.dim(); ++i)
    for (auto k = 0; k < j.dim(); ++k) jinv(i, k) = V.ring().neg(j(i, k));
  return mat_mul(V, jinv, mat_mul(V, star_transpose(V, g), j));
}

AMatrix unitary_transvection(const HermitianSpace& V, const HVector& u, Int a) {
  const Ring& A = V.ring();
  if (V.herm(u, u) != A.zero()) throw ParamError("unitary_transvection: u is not isotropic");
  AMatrix g = identity_matrix(V);
  for (int j = 0; j < V.rank(); ++j) {
    AElem coeff = A.scale(a, V.herm(u, V.basis(j)));
    for (int i = 0; i < V.rank(); ++i) g(i, j) = A.add(g(i, j), A.mul(coeff, u.c[i]));
  }
  return g;
}

AMatrix torus(const HermitianSpace& V, int i, const AElem& alpha) {
  const Ring& A = V.ring();
  if (!A.is_unit(alpha)) throw ParamError("torus: alpha must be a unit");
  AMatrix g = identity_matrix(V);
  g(i, i) = alpha;
  g(V.n() + i, V.n() + i) = A.inverse(A.involution(alpha));
  return g;
}

AMatrix weyl_swap(const HermitianSpace& V, int i) {
  const Ring& A = V.ring();
  AMatrix g = identity_matrix(V);
  const int a = i, b = V.n() + i;
  g(a, a) = A.zero();
  g(b, b) = A.zero();
  g(b, a) = A.one();          // u_i -> v_i
  g(a, b) = A.neg(A.one());   // v_i -> -u_i
  return g;
}

AMatrix index_permutation(const HermitianSpace& V, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != V.n()) throw ParamError("index_permutation: size");
  AMatrix g(V.rank());
  for (int i = 0; i < V.n(); ++i) {
    g(perm[i], i) = V.ring().one();
    g(V.n() + perm[i], V.n() + i) = V.ring().one();
  }
  return g;
}

AMatrix scalar_matrix(const HermitianSpace& V, const AElem& a) {
  AMatrix g(V.rank());
  for (int i = 0; i < V.rank(); ++i) g(i, i) = a;
  return g;
}

namespace {

/// u_j -> u_j + alpha u_i, v_i -> v_i - alpha^* v_j (i != j).
AMatrix root_element(const HermitianSpace& V, int i, int j, const AElem& alpha) {
  const Ring& A = V.ring();
  AMatrix g = identity_matrix(V);
  g(i, j) = alpha;
  g(V.n() + j, V.n() + i) = A.neg(A.involution(alpha));
  return g;
}

}  // namespace

// ---- R-linear maps ------------------------------------------------------------

RLinearMap map_from_function(const HermitianSpace& V,
                             const std::function<HVector(const HVector&)>& fn) {
  const int m = 2 * V.rank();
  std::vector<Int> entries(static_cast<std::size_t>(m) * m, 0);
  const auto gens = V.additive_generators();
  for (int j = 0; j < m; ++j) {
    const auto col = V.mixed(fn(gens[j]));
    for (int i = 0; i < m; ++i) entries[static_cast<std::size_t>(i) * m + j] = col[i];
  }
  return RLinearMap(m, std::move(entries));
}

RLinearMap identity_map(const HermitianSpace& V) {
  return map_from_function(V, [](const HVector& x) { return x; });
}

RLinearMap minus_identity(const HermitianSpace& V) {
  return map_from_function(V, [&](const HVector& x) { return V.neg(x); });
}

RLinearMap compose(const HermitianSpace& V, const RLinearMap& a, const RLinearMap& b) {
  const int m = a.size();
  const int half = V.rank();
  const Int rm = V.ring().r_mod(), sm = V.ring().s_mod();
  std::vector<Int> c(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    const Int md = i < half ? rm : sm;
    for (int j = 0; j < m; ++j) {
      Int acc = 0;
      for (int k = 0; k < m; ++k) acc += a(i, k) * b(k, j);
      c[static_cast<std::size_t>(i) * m + j] = mod(acc, md);
    }
  }
  return RLinearMap(m, std::move(c));
}

HVector apply(const HermitianSpace& V, const RLinearMap& g, const HVector& x) {
  const auto z = V.mixed(x);
  const int m = g.size();
  const int half = V.rank();
  const Int rm = V.ring().r_mod(), sm = V.ring().s_mod();
  std::vector<Int> out(m);
  for (int i = 0; i < m; ++i) {
    Int acc = 0;
    for (int j = 0; j < m; ++j) acc += g(i, j) * z[j];
    out[i] = mod(acc, i < half ? rm : sm);
  }
  return V.from_mixed(out);
}

bool is_well_defined(const HermitianSpace& V, const RLinearMap& g) {
  const int half = V.rank();
  if (g.size() != 2 * half) return false;
  for (int i = 0; i < half; ++i)
    for (int j = half; j < 2 * half; ++j)
      if (g(i, j) % V.ring().p() != 0) return false;
  return true;
}

bool is_symplectic(const HermitianSpace& V, const RLinearMap& g) {
  if (!is_well_defined(V, g)) return false;
  const auto gens = V.additive_generators();
  std::vector<HVector> images;
  for (const auto& x : gens) images.push_back(apply(V, g, x));
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (V.alt_f(images[a], images[b]) != V.alt_f(gens[a], gens[b])) return false;
  return true;
}

RLinearMap embed_unitary(const HermitianSpace& V, const AMatrix& g) {
  if (!is_unitary(V, g)) throw ParamError("embed_unitary: matrix is not unitary");
  return map_from_function(V, [&](const HVector& x) { return apply(V, g, x); });
}

RLinearMap eichler(const HermitianSpace& V, const HVector& u, const HVector& w) {
  if (V.alt_f(u, w) != 0) throw ParamError("eichler: f(u, w) must vanish");
  return map_from_function(V, [&](const HVector& x) {
    HVector y = V.add(x, V.scale_r(V.alt_f(x, u), w));
    return V.add(y, V.scale_r(V.alt_f(x, w), u));
  });
}

// ---- Pools --------------------------------------------------------------------

std::uint64_t GeneratorPool::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(group));
  for (const auto& e : elements) {
    for (char c : e.name) mix(static_cast<unsigned char>(c));
    for (Int v : e.map.entries()) mix(static_cast<std::uint64_t>(v));
  }
  return h;
}

std::string GeneratorPool::description() const {
  std::size_t ncore = 0;
  for (const auto& e : elements) ncore += e.core ? 1 : 0;
  return to_string(group) + " pool: " + std::to_string(elements.size()) + " elements (" +
         std::to_string(ncore) + " core)";
}

std::vector<const PoolElement*> GeneratorPool::core() const {
  std::vector<const PoolElement*> out;
  for (const auto& e : elements)
    if (e.core) out.push_back(&e);
  return out;
}

namespace {

std::string elem_name(const AElem& a) {
  return "(" + std::to_string(a.r) + "," + std::to_string(a.s) + ")";
}

std::vector<PoolElement> unitary_pool(const HermitianSpace& V) {
  const Ring& A = V.ring();
  const int n = V.n();
  std::vector<PoolElement> pool;
  auto push = [&](std::string name, AMatrix g, bool core) {
    RLinearMap m = embed_unitary(V, g);
    pool.push_back(PoolElement{std::move(name), std::move(m), std::move(g), core});
  };
  std::vector<std::pair<std::string, HVector>> isotropic;
  for (int i = 0; i < n; ++i) {
    isotropic.emplace_back("u" + std::to_string(i + 1), V.u(i));
    isotropic.emplace_back("v" + std::to_string(i + 1), V.v(i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::string a = std::to_string(i + 1), b = std::to_string(j + 1);
      isotropic.emplace_back("u" + a + "+u" + b, V.add(V.u(i), V.u(j)));
      isotropic.emplace_back("v" + a + "+v" + b, V.add(V.v(i), V.v(j)));
      isotropic.emplace_back("u" + a + "+v" + b, V.add(V.u(i), V.v(j)));
      isotropic.emplace_back("v" + a + "+u" + b, V.add(V.v(i), V.u(j)));
    }
  for (const auto& [name, u] : isotropic)
    for (Int a = 1; a < A.r_mod(); ++a)
      push("T(" + name + "," + std::to_string(a) + ")", unitary_transvection(V, u, a),
           a == 1);

  const auto units = A.units();
  const auto unit_gens = A.unit_generators(units);
  for (int i = 0; i < n; ++i)
    for (const AElem& alpha : units) {
      if (alpha == A.one()) continue;
      bool core = std::find(unit_gens.begin(), unit_gens.end(), alpha) != unit_gens.end();
      push("t" + std::to_string(i + 1) + elem_name(alpha), torus(V, i, alpha), core);
    }
  for (int i = 0; i < n; ++i) push("w" + std::to_string(i + 1), weyl_swap(V, i), true);
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = k;
    std::swap(perm[i], perm[i + 1]);
    push("perm(" + std::to_string(i + 1) + "," + std::to_string(i + 2) + ")",
         index_permutation(V, perm), true);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const AElem& alpha : A.elements()) {
        if (alpha == A.zero()) continue;
        const bool core = alpha == A.one() || (A.ell() > 1 && alpha == A.pi());
        push("E" + std::to_string(i + 1) + std::to_string(j + 1) + elem_name(alpha),
             root_element(V, i, j, alpha), core);
      }
    }
  const auto norm_one = A.norm_one_group();
  const auto n_gens = A.unit_generators(norm_one);
  for (const AElem& a : norm_one) {
    if (a == A.one()) continue;
    bool core = std::find(n_gens.begin(), n_gens.end(), a) != n_gens.end();
    push("scalar" + elem_name(a), scalar_matrix(V, a), core);
  }
  return pool;
}

}  // namespace

GeneratorPool generator_pool(const HermitianSpace& V, GroupTag group) {
  GeneratorPool pool;
  pool.group = group;
  const Ring& A = V.ring();
  auto upool = unitary_pool(V);
  if (group == GroupTag::U) {
    pool.elements = std::move(upool);
    return pool;
  }
  if (group == GroupTag::SU) {
    const auto units = A.units();
    std::map<AElem, std::vector<PoolElement>> leftovers;
    for (auto& e : upool) {
      const AElem d = det(V, *e.unitary);
      if (d == A.one()) {
        pool.elements.push_back(std::move(e));
        continue;
      }
      const AElem target = A.inverse(d);
      std::optional<AElem> beta;
      for (const AElem& b : units)
        if (A.mul(b, A.inverse(A.involution(b))) == target) {
          beta = b;
          break;
        }
      if (beta) {
        AMatrix g = mat_mul(V, torus(V, 0, *beta), *e.unitary);
        pool.elements.push_back(PoolElement{e.name + "*t1" + elem_name(*beta),
                                            embed_unitary(V, g), g, e.core});
      } else {
        leftovers[d].push_back(std::move(e));
      }
    }
    for (auto& [d, group_elems] : leftovers) {
      const AMatrix base_inv = unitary_inverse(V, *group_elems.front().unitary);
      for (std::size_t k = 1; k < group_elems.size(); ++k) {
        AMatrix g = mat_mul(V, *group_elems[k].unitary, base_inv);
        pool.elements.push_back(PoolElement{
            group_elems[k].name + "*" + group_elems.front().name + "^-1",
            embed_unitary(V, g), g, group_elems[k].core});
      }
    }
    return pool;
  }
  // Sp: embedded unitary pool plus Eichler maps on f-orthogonal generator pairs.
  for (auto& e : upool) {
    e.unitary.reset();
    pool.elements.push_back(std::move(e));
  }
  const auto gens = V.additive_generators();
  std::vector<std::string> names;
  for (int j = 0; j < V.rank(); ++j) {
    const std::string base = (j < V.n() ? "u" : "v") + std::to_string(j % V.n() + 1);
    names.push_back(base);
  }
  for (int j = 0; j < V.rank(); ++j) names.push_back("pi*" + names[j]);
  const RLinearMap id = identity_map(V);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      if (V.alt_f(gens[a], gens[b]) != 0) continue;
      RLinearMap tau = eichler(V, gens[a], gens[b]);
      if (tau == id) continue;
      pool.elements.push_back(
          PoolElement{"tau(" + names[a] + "," + names[b] + ")", std::move(tau), {}, true});
    }
  return pool;
}

// ---- Enumeration ---------------------------------------------------------------

namespace {

std::string matrix_key(const AMatrix& g) {
  std::string key;
  key.reserve(g.entries().size() * 8);
  for (const auto& a : g.entries()) {
    const auto r = static_cast<std::uint32_t>(a.r), s = static_cast<std::uint32_t>(a.s);
    key.append(reinterpret_cast<const char*>(&r), 4);
    key.append(reinterpret_cast<const char*>(&s), 4);
  }
  return key;
}

std::string map_key(const RLinearMap& g) {
  std::string key;
  key.reserve(g.entries().size() * 4);
  for (Int v : g.entries()) {
    const auto w = static_cast<std::uint32_t>(v);
    key.append(reinterpret_cast<const char*>(&w), 4);
  }
  return key;
}

}  // namespace

std::vector<AMatrix> enumerate_group_exhaustive(const HermitianSpace& V, GroupTag group,
                                                std::uint64_t bound) {
  if (group == GroupTag::Sp)
    throw ParamError("enumerate_group_exhaustive: Sp is enumerated by closure only");
  const std::uint64_t asize = V.ring().size();
  const int entries = V.rank() * V.rank();
  std::uint64_t candidates = 1;
  for (int k = 0; k < entries; ++k) {
    if (candidates > bound / asize + 1) throw ParamError("exhaustive bound exceeded");
    candidates *= asize;
  }
  if (candidates > bound) throw ParamError("exhaustive bound exceeded");
  std::vector<AMatrix> out;
  AMatrix g(V.rank());
  for (std::uint64_t c = 0; c < candidates; ++c) {
    std::uint64_t t = c;
    for (int k = 0; k < entries; ++k) {
      g(k / V.rank(), k % V.rank()) = V.ring().from_index(t % asize);
      t /= asize;
    }
    if (!is_unitary(V, g)) continue;
    if (group == GroupTag::SU && det(V, g) != V.ring().one()) continue;
    out.push_back(g);
  }
  return out;
}

std::vector<AMatrix> enumerate_group_closure(const HermitianSpace& V,
                                             const GeneratorPool& pool,
                                             std::uint64_t max_size) {
  if (pool.group == GroupTag::Sp)
    throw ParamError("enumerate_group_closure: use enumerate_map_closure for Sp");
  std::vector<AMatrix> elems{identity_matrix(V)};
  std::unordered_set<std::string> seen{matrix_key(elems.front())};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : pool.elements) {
      AMatrix h = mat_mul(V, elems[head], *gen.unitary);
      if (seen.insert(matrix_key(h)).second) {
        elems.push_back(std::move(h));
        if (elems.size() > max_size) throw ParamError("closure size bound exceeded");
      }
    }
  }
  return elems;
}

std::vector<RLinearMap> enumerate_map_closure(const HermitianSpace& V,
                                              const GeneratorPool& pool,
                                              std::uint64_t max_size) {
  std::vector<RLinearMap> elems{identity_map(V)};
  std::unordered_set<std::string> seen{map_key(elems.front())};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : pool.elements) {
      RLinearMap h = compose(V, elems[head], gen.map);
      if (seen.insert(map_key(h)).second) {
        elems.push_back(std::move(h));
        if (elems.size() > max_size) throw ParamError("closure size bound exceeded");
      }
    }
  }
  return elems;
}

std::vector<AMatrix> congruence_subgroup(const HermitianSpace& V,
                                         const std::vector<AMatrix>& group) {
  if (V.params().ell < 2) throw ParamError("congruence_subgroup requires ell > 1");
  const Ring& A = V.ring();
  const int level = 2 * V.params().ell - 3;
  std::vector<AMatrix> out;
  for (const auto& g : group) {
    bool ok = true;
    for (int i = 0; i < g.dim() && ok; ++i)
      for (int j = 0; j < g.dim() && ok; ++j) {
        AElem d = i == j ? A.sub(g(i, j), A.one()) : g(i, j);
        ok = A.valuation(d) >= level;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

// ---- Orbits --------------------------------------------------------------------

std::string to_string(const OrbitLabel& label, const RingParams& params) {
  if (label.depth >= params.nilpotency()) return "0";
  return "(" + std::to_string(label.depth) + "," + std::to_string(label.value) + ")";
}

OrbitLabel orbit_invariant(const HermitianSpace& V, const HVector& x) {
  const Ring& A = V.ring();
  const int m = V.params().nilpotency();
  const int k = V.depth(x);
  if (k >= m) return {m, 0};
  HVector x0 = x;
  for (auto& c : x0.c) c = A.div_pi_pow(c, k);
  const int j = m - k;
  const int e = std::min(j / 2, V.params().ell - 1);  // ceil((j-1)/2)
  const AElem hx = V.herm(x0, x0);
  return {k, mod(hx.s, ipow(A.p(), e))};
}

namespace {

/// Applies an R-linear map to vectors given by their V-index.
class IndexAction {
 public:
  explicit IndexAction(const HermitianSpace& V)
      : rank_(V.rank()),
        asize_(V.ring().size()),
        rm_(V.ring().r_mod()),
        sm_(V.ring().s_mod()),
        z_(2 * rank_),
        out_(2 * rank_) {}

  std::uint64_t operator()(const RLinearMap& g, std::uint64_t idx) {
    for (int j = 0; j < rank_; ++j) {
      const Int a = static_cast<Int>(idx % asize_);
      idx /= asize_;
      z_[j] = a % rm_;
      z_[rank_ + j] = a / rm_;
    }
    const int m = 2 * rank_;
    const Int* row = g.entries().data();
    for (int i = 0; i < m; ++i, row += m) {
      Int acc = 0;
      for (int j = 0; j < m; ++j) acc += row[j] * z_[j];
      out_[i] = mod(acc, i < rank_ ? rm_ : sm_);
    }
    std::uint64_t res = 0;
    for (int j = rank_ - 1; j >= 0; --j)
      res = res * asize_ + static_cast<std::uint64_t>(out_[j] + rm_ * out_[rank_ + j]);
    return res;
  }

 private:
  int rank_;
  std::uint64_t asize_;
  Int rm_, sm_;
  std::vector<Int> z_, out_;
};

}  // namespace

OrbitCertificate count_orbits(const HermitianSpace& V, const GeneratorPool& pool) {
  OrbitCertificate cert;
  cert.group = pool.group;
  cert.pool_description = pool.description();
  cert.pool_hash = pool.hash();
  const std::uint64_t total = V.size();
  const bool by_depth = pool.group == GroupTag::Sp;

  std::vector<OrbitLabel> labels(total);
  std::set<OrbitLabel> fibers;
  for (std::uint64_t i = 0; i < total; ++i) {
    const HVector x = V.from_index(i);
    labels[i] = by_depth ? OrbitLabel{V.depth(x), 0} : orbit_invariant(V, x);
    fibers.insert(labels[i]);
  }
  cert.invariant_fiber_count = fibers.size();

  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> orbit_of(total, kUnset);
  IndexAction act(V);
  std::deque<std::uint64_t> queue;
  cert.refines = true;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (orbit_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cert.orbits.size());
    OrbitRecord rec{V.from_index(start), 0, labels[start]};
    orbit_of[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::uint64_t x = queue.front();
      queue.pop_front();
      ++rec.size;
      if (labels[x] != rec.label) cert.refines = false;
      for (const auto& g : pool.elements) {
        const std::uint64_t y = act(g.map, x);
        if (orbit_of[y] == kUnset) {
          orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    cert.orbits.push_back(std::move(rec));
  }
  cert.bfs_orbit_count = cert.orbits.size();
  cert.exact = cert.refines && cert.bfs_orbit_count == cert.invariant_fiber_count;
  return cert;
}

std::size_t predicted_orbit_count(const RingParams& params, GroupTag group) {
  if (group == GroupTag::Sp) return static_cast<std::size_t>(2 * params.ell);
  std::size_t s = 0;
  for (int i = 0; i < params.ell; ++i) s += static_cast<std::size_t>(ipow(params.p, i));
  return 2 * s;
}

}  // namespace weilrep

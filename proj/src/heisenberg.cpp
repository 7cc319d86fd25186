#include "weilrep/heisenberg.hpp"

#include <algorithm>
#include <deque>

namespace weilrep {

HeisElem heis_mul(const HermitianSpace& V, const HeisElem& a, const HeisElem& b) {
  const Int rm = V.ring().r_mod();
  return {mod(a.r + b.r + V.alt_f(a.u, b.u), rm), V.add(a.u, b.u)};
}

HeisElem heis_inverse(const HermitianSpace& V, const HeisElem& a) {
  return {mod(-a.r, V.ring().r_mod()), V.neg(a.u)};
}

HeisElem heis_conj(const HermitianSpace& V, const RLinearMap& g, const HeisElem& k) {
  return {k.r, apply(V, g, k.u)};
}

// ---- Monomial operators ------------------------------------------------------

MonomialOp MonomialOp::identity(std::size_t dim, Int order) {
  MonomialOp op{order, std::vector<std::uint32_t>(dim), std::vector<Int>(dim, 0)};
  for (std::size_t i = 0; i < dim; ++i) op.perm[i] = static_cast<std::uint32_t>(i);
  return op;
}

bool MonomialOp::is_permutation() const {
  return std::all_of(phase.begin(), phase.end(), [](Int e) { return e == 0; });
}

MonomialOp compose(const MonomialOp& a, const MonomialOp& b) {
  if (a.order != b.order || a.dim() != b.dim()) throw ParamError("compose: mismatch");
  MonomialOp c{a.order, std::vector<std::uint32_t>(a.dim()), std::vector<Int>(a.dim())};
  for (std::size_t v = 0; v < b.dim(); ++v) {
    const std::uint32_t mid = b.perm[v];
    c.perm[v] = a.perm[mid];
    c.phase[v] = mod(b.phase[v] + a.phase[mid], a.order);
  }
  return c;
}

MonomialOp inverse(const MonomialOp& a) {
  MonomialOp c{a.order, std::vector<std::uint32_t>(a.dim()), std::vector<Int>(a.dim())};
  for (std::size_t v = 0; v < a.dim(); ++v) {
    c.perm[a.perm[v]] = static_cast<std::uint32_t>(v);
    c.phase[a.perm[v]] = mod(-a.phase[v], a.order);
  }
  return c;
}

PhaseVector apply(const MonomialOp& a, const PhaseVector& x) {
  if (x.order != a.order) throw ParamError("apply: phase order mismatch");
  PhaseVector y{x.order, {}};
  y.entries.reserve(x.entries.size());
  for (const auto& [v, e] : x.entries) y.entries.emplace_back(a.perm[v], mod(e + a.phase[v], a.order));
  std::sort(y.entries.begin(), y.entries.end());
  return y;
}

MonomialOp twist(const MonomialOp& a, Int e) {
  MonomialOp c = a;
  for (auto& ph : c.phase) ph = mod(ph + e, a.order);
  return c;
}

namespace {

template <class Step>
OrbitPhaseSolution solve_orbit_phases(std::size_t nodes, std::size_t nops, Int order,
                                      Step step, bool want_basis) {
  OrbitPhaseSolution sol;
  constexpr Int kUnset = -1;
  std::vector<Int> coeff(nodes, kUnset);
  std::vector<std::uint32_t> members;
  std::deque<std::uint32_t> queue;
  for (std::size_t start = 0; start < nodes; ++start) {
    if (coeff[start] != kUnset) continue;
    ++sol.orbits;
    bool ok = true;
    coeff[start] = 0;
    members.clear();
    queue.push_back(static_cast<std::uint32_t>(start));
    while (!queue.empty()) {
      const std::uint32_t x = queue.front();
      queue.pop_front();
      members.push_back(x);
      for (std::size_t k = 0; k < nops; ++k) {
        const auto [y, ph] = step(k, x);
        const Int want = mod(coeff[x] + ph, order);
        if (coeff[y] == kUnset) {
          coeff[y] = want;
          queue.push_back(y);
        } else if (coeff[y] != want) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    ++sol.consistent;
    if (want_basis) {
      PhaseVector v{order, {}};
      for (std::uint32_t m : members) v.entries.emplace_back(m, coeff[m]);
      std::sort(v.entries.begin(), v.entries.end());
      sol.basis.push_back(std::move(v));
    }
  }
  return sol;
}

}  // namespace

OrbitPhaseSolution monomial_fixed_space(const std::vector<MonomialOp>& ops,
                                        bool want_basis) {
  if (ops.empty()) throw ParamError("monomial_fixed_space: no operators");
  const Int order = ops.front().order;
  const std::size_t d = ops.front().dim();
  for (const auto& op : ops)
    if (op.order != order || op.dim() != d) throw ParamError("monomial_fixed_space: mismatch");
  return solve_orbit_phases(
      d, ops.size(), order,
      [&](std::size_t k, std::uint32_t x) {
        return std::pair<std::uint32_t, Int>{ops[k].perm[x], ops[k].phase[x]};
      },
      want_basis);
}

OrbitPhaseSolution monomial_pair_space(const std::vector<MonomialOp>& left,
                                       const std::vector<MonomialOp>& right,
                                       bool want_basis) {
  if (left.size() != right.size() || left.empty())
    throw ParamError("monomial_pair_space: operator lists must match and be nonempty");
  const Int order = left.front().order;
  const std::size_t d = left.front().dim();
  for (std::size_t k = 0; k < left.size(); ++k)
    if (left[k].order != order || right[k].order != order || left[k].dim() != d ||
        right[k].dim() != d)
      throw ParamError("monomial_pair_space: mismatch");
  if (d * d > (std::size_t{1} << 32)) throw ParamError("monomial_pair_space: too large");
  return solve_orbit_phases(
      d * d, left.size(), order,
      [&](std::size_t k, std::uint32_t node) {
        const std::uint32_t z = node / d, x = node % d;
        const auto y = static_cast<std::uint32_t>(left[k].perm[z] * d + right[k].perm[x]);
        return std::pair<std::uint32_t, Int>{y, left[k].phase[z] - right[k].phase[x]};
      },
      want_basis);
}

// ---- Schroedinger model --------------------------------------------------------

std::size_t schrodinger_dim(const RingParams& params) {
  std::size_t d = 1;
  for (int i = 0; i < params.n; ++i) d *= static_cast<std::size_t>(params.a_size());
  return d;
}

Schrodinger::Schrodinger(RingParams params, Int lambda_unit)
    : V_(params), unit_(mod(lambda_unit, V_.ring().r_mod())), dim_(schrodinger_dim(params)) {
  if (unit_ % params.p == 0) throw ParamError("lambda_unit must be prime to p");
}

std::uint32_t Schrodinger::q_index(const HVector& v) const {
  std::uint64_t idx = 0;
  for (int i = V_.n() - 1; i >= 0; --i) idx = idx * V_.ring().size() + V_.ring().index(v.c[V_.n() + i]);
  return static_cast<std::uint32_t>(idx);
}

HVector Schrodinger::q_vector(std::uint32_t i) const {
  HVector v = V_.zero();
  for (int j = 0; j < V_.n(); ++j) {
    v.c[V_.n() + j] = V_.ring().from_index(i % V_.ring().size());
    i /= static_cast<std::uint32_t>(V_.ring().size());
  }
  return v;
}

HVector Schrodinger::m_part(const HVector& x) const {
  HVector y = x;
  for (int j = 0; j < V_.n(); ++j) y.c[V_.n() + j] = V_.ring().zero();
  return y;
}

HVector Schrodinger::q_part(const HVector& x) const {
  HVector y = x;
  for (int j = 0; j < V_.n(); ++j) y.c[j] = V_.ring().zero();
  return y;
}

MonomialOp Schrodinger::op(const HeisElem& k) const {
  const Int ord = order();
  const HVector um = m_part(k.u), uq = q_part(k.u);
  const Int base = mod(k.r - V_.alt_f(um, uq), ord);
  MonomialOp out{ord, std::vector<std::uint32_t>(dim_), std::vector<Int>(dim_)};
  for (std::uint32_t v = 0; v < dim_; ++v) {
    const HVector target = V_.add(q_vector(v), uq);
    out.perm[v] = q_index(target);
    out.phase[v] = mod(unit_ * (base + 2 * V_.alt_f(um, target)), ord);
  }
  return out;
}

PhaseVector Schrodinger::apply_translation(const HVector& w, const PhaseVector& x) const {
  const Int ord = order();
  const HVector wm = m_part(w), wq = q_part(w);
  const Int base = mod(-V_.alt_f(wm, wq), ord);
  PhaseVector y{ord, {}};
  y.entries.reserve(x.entries.size());
  for (const auto& [v, e] : x.entries) {
    const HVector target = V_.add(q_vector(v), wq);
    y.entries.emplace_back(q_index(target),
                           mod(e + unit_ * (base + 2 * V_.alt_f(wm, target)), ord));
  }
  std::sort(y.entries.begin(), y.entries.end());
  return y;
}

std::vector<HeisElem> Schrodinger::generators() const {
  std::vector<HeisElem> gens{{1 % order(), V_.zero()}};
  for (const auto& x : V_.additive_generators())
    if (x != V_.zero()) gens.push_back({0, x});
  return gens;
}

OrbitPhaseSolution Schrodinger::fixed_space(const std::vector<HVector>& generators) const {
  for (const auto& a : generators)
    for (const auto& b : generators)
      if (V_.alt_f(a, b) != 0)
        throw ParamError("fixed_space: submodule is not totally isotropic");
  std::vector<MonomialOp> ops;
  for (const auto& w : generators) ops.push_back(translation(w));
  if (ops.empty()) ops.push_back(MonomialOp::identity(dim_, order()));
  return monomial_fixed_space(ops, true);
}

OrbitPhaseSolution Schrodinger::fixed_space(const SubmoduleDesc& W) const {
  const int m = params().nilpotency();
  int k = W.exponent;
  if (W.kind == SubmoduleDesc::Kind::Dual) k = 2 * W.exponent - 1;
  if (W.kind == SubmoduleDesc::Kind::PerpOf) k = m - W.exponent;
  std::vector<HVector> gens;
  for (const auto& x : V_.module_generators(k))
    if (x != V_.zero()) gens.push_back(x);
  return fixed_space(gens);
}

}  // namespace weilrep

#include "weilrep/decomposition.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace weilrep {

// ---- Predictions ----------------------------------------------------------------

Int top_dimension(Int q, int k, int n) {
  if (k < 2) throw ParamError("top_dimension: k must be at least 2");
  return (ipow(q, (2 * k - 1) * n) - ipow(q, (2 * k - 3) * n)) / (2 * ipow(q, k - 1));
}

Int classical_plus_dimension(Int q, int n) {
  const Int qn = ipow(q, n);
  return qn % 4 == 1 ? (qn + 1) / 2 : (qn - 1) / 2;
}

Int classical_minus_dimension(Int q, int n) { return ipow(q, n) - classical_plus_dimension(q, n); }

PredictedDims predicted_dimensions(const RingParams& params) {
  const Int q = params.p;
  const int l = params.ell, n = params.n;
  PredictedDims d;
  for (int j = 0; j + 2 <= l; ++j) {
    const int k = l - j;
    const Int copies = 2 * ipow(q, k - 1);
    for (Int c = 0; c < copies; ++c) d.u_constituents.push_back(top_dimension(q, k, n));
  }
  d.u_constituents.push_back(classical_plus_dimension(q, n));
  d.u_constituents.push_back(classical_minus_dimension(q, n));
  std::sort(d.u_constituents.rbegin(), d.u_constituents.rend());
  for (int i = 0; i <= 2 * l - 2; ++i) d.g_sizes.push_back(ipow(q, (2 * l - 1 - i) / 2));
  Int partial = 0;
  for (int s = 0; s + 2 <= l; ++s) {
    partial += top_dimension(q, l - s, n);
    d.isotypic_strata.push_back(partial);
  }
  d.isotypic_trivial_plus = partial + classical_plus_dimension(q, n);
  d.isotypic_trivial_minus = partial + classical_minus_dimension(q, n);
  for (int i = 1; i < l; ++i) {
    const Int y = ipow(q, (2 * (l - i) - 1) * n) * (ipow(q, 2 * n) - 1) / 2;
    d.sp_layers.emplace_back(y, y);
  }
  d.sp_layers.emplace_back(classical_plus_dimension(q, n), classical_minus_dimension(q, n));
  d.dim_x = ipow(q, (2 * l - 1) * n);
  d.dim_bot = l > 1 ? ipow(q, (2 * l - 3) * n) : 0;
  return d;
}

// ---- The norm-one group ------------------------------------------------------------

namespace {

std::vector<AElem> powers_of(const Ring& A, const AElem& g) {
  std::vector<AElem> out{A.one()};
  for (AElem x = g; x != A.one(); x = A.mul(x, g)) out.push_back(x);
  return out;
}

}  // namespace

NormGroup norm_group(const Ring& A) {
  NormGroup N;
  N.elements = A.norm_one_group();
  N.order = static_cast<Int>(N.elements.size());
  for (const AElem& a : N.elements)
    if (A.unit_order(a) == N.order) {
      N.generator = a;
      N.powers = powers_of(A, a);
      return N;
    }
  throw std::runtime_error("norm_group: N is not cyclic");
}

PrincipalUnits principal_units(const Ring& A) {
  PrincipalUnits P;
  P.order = 1;
  P.generator = A.one();
  for (const AElem& a : A.norm_one_group()) {
    if (A.valuation(A.sub(a, A.one())) < 1) continue;
    const Int o = A.unit_order(a);
    if (o > P.order) {
      P.order = o;
      P.generator = a;
    }
  }
  P.powers = powers_of(A, P.generator);
  return P;
}

// ---- Subspaces ------------------------------------------------------------------------

std::vector<std::uint32_t> bot_transversal(const WeilModule& W) {
  const RingParams& prm = W.params();
  if (prm.ell < 2) throw ParamError("bot_transversal: requires l > 1");
  const Schrodinger& S = W.schrodinger();
  const HermitianSpace& V = W.space();
  const Ring& A = V.ring();
  const Int rbar = ipow(prm.p, prm.ell - 1);
  const Int abar = rbar * ipow(prm.p, prm.ell - 2);
  const std::size_t child_dim = schrodinger_dim(RingParams::make(prm.p, prm.ell - 1, prm.n));
  std::vector<std::uint32_t> out(child_dim);
  for (std::size_t w = 0; w < child_dim; ++w) {
    HVector t = V.zero();
    std::size_t rest = w;
    for (int j = 0; j < V.n(); ++j) {
      const Int idx = static_cast<Int>(rest % abar);
      rest /= abar;
      // pi * (r + s pi) = p s + r pi
      t.c[V.n() + j] = A.make(prm.p * (idx / rbar), idx % rbar);
    }
    out[w] = S.q_index(t);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> bot_supports(const WeilModule& W) {
  const Schrodinger& S = W.schrodinger();
  const HermitianSpace& V = W.space();
  const Ring& A = V.ring();
  const Int p = W.params().p;
  const Int socle = ipow(p, W.params().ell - 1);
  std::vector<HVector> nq{V.zero()};
  for (int j = 0; j < V.n(); ++j) {
    std::vector<HVector> next;
    for (const HVector& z : nq)
      for (Int a = 0; a < p; ++a) {
        HVector y = z;
        y.c[V.n() + j] = A.make(a * socle, 0);
        next.push_back(y);
      }
    nq = std::move(next);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t t : bot_transversal(W)) {
    const HVector tv = S.q_vector(t);
    std::vector<std::uint32_t> supp;
    for (const HVector& z : nq) supp.push_back(S.q_index(V.add(tv, z)));
    std::sort(supp.begin(), supp.end());
    out.push_back(std::move(supp));
  }
  return out;
}

template <class S>
Mat<S> bot_basis(const WeilModule& W) {
  const auto supports = bot_supports(W);
  Mat<S> e = Mat<S>::Zero(W.dim(), supports.size());
  for (std::size_t k = 0; k < supports.size(); ++k) {
    S val = S(1);
    if constexpr (!ScalarTraits<S>::exact)
      val = S(1.0 / std::sqrt(static_cast<double>(supports[k].size())));
    for (std::uint32_t i : supports[k]) e(i, k) = val;
  }
  return e;
}

namespace {

/// b - sum_k v_k (conj(v_k)^T b) / |supp v_k| for unit-modulus vectors with disjoint supports.
template <class S>
Mat<S> remove_disjoint_span(const std::vector<PhaseVector>& vs, const Mat<S>& b) {
  Mat<S> out = b;
  for (const PhaseVector& v : vs) {
    if (v.entries.empty()) continue;
    const auto roots = root_table<S>(v.order);
    Eigen::Matrix<S, 1, Eigen::Dynamic> coeff = Eigen::Matrix<S, 1, Eigen::Dynamic>::Zero(b.cols());
    for (const auto& [i, e] : v.entries) coeff += roots[mod(-e, v.order)] * b.row(i);
    coeff *= S(1) / S(static_cast<long long>(v.entries.size()));
    for (const auto& [i, e] : v.entries) out.row(i) -= roots[e] * coeff;
  }
  return out;
}

std::vector<PhaseVector> supports_as_vectors(const std::vector<std::vector<std::uint32_t>>& s) {
  std::vector<PhaseVector> out;
  for (const auto& supp : s) {
    PhaseVector v{1, {}};
    for (std::uint32_t i : supp) v.entries.emplace_back(i, 0);
    out.push_back(std::move(v));
  }
  return out;
}

template <class S>
Mat<S> parity_half(const WeilModule& W, const Mat<S>& y, int sign) {
  const MonomialOp par = W.parity();
  const S c = S(static_cast<long long>(sign * W.permutation_normalization(par)));
  return (y + c * apply_sparse<S>(par, y)) * (S(1) / S(2));
}

}  // namespace

template <class S>
Mat<S> remove_bot(const WeilModule& W, const Mat<S>& b) {
  return remove_disjoint_span<S>(supports_as_vectors(bot_supports(W)), b);
}

std::vector<PhaseVector> n_isotypic_basis(const WeilModule& W, const NormGroup& N, Int j) {
  const Int ord = 2 * W.order();
  if (ord % N.order != 0) throw std::runtime_error("n_isotypic_basis: |N| does not divide 2p^l");
  const MonomialOp op = twist(with_order(W.n_action(N.generator), ord), -j * (ord / N.order));
  return monomial_fixed_space({op}, true).basis;
}

template <class S>
std::vector<Block<S>> top_eigenspaces(const WeilModule& W, double tol) {
  const RingParams& prm = W.params();
  const NormGroup N = norm_group(W.space().ring());
  const Int predicted = top_dimension(prm.p, prm.ell, prm.n);
  std::vector<Block<S>> out;
  const auto bot = supports_as_vectors(bot_supports(W));
  for (Int j = 0; j < N.order; ++j) {
    const Mat<S> x = to_dense<S>(n_isotypic_basis(W, N, j), W.dim());
    out.push_back(Block<S>{"Top(phi_" + std::to_string(j) + ")",
                           column_basis<S>(remove_disjoint_span<S>(bot, x), tol), predicted});
  }
  return out;
}

template <class S>
std::vector<Block<S>> classical_split(const WeilModule& W) {
  const RingParams& prm = W.params();
  const MonomialOp par = W.parity();
  const int c = W.permutation_normalization(par);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  bool has_zero = false;
  for (std::uint32_t v = 0; v < W.dim(); ++v) {
    if (par.perm[v] == v) has_zero = true;
    if (par.perm[v] > v) pairs.emplace_back(v, par.perm[v]);
  }
  auto parity_space = [&](int sign) {
    const Index cols = static_cast<Index>(pairs.size()) + (sign > 0 && has_zero ? 1 : 0);
    Mat<S> b = Mat<S>::Zero(W.dim(), cols);
    S h = S(1);
    if constexpr (!ScalarTraits<S>::exact) h = S(1.0 / std::sqrt(2.0));
    Index k = 0;
    if (sign > 0 && has_zero)
      for (std::uint32_t v = 0; v < W.dim(); ++v)
        if (par.perm[v] == v) b(v, k++) = S(1);
    for (const auto& [v, mv] : pairs) {
      b(v, k) = h;
      b(mv, k) = sign > 0 ? h : S(0) - h;
      ++k;
    }
    return b;
  };
  // W(-1) = c P(-1): X+ is the P(-1)-eigenspace of sign c.
  return {Block<S>{"X+", parity_space(c), classical_plus_dimension(prm.p, prm.n)},
          Block<S>{"X-", parity_space(-c), classical_minus_dimension(prm.p, prm.n)}};
}

template <class S>
std::vector<Block<S>> u_constituents(const WeilModule& W, double tol) {
  const RingParams& prm = W.params();
  if (prm.ell == 1) return classical_split<S>(W);
  std::vector<Block<S>> out = top_eigenspaces<S>(W, tol);
  const WeilModule child(RingParams::make(prm.p, prm.ell - 1, prm.n),
                         mod(-W.schrodinger().lambda_unit(), ipow(prm.p, prm.ell - 1)));
  const Mat<S> e = bot_basis<S>(W);
  for (auto& b : u_constituents<S>(child, tol))
    out.push_back(Block<S>{"Bot/" + b.label, e * b.basis, b.predicted});
  return out;
}

template <class S>
SpFiltration<S> sp_filtration(const WeilModule& W, double tol) {
  const RingParams& prm = W.params();
  const HermitianSpace& V = W.space();
  const int l = prm.ell;
  SpFiltration<S> out;
  std::vector<std::vector<PhaseVector>> chain;  // chain[k - l] = X(r^k V)
  for (int k = l; k <= 2 * l - 1; ++k) {
    chain.push_back(W.schrodinger().fixed_space(V.ideal_multiple(k)).basis);
    out.chain_dims.push_back(chain.back().size());
  }
  const PredictedDims pd = predicted_dimensions(prm);
  auto push_split = [&](const std::string& name, const Mat<S>& y, std::pair<Int, Int> pred) {
    out.layers.push_back(
        Block<S>{name + "+", column_basis<S>(parity_half<S>(W, y, 1), tol), pred.first});
    out.layers.push_back(
        Block<S>{name + "-", column_basis<S>(parity_half<S>(W, y, -1), tol), pred.second});
  };
  for (int i = 1; i < l; ++i) {
    const Mat<S> big = to_dense<S>(chain[2 * l - i - l], W.dim());
    const Mat<S> y = column_basis<S>(remove_disjoint_span<S>(chain[2 * l - i - 1 - l], big), tol);
    push_split("Y_" + std::to_string(i), y, pd.sp_layers[i - 1]);
  }
  push_split("Y_" + std::to_string(l), to_dense<S>(chain.front(), W.dim()), pd.sp_layers.back());
  return out;
}

// ---- Operators of a pool ----------------------------------------------------------

PoolOperators pool_operators(const WeilModule& W, const GeneratorPool& pool, bool core_only) {
  PoolOperators ops;
  for (const auto& e : pool.elements) {
    if (core_only && !e.core) continue;
    ops.names.push_back(e.name);
    ops.t.push_back(W.intertwiner(e.map));
    ops.core.push_back(e.core);
  }
  return ops;
}

namespace {

/// Oversized exact systems are refused rather than attempted.
constexpr double kExactCommutantEntries = 6e7;

}  // namespace

template <class S>
CommutantResult commutant_on_x(const WeilModule& W, const GeneratorPool& pool, double tol) {
  const HermitianSpace& V = W.space();
  const std::size_t d = W.dim();
  CommutantResult res;
  res.method = "monomial-reduction";

  std::vector<RLinearMap> swaps;
  for (int i = 0; i < V.n(); ++i) swaps.push_back(embed_unitary(V, weyl_swap(V, i)));
  // Products over nonempty subsets of the swaps, with their inverses s^3.
  std::vector<std::pair<RLinearMap, RLinearMap>> conj;
  for (unsigned mask = 1; mask < (1u << V.n()); ++mask) {
    RLinearMap s = identity_map(V);
    for (int i = 0; i < V.n(); ++i)
      if (mask & (1u << i)) s = compose(V, s, swaps[i]);
    conj.emplace_back(s, compose(V, s, compose(V, s, s)));
  }

  std::vector<MonomialOp> K;
  std::vector<PhaseMatrix> constraints;
  for (const auto& e : pool.elements) {
    if (W.preserves_m(e.map)) {
      K.push_back(*to_monomial(W.intertwiner(e.map)));
      continue;
    }
    bool resolved = false;
    for (const auto& [s, sinv] : conj) {
      const RLinearMap m = compose(V, sinv, compose(V, e.map, s));
      if (W.preserves_m(m)) {
        K.push_back(*to_monomial(W.intertwiner(m)));
        resolved = true;
        break;
      }
    }
    if (!resolved) constraints.push_back(W.intertwiner(e.map));
  }
  for (const auto& s : swaps) constraints.push_back(W.intertwiner(s));
  if (K.empty()) K.push_back(MonomialOp::identity(d, W.order()));
  res.monomial_ops = K.size();
  res.constraint_ops = constraints.size();

  const OrbitPhaseSolution sol = monomial_pair_space(K, K, true);
  const std::size_t m = sol.basis.size();
  res.monomial_dim = m;
  if (m == 0) return res;

  // Node (z, x) -> (basis index, exponent) for entries of the End_K basis.
  std::vector<std::int32_t> which(d * d, -1);
  std::vector<Int> ex(d * d, 0);
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& [node, e] : sol.basis[k].entries) {
      which[node] = static_cast<std::int32_t>(k);
      ex[node] = e;
    }
  const Int ord = W.order();

  if constexpr (ScalarTraits<S>::exact) {
    const double entries =
        static_cast<double>(d) * d * static_cast<double>(constraints.size()) * m;
    if (entries > kExactCommutantEntries)
      throw std::runtime_error("commutant_on_x: exact system too large (" +
                               std::to_string(static_cast<std::uint64_t>(entries)) + " entries)");
    const auto roots = root_table<S>(ord);
    const Index dd = static_cast<Index>(d * d);
    Mat<S> sys = Mat<S>::Zero(dd * static_cast<Index>(constraints.size()), m);
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const PhaseMatrix& t = constraints[c];
      const S w = S(static_cast<long long>(t.weight()));
      for (std::size_t l = 0; l < m; ++l) {
        auto col = sys.col(l).segment(static_cast<Index>(c) * dd, dd);
        for (const auto& [node, e] : sol.basis[l].entries) {
          const std::size_t z = node / d, x = node % d;
          col(static_cast<Index>(node)) -= w * roots[e];
          for (const auto& [a, ea] : t.cols[z].entries)
            for (const auto& [b, eb] : t.cols[x].entries)
              col(static_cast<Index>(a * d + b)) += roots[mod(ea + e - eb, ord)];
        }
      }
    }
    res.dim = m - static_cast<std::size_t>(rank<S>(sys, tol));
    return res;
  } else {
    const auto roots = root_table<Complex>(ord);
    std::vector<double> scale(m);
    std::size_t total_support = 0;
    for (std::size_t k = 0; k < m; ++k) {
      scale[k] = std::sqrt(static_cast<double>(sol.basis[k].entries.size()));
      total_support += sol.basis[k].entries.size();
    }
    Mat<Complex> gram = Mat<Complex>::Zero(m, m);
    std::vector<Complex> acc(d * d, Complex(0));
    std::vector<std::uint32_t> touched;
    for (const PhaseMatrix& t : constraints) {
      const double w = static_cast<double>(t.weight());
      Mat<Complex> C = Mat<Complex>::Zero(m, m);
      const double sparse_cost = static_cast<double>(total_support) * w * w;
      const double dense_cost = 2.0 * static_cast<double>(m) * d * d * d;
      if (sparse_cost <= dense_cost) {
        for (std::size_t l = 0; l < m; ++l) {
          for (const auto& [node, e] : sol.basis[l].entries) {
            const std::size_t z = node / d, x = node % d;
            for (const auto& [a, ea] : t.cols[z].entries)
              for (const auto& [b, eb] : t.cols[x].entries) {
                const std::size_t ab = a * d + b;
                if (acc[ab] == Complex(0)) touched.push_back(static_cast<std::uint32_t>(ab));
                acc[ab] += roots[mod(ea + e - eb, ord)];
              }
          }
          for (std::uint32_t ab : touched) {
            const std::int32_t k = which[ab];
            if (k >= 0) C(k, l) += std::conj(roots[ex[ab]]) * acc[ab];
            acc[ab] = Complex(0);
          }
          touched.clear();
        }
      } else {
        const Mat<Complex> td = to_dense<Complex>(t);
        for (std::size_t l = 0; l < m; ++l) {
          Mat<Complex> bl = Mat<Complex>::Zero(d, d);
          for (const auto& [node, e] : sol.basis[l].entries) bl(node / d, node % d) = roots[e];
          const Mat<Complex> mm = td * bl * td.adjoint();
          for (std::size_t z = 0; z < d; ++z)
            for (std::size_t x = 0; x < d; ++x) {
              const std::int32_t k = which[z * d + x];
              if (k >= 0) C(k, l) += std::conj(roots[ex[z * d + x]]) * mm(z, x);
            }
        }
      }
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) C(k, l) /= w * scale[k] * scale[l];
      gram += 2.0 * Mat<Complex>::Identity(m, m) - C - C.adjoint();
    }
    res.dim = constraints.empty() ? m : static_cast<std::size_t>(psd_nullity(gram, tol));
    return res;
  }
}

template <class S>
Index block_commutant(const WeilModule& W, const PoolOperators& ops, const Mat<S>& basis,
                      double tol) {
  (void)W;
  std::vector<Mat<S>> restricted;
  for (std::size_t k = 0; k < ops.t.size(); ++k) {
    if (!ops.core[k]) continue;
    double r = 0;
    restricted.push_back(restrict_to<S>(apply_sparse<S>(ops.t[k], basis), basis, &r));
  }
  return commutant_dimension_dense<S>(restricted, tol);
}

template <class S>
double invariance_residual(const PoolOperators& ops, const Mat<S>& basis, bool random_probe,
                           std::uint64_t seed) {
  double worst = 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> pick(1, 1000);
  std::normal_distribution<double> gauss;
  for (const PhaseMatrix& t : ops.t) {
    Mat<S> probe = basis;
    if (random_probe) {
      Mat<S> r(basis.cols(), 1);
      for (Index i = 0; i < r.rows(); ++i) {
        if constexpr (ScalarTraits<S>::exact)
          r(i, 0) = S(pick(rng));
        else
          r(i, 0) = Complex(gauss(rng), gauss(rng));
      }
      probe = basis * r;
    }
    Mat<S> tb = apply_sparse<S>(t, probe);
    if constexpr (!ScalarTraits<S>::exact)
      tb /= std::sqrt(static_cast<double>(std::max<std::size_t>(1, t.weight())));
    double r = 0;
    if constexpr (ScalarTraits<S>::exact) {
      Mat<S> aug(basis.rows(), basis.cols() + tb.cols());
      aug << basis, tb;
      r = rank<S>(aug, 0) > basis.cols() ? 1.0 : 0.0;
    } else {
      restrict_to<S>(tb, basis, &r);
      if (random_probe && probe.size()) r /= std::max(1.0, probe.cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, r);
  }
  return worst;
}

#define WEILREP_INSTANTIATE(S)                                                              \
  template Mat<S> bot_basis<S>(const WeilModule&);                                          \
  template Mat<S> remove_bot<S>(const WeilModule&, const Mat<S>&);                          \
  template std::vector<Block<S>> top_eigenspaces<S>(const WeilModule&, double);             \
  template std::vector<Block<S>> classical_split<S>(const WeilModule&);                     \
  template std::vector<Block<S>> u_constituents<S>(const WeilModule&, double);              \
  template SpFiltration<S> sp_filtration<S>(const WeilModule&, double);                     \
  template CommutantResult commutant_on_x<S>(const WeilModule&, const GeneratorPool&, double); \
  template Index block_commutant<S>(const WeilModule&, const PoolOperators&, const Mat<S>&, \
                                    double);                                                \
  template double invariance_residual<S>(const PoolOperators&, const Mat<S>&, bool,         \
                                         std::uint64_t);

WEILREP_INSTANTIATE(Complex)
WEILREP_INSTANTIATE(ModP)

#undef WEILREP_INSTANTIATE

}  // namespace weilrep

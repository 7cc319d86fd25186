#include "weilrep/verify.hpp"

#include <cctype>
#include <chrono>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "weilrep/orbit_cache.hpp"

namespace weilrep {

void check_budget(const RingParams& params, const Budget& budget) {
  const std::uint64_t d = schrodinger_dim(params);
  const HermitianSpace V(params);
  if (d > budget.max_dim)
    throw BudgetError("dim X = " + std::to_string(d) + " exceeds the budget " +
                      std::to_string(budget.max_dim));
  if (V.size() > budget.max_vectors)
    throw BudgetError("|V| = " + std::to_string(V.size()) + " exceeds the budget " +
                      std::to_string(budget.max_vectors));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rings", "forms", "orbits",     "schrodinger",
                                              "weil",  "dims",  "commutant", "su",
                                              "sp-filtration"};
  return names;
}

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

std::vector<std::string> parse_suites(const std::string& list) {
  std::set<std::string> chosen;
  for (const auto& s : split(list)) {
    if (s == "all") {
      chosen.insert(suite_names().begin(), suite_names().end());
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ParamError("unknown suite '" + s + "'");
    chosen.insert(s);
  }
  if (chosen.empty()) throw ParamError("no suites selected");
  std::vector<std::string> out;
  for (const auto& s : suite_names())
    if (chosen.count(s)) out.push_back(s);
  return out;
}

std::vector<GroupTag> parse_groups(const std::string& list) {
  std::set<GroupTag> chosen;
  for (const auto& s : split(list)) chosen.insert(parse_group(s));
  if (chosen.empty()) throw ParamError("no groups selected");
  std::vector<GroupTag> out;
  for (GroupTag g : {GroupTag::U, GroupTag::SU, GroupTag::Sp})
    if (chosen.count(g)) out.push_back(g);
  return out;
}

namespace {

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string group_key(GroupTag g) {
  std::string s = to_string(g);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

std::string holds(bool ok) { return ok ? "holds" : "violated"; }

/// (T S(k)) = S(^g k) T residual for the unitary rescaling of T.
double intertwining_residual(const WeilModule& W, const PhaseMatrix& t, const RLinearMap& g) {
  const Schrodinger& S = W.schrodinger();
  const auto roots = root_table<Complex>(W.order());
  const Mat<Complex> T =
      to_dense<Complex>(t) / std::sqrt(static_cast<double>(std::max<std::size_t>(1, t.weight())));
  double worst = 0;
  for (const HeisElem& k : S.generators()) {
    const MonomialOp right = S.op(k);
    const MonomialOp left = S.op(heis_conj(W.space(), g, k));
    Mat<Complex> ts(T.rows(), T.cols());
    for (std::size_t x = 0; x < W.dim(); ++x) ts.col(x) = roots[right.phase[x]] * T.col(right.perm[x]);
    worst = std::max(worst, (ts - apply_sparse<Complex>(left, T)).cwiseAbs().maxCoeff());
  }
  return worst;
}

template <class S>
class Runner {
 public:
  Runner(const VerifyConfig& cfg, Report& rep)
      : cfg_(cfg), rep_(rep), prm_(cfg.params), V_(prm_), W_(prm_), rng_(cfg.seed) {}

  void run() {
    for (const auto& s : cfg_.suites) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t before = rep_.checks.size();
      try {
        if (s == "rings") rings();
        if (s == "forms") forms();
        if (s == "orbits") orbits();
        if (s == "schrodinger") schrodinger();
        if (s == "weil") weil();
        if (s == "dims") dims();
        if (s == "commutant") commutant();
        if (s == "su") su();
        if (s == "sp-filtration") sp_layers();
      } catch (const std::exception& e) {
        // The remaining suites still run; the report records the failure.
        rep_.add(s + "/error", "no error", e.what(), false);
      }
      if (cfg_.log) {
        std::size_t failed = 0;
        for (std::size_t i = before; i < rep_.checks.size(); ++i) failed += rep_.checks[i].pass ? 0 : 1;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        *cfg_.log << "[" << s << "] " << (rep_.checks.size() - before) << " checks, " << failed
                  << " failed, " << secs << " s\n";
      }
    }
    emit_constituents();
  }

 private:
  const VerifyConfig& cfg_;
  Report& rep_;
  RingParams prm_;
  HermitianSpace V_;
  WeilModule W_;
  std::mt19937_64 rng_;

  std::map<GroupTag, GeneratorPool> pools_;
  std::map<GroupTag, OrbitCertificate> certs_;
  std::map<GroupTag, PoolOperators> core_ops_;
  std::map<GroupTag, CommutantResult> commutants_;
  std::optional<std::vector<Block<S>>> blocks_;
  std::optional<SpFiltration<S>> filtration_;
  std::vector<Int> block_commutants_;
  std::vector<Int> layer_commutants_;
  bool su_rows_ = false;
  std::optional<std::optional<Int>> su_reference_;

  bool wants(GroupTag g) const {
    return std::find(cfg_.groups.begin(), cfg_.groups.end(), g) != cfg_.groups.end();
  }
  bool has_suite(const std::string& s) const {
    return std::find(cfg_.suites.begin(), cfg_.suites.end(), s) != cfg_.suites.end();
  }

  const GeneratorPool& pool(GroupTag g) {
    auto it = pools_.find(g);
    if (it == pools_.end()) it = pools_.emplace(g, generator_pool(V_, g)).first;
    return it->second;
  }
  const OrbitCertificate& cert(GroupTag g) {
    auto it = certs_.find(g);
    if (it == certs_.end()) {
      bool hit = false;
      it = certs_.emplace(g, count_orbits_cached(V_, pool(g), cfg_.cache_dir, &hit)).first;
      if (cfg_.log)
        *cfg_.log << "  orbits " << group_key(g) << (hit ? " (cache hit)" : "") << "\n";
    }
    return it->second;
  }
  const PoolOperators& core_ops(GroupTag g) {
    auto it = core_ops_.find(g);
    if (it == core_ops_.end()) it = core_ops_.emplace(g, pool_operators(W_, pool(g), true)).first;
    return it->second;
  }
  const std::vector<Block<S>>& blocks() {
    if (!blocks_) blocks_ = u_constituents<S>(W_, cfg_.tol);
    return *blocks_;
  }
  const SpFiltration<S>& filtration() {
    if (!filtration_) filtration_ = sp_filtration<S>(W_, cfg_.tol);
    return *filtration_;
  }
  /// At n = 1 the SU orbit count has no closed form; the reference is the orbit count of the
  /// exhaustively enumerated SU when that is feasible.
  bool su_open() const { return prm_.n == 1 && prm_.ell > 1; }
  std::optional<Int> su_reference() {
    if (su_reference_) return *su_reference_;
    su_reference_.emplace();
    if (std::pow(static_cast<double>(V_.ring().size()), 4.0 * prm_.n * prm_.n) > kExhaustiveBound)
      return std::nullopt;
    const auto G = enumerate_group_exhaustive(V_, GroupTag::SU);
    std::vector<char> seen(V_.size(), 0);
    Int orbits = 0;
    for (std::uint64_t i = 0; i < V_.size(); ++i) {
      if (seen[i]) continue;
      ++orbits;
      const HVector x = V_.from_index(i);
      for (const auto& g : G) seen[V_.index(apply(V_, g, x))] = 1;
    }
    if (cfg_.log) *cfg_.log << "  exhaustive SU: " << G.size() << " elements\n";
    su_reference_.emplace(orbits);
    return orbits;
  }

  /// nullopt when the exact system is refused as too large.
  std::optional<CommutantResult> commutant_of(GroupTag g) {
    auto it = commutants_.find(g);
    if (it != commutants_.end()) return it->second;
    try {
      return commutants_.emplace(g, commutant_on_x<S>(W_, pool(g), cfg_.tol)).first->second;
    } catch (const std::runtime_error& e) {
      if (!ScalarTraits<S>::exact) throw;
      return std::nullopt;
    }
  }

  HVector random_vector() {
    std::uniform_int_distribution<std::uint64_t> d(0, V_.size() - 1);
    return V_.from_index(d(rng_));
  }

  RLinearMap random_product(const std::vector<const PoolElement*>& core, int max_len) {
    std::uniform_int_distribution<std::size_t> pick(0, core.size() - 1);
    std::uniform_int_distribution<int> len(1, max_len);
    RLinearMap g = identity_map(V_);
    for (int k = len(rng_); k > 0; --k) g = compose(V_, g, core[pick(rng_)]->map);
    return g;
  }

  // ---- rings ------------------------------------------------------------------

  void rings() {
    const Ring& A = V_.ring();
    const auto el = A.elements();
    const std::size_t sz = el.size();
    rep_.expect("rings/size", prm_.a_size(), static_cast<Int>(sz));

    bool ok = true;
    std::size_t triples = 0;
    auto check_triple = [&](const AElem& a, const AElem& b, const AElem& c) {
      ++triples;
      ok = ok && A.mul(a, A.mul(b, c)) == A.mul(A.mul(a, b), c) && A.mul(a, b) == A.mul(b, a) &&
           A.mul(a, A.add(b, c)) == A.add(A.mul(a, b), A.mul(a, c));
    };
    if (sz <= 27) {
      for (const auto& a : el)
        for (const auto& b : el)
          for (const auto& c : el) check_triple(a, b, c);
    } else {
      std::uniform_int_distribution<std::size_t> d(0, sz - 1);
      for (int k = 0; k < 20000; ++k) check_triple(el[d(rng_)], el[d(rng_)], el[d(rng_)]);
    }
    rep_.add("rings/axioms", "holds", holds(ok) + " (" + std::to_string(triples) + " triples)", ok);

    bool inv = true, nm = true;
    std::size_t pairs = 0;
    auto check_pair = [&](const AElem& a, const AElem& b) {
      ++pairs;
      inv = inv && A.involution(A.mul(a, b)) == A.mul(A.involution(a), A.involution(b)) &&
            A.involution(A.add(a, b)) == A.add(A.involution(a), A.involution(b)) &&
            A.involution(A.involution(a)) == a;
      nm = nm && A.norm(A.mul(a, b)) == mod(A.norm(a) * A.norm(b), A.r_mod());
    };
    if (sz <= 243) {
      for (const auto& a : el)
        for (const auto& b : el) check_pair(a, b);
    } else {
      std::uniform_int_distribution<std::size_t> d(0, sz - 1);
      for (int k = 0; k < 50000; ++k) check_pair(el[d(rng_)], el[d(rng_)]);
    }
    const std::string np = " (" + std::to_string(pairs) + " pairs)";
    rep_.add("rings/involution", "automorphism of order <= 2", holds(inv) + np, inv);
    rep_.add("rings/norm-multiplicative", "holds", holds(nm) + np, nm);

    rep_.add("rings/pi-squared", "(" + std::to_string(prm_.p % A.r_mod()) + ",0)",
             "(" + std::to_string(A.mul(A.pi(), A.pi()).r) + "," +
                 std::to_string(A.mul(A.pi(), A.pi()).s) + ")",
             A.mul(A.pi(), A.pi()) == A.make(prm_.p, 0));
    Int ann = 0;
    for (Int r = 0; r < A.r_mod(); ++r) ann += A.mul(A.make(r, 0), A.pi()) == A.zero() ? 1 : 0;
    rep_.expect("rings/annihilator-of-pi", prm_.p, ann);

    bool ideals = true;
    std::vector<Int> sizes;
    for (int j = 0; j <= prm_.nilpotency(); ++j) {
      const auto I = A.ideal(j);
      sizes.push_back(static_cast<Int>(I.size()));
      ideals = ideals && static_cast<Int>(I.size()) == ipow(prm_.p, std::max(0, prm_.nilpotency() - j));
      const std::set<AElem> Is(I.begin(), I.end());
      for (const auto& a : el) ideals = ideals && (Is.count(a) > 0) == (A.valuation(a) >= j);
    }
    rep_.add("rings/ideal-chain", "|r^j| = p^(2l-1-j), valuation consistent", join(sizes), ideals);

    Int skew = 0;
    bool skew_ok = true;
    for (const auto& a : el)
      if (A.involution(a) == A.neg(a)) {
        ++skew;
        skew_ok = skew_ok && a.r == 0;
      }
    rep_.add("rings/skew-part", "S = R pi, |S| = " + std::to_string(prm_.s_modulus()),
             std::to_string(skew), skew_ok && skew == prm_.s_modulus());

    const auto N = A.norm_one_group();
    rep_.expect("rings/norm-group-size", 2 * prm_.s_modulus(), static_cast<Int>(N.size()));
    bool cyclic = true;
    try {
      norm_group(A);
    } catch (const std::runtime_error&) {
      cyclic = false;
    }
    rep_.add("rings/norm-group-cyclic", "cyclic", cyclic ? "cyclic" : "not cyclic", cyclic);
    const Int e = A.lambda_char(ipow(prm_.p, prm_.ell - 1)).e;
    rep_.add("rings/lambda-primitive", "lambda(p^(l-1)) != 1", "exponent " + std::to_string(e),
             e != 0);
  }

  // ---- forms ------------------------------------------------------------------

  void forms() {
    const Ring& A = V_.ring();
    const std::uint64_t size = V_.size();
    const bool all_pairs = size <= 729;
    bool skew = true, alt = true, lin = true;
    std::size_t pairs = 0;
    auto check_pair = [&](const HVector& x, const HVector& y, const AElem& a) {
      ++pairs;
      skew = skew && V_.herm(y, x) == A.neg(A.involution(V_.herm(x, y)));
      alt = alt && V_.alt_f(x, x) == 0;
      lin = lin && V_.herm(x, V_.scale(a, y)) == A.mul(a, V_.herm(x, y)) &&
            V_.herm(V_.scale(a, x), y) == A.mul(A.involution(a), V_.herm(x, y));
    };
    const auto el = A.elements();
    std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
    if (all_pairs) {
      for (std::uint64_t i = 0; i < size; ++i)
        for (std::uint64_t j = 0; j < size; ++j)
          check_pair(V_.from_index(i), V_.from_index(j), el[(i * 7 + j) % el.size()]);
    } else {
      for (int k = 0; k < 10000; ++k) check_pair(random_vector(), random_vector(), el[pick(rng_)]);
    }
    const std::string np = " (" + std::to_string(pairs) + " pairs)";
    rep_.add("forms/skew-hermitian", "h(y,x) = -h(x,y)*", holds(skew) + np, skew);
    rep_.add("forms/alternating", "f(x,x) = 0", holds(alt) + np, alt);
    rep_.add("forms/sesquilinear", "h(a x, b y) = a* b h(x,y)", holds(lin) + np, lin);

    const auto gens = V_.additive_generators();
    bool nondeg = true;
    const bool all_vectors = size <= 59049;
    const std::uint64_t samples = all_vectors ? size : 10000;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const HVector x = all_vectors ? V_.from_index(i) : random_vector();
      if (x == V_.zero()) continue;
      bool found = false;
      for (const auto& g : gens) found = found || V_.herm(x, g) != A.zero();
      nondeg = nondeg && found;
    }
    rep_.add("forms/nondegenerate", "holds",
             holds(nondeg) + " (" + std::to_string(samples) + " vectors)", nondeg);

    // {h(x,x) : depth(x) = 0} = S.
    std::set<AElem> image;
    bool in_s = true;
    if (size <= 729) {
      V_.for_each([&](std::uint64_t, const HVector& x) {
        if (V_.depth(x) == 0) image.insert(V_.herm(x, x));
      });
    } else {
      for (Int r = 0; r < A.r_mod(); ++r) {
        HVector x = V_.u(0);
        x.c[V_.n()] = A.mul(A.pi(), A.make(r, 0));
        image.insert(V_.herm(x, x));
      }
      for (int k = 0; k < 10000; ++k) {
        const HVector x = random_vector();
        if (V_.depth(x) == 0) in_s = in_s && V_.herm(x, x).r == 0;
      }
    }
    std::set<AElem> skew_elems;
    for (const auto& a : el)
      if (a.r == 0) skew_elems.insert(a);
    rep_.add("forms/skew-image", "image = S (" + std::to_string(skew_elems.size()) + " elements)",
             std::to_string(image.size()) + " elements", in_s && image == skew_elems);

    const bool enumerate_v = size <= 6561;
    bool dual_ok = true;
    for (int i = 1; i <= prm_.ell; ++i) {
      const auto dual = V_.dual_submodule(i);
      const auto ideal = V_.ideal_multiple(2 * i - 1);
      dual_ok = dual_ok && V_.cardinality(dual) == V_.cardinality(ideal);
      const std::uint64_t n = enumerate_v ? size : 10000;
      std::uint64_t count = 0;
      for (std::uint64_t k = 0; k < n; ++k) {
        const HVector x = enumerate_v ? V_.from_index(k) : random_vector();
        const bool a = V_.contains(dual, x), b = V_.contains(ideal, x);
        dual_ok = dual_ok && a == b;
        count += a ? 1 : 0;
      }
      if (enumerate_v) dual_ok = dual_ok && count == V_.cardinality(ideal);
      // Elements of the ideal multiple are sampled directly as well.
      for (int k = 0; k < 200; ++k)
        dual_ok = dual_ok && V_.contains(dual, V_.scale(A.mul_pi_pow(A.one(), 2 * i - 1), random_vector()));
    }
    rep_.add("forms/dual-is-ideal", "V(m^i) = r^(2i-1) V, i = 1..l",
             holds(dual_ok) + (enumerate_v ? " (enumerated)" : " (sampled)"), dual_ok);

    bool perp_ok = true;
    for (int k = 0; k <= prm_.nilpotency(); ++k) {
      const auto U = V_.ideal_multiple(k);
      const auto P = V_.perp(U);
      perp_ok = perp_ok && V_.perp(P) == U && V_.cardinality(U) * V_.cardinality(P) == size;
      const auto Pset = V_.perp_of(k);
      const std::uint64_t n = enumerate_v ? size : 10000;
      for (std::uint64_t j = 0; j < n; ++j) {
        const HVector x = enumerate_v ? V_.from_index(j) : random_vector();
        perp_ok = perp_ok && V_.contains(P, x) == V_.contains(Pset, x);
      }
    }
    rep_.add("forms/perp-duality", "(r^k V)^perp = r^(2l-1-k) V and |U||U^perp| = |V|", holds(perp_ok),
             perp_ok);

    std::vector<Int> layers(prm_.nilpotency() + 1, 0), expect(prm_.nilpotency() + 1, 0);
    V_.for_each([&](std::uint64_t, const HVector& x) { ++layers[V_.depth(x)]; });
    for (int k = 0; k <= prm_.nilpotency(); ++k)
      expect[k] = static_cast<Int>(V_.cardinality(V_.ideal_multiple(k)) -
                                   (k < prm_.nilpotency() ? V_.cardinality(V_.ideal_multiple(k + 1)) : 0));
    rep_.add("forms/depth-layers", join(expect), join(layers), layers == expect);
  }

  // ---- orbits -----------------------------------------------------------------

  void orbits() {
    for (GroupTag g : cfg_.groups) orbit_checks(g);
  }

  void orbit_checks(GroupTag g) {
    const OrbitCertificate& c = cert(g);
    const std::string key = "orbits/" + group_key(g);
    const std::string detail = " (bfs " + std::to_string(c.bfs_orbit_count) + ", fibers " +
                               std::to_string(c.invariant_fiber_count) + ")";
    const std::string status = c.exact ? "exact" : (c.refines ? "refines" : "inconsistent");
    if (g == GroupTag::SU && su_open()) {
      if (const auto ref = su_reference()) {
        const bool hit = *ref == static_cast<Int>(c.bfs_orbit_count);
        rep_.add(key + "/count", std::to_string(*ref) + " (exhaustive SU)",
                 std::to_string(c.bfs_orbit_count), hit);
        rep_.add(key + "/certificate", "exact",
                 std::string(hit && c.refines ? "exact (exhaustive)" : status) + detail, hit && c.refines);
      } else {
        rep_.add(key + "/count", "no closed form at n = 1 (informational)",
                 std::to_string(c.bfs_orbit_count), true);
        rep_.add(key + "/certificate", "refines", status + detail, c.refines);
      }
    } else {
      const auto predicted = static_cast<Int>(predicted_orbit_count(prm_, g));
      rep_.expect(key + "/count", predicted, static_cast<Int>(c.bfs_orbit_count));
      rep_.add(key + "/certificate", "exact", status + detail, c.exact);
    }
    std::uint64_t total = 0;
    for (const auto& o : c.orbits) total += o.size;
    rep_.expect(key + "/sizes-sum", static_cast<Int>(V_.size()), static_cast<Int>(total));
    rep_.totals.emplace_back("orbits_" + group_key(g), static_cast<Int>(c.bfs_orbit_count));
    if (g == GroupTag::Sp) {
      std::vector<Int> want, got;
      for (int k = 0; k < prm_.nilpotency(); ++k)
        want.push_back(static_cast<Int>(V_.cardinality(V_.ideal_multiple(k)) -
                                        V_.cardinality(V_.ideal_multiple(k + 1))));
      want.push_back(1);
      std::map<int, Int> by_depth;
      for (const auto& o : c.orbits) by_depth[o.label.depth] += static_cast<Int>(o.size);
      for (const auto& [d, s] : by_depth) got.push_back(s);
      rep_.add(key + "/cells", join(want), join(got), want == got);
    }
  }

  // ---- schrodinger ------------------------------------------------------------

  HeisElem random_heis() {
    std::uniform_int_distribution<Int> r(0, V_.ring().r_mod() - 1);
    return HeisElem{r(rng_), random_vector()};
  }

  void schrodinger() {
    const Schrodinger& sch = W_.schrodinger();
    rep_.expect("schrodinger/dim", ipow(prm_.p, (2 * prm_.ell - 1) * prm_.n),
                static_cast<Int>(sch.dim()));

    bool group_ok = true;
    const HeisElem id{0, V_.zero()};
    for (int k = 0; k < 1000; ++k) {
      const HeisElem a = random_heis(), b = random_heis(), c = random_heis();
      group_ok = group_ok && heis_mul(V_, a, heis_mul(V_, b, c)) == heis_mul(V_, heis_mul(V_, a, b), c) &&
                 heis_mul(V_, a, id) == a && heis_mul(V_, a, heis_inverse(V_, a)) == id;
    }
    rep_.add("schrodinger/heisenberg-group", "group axioms", holds(group_ok) + " (1000 triples)", group_ok);

    // The center is R x 0: (r, u) commutes with every generator exactly when u = 0.
    const auto gens = sch.generators();
    std::uint64_t central = 0;
    const bool all = V_.size() <= 59049;
    const std::uint64_t n = all ? V_.size() : 2000;
    bool center_ok = true;
    for (std::uint64_t i = 0; i < n; ++i) {
      const HVector u = all ? V_.from_index(i) : random_vector();
      bool commutes = true;
      for (const auto& g : gens)
        commutes = commutes && heis_mul(V_, {0, u}, g) == heis_mul(V_, g, {0, u});
      if (commutes) ++central;
      center_ok = center_ok && commutes == (u == V_.zero());
    }
    rep_.add("schrodinger/center", "R x {0}",
             holds(center_ok) + " (" + std::to_string(central) + " central vectors)", center_ok);

    bool hom = true;
    std::size_t checked = 0;
    for (const auto& a : gens)
      for (const auto& b : gens) {
        hom = hom && compose(sch.op(a), sch.op(b)) == sch.op(heis_mul(V_, a, b));
        ++checked;
      }
    const int random_pairs = sch.dim() <= 243 ? 1000 : 100;
    for (int k = 0; k < random_pairs; ++k) {
      const HeisElem a = random_heis(), b = random_heis();
      hom = hom && compose(sch.op(a), sch.op(b)) == sch.op(heis_mul(V_, a, b));
      ++checked;
    }
    bool center_scalar = true;
    for (Int r = 0; r < V_.ring().r_mod(); ++r) {
      const MonomialOp z = sch.op({r, V_.zero()});
      for (std::size_t v = 0; v < z.dim(); ++v)
        center_scalar = center_scalar && z.perm[v] == v && z.phase[v] == mod(r, sch.order());
    }
    rep_.add("schrodinger/homomorphism", "S(a)S(b) = S(ab)",
             holds(hom) + " (" + std::to_string(checked) + " pairs)", hom);
    rep_.add("schrodinger/central-character", "S(r,0) = lambda(r)", holds(center_scalar),
             center_scalar);

    std::vector<MonomialOp> ops;
    for (const auto& g : gens) ops.push_back(sch.op(g));
    rep_.expect("schrodinger/irreducible", 1,
                static_cast<Int>(monomial_pair_space(ops, ops, false).consistent));

    if (prm_.ell > 1) {
      const auto fixed = sch.fixed_space(V_.ideal_multiple(2 * prm_.ell - 2));
      const Int want = ipow(prm_.p, (2 * prm_.ell - 3) * prm_.n);
      std::set<std::vector<std::uint32_t>> a, b;
      bool flat = true;
      for (const auto& v : fixed.basis) {
        std::vector<std::uint32_t> supp;
        for (const auto& [i, e] : v.entries) {
          supp.push_back(i);
          flat = flat && e == v.entries.front().second;
        }
        a.insert(supp);
      }
      for (const auto& supp : bot_supports(W_)) b.insert(supp);
      rep_.add("schrodinger/bot-fixed-space",
               "dim " + std::to_string(want) + ", basis E_t",
               "dim " + std::to_string(fixed.basis.size()) + (a == b && flat ? ", basis E_t" : ", other basis"),
               static_cast<Int>(fixed.basis.size()) == want && a == b && flat);
    }
    const auto everything = sch.fixed_space(V_.ideal_multiple(prm_.nilpotency()));
    rep_.expect("schrodinger/fixed-space-zero", static_cast<Int>(sch.dim()),
                static_cast<Int>(everything.basis.size()));
  }

  // ---- weil -------------------------------------------------------------------

  void weil() {
    const Ring& A = V_.ring();
    const GeneratorPool& sp = pool(GroupTag::Sp);
    const auto core = sp.core();
    const std::size_t d = W_.dim();

    // Schur and intertwining for seeded random products.
    bool schur = true, exact = true;
    double resid = 0;
    std::set<std::size_t> sol_dims;
    for (int k = 0; k < 50; ++k) {
      const RLinearMap g = random_product(core, 8);
      const std::size_t sd = W_.intertwiner_solution_dim(g);
      sol_dims.insert(sd);
      schur = schur && sd == 1;
      const PhaseMatrix t = W_.intertwiner(g);
      exact = exact && W_.check_intertwining(t, g);
      resid = std::max(resid, intertwining_residual(W_, t, g));
    }
    std::string dims;
    for (auto s : sol_dims) dims += (dims.empty() ? "" : ",") + std::to_string(s);
    rep_.add("weil/schur", "solution dim 1 (50 products)", "solution dims {" + dims + "}", schur);
    rep_.add("weil/intertwining", "exact, residual < " + sci(cfg_.tol),
             std::string(exact ? "exact" : "not exact") + ", residual " + sci(resid),
             exact && resid < cfg_.tol);

    const PhaseMatrix tm = W_.intertwiner(minus_identity(V_));
    const bool minus = tm == normalized(from_monomial(W_.parity()));
    rep_.add("weil/minus-identity", "T(-1) = P(-1) up to scalar", holds(minus), minus);
    const Int q = static_cast<Int>(d);
    const Mat<Complex> bp = parity_basis(W_, 1), bm = parity_basis(W_, -1);
    rep_.add("weil/parity-dims", std::to_string((q + 1) / 2) + "," + std::to_string((q - 1) / 2),
             std::to_string(bp.cols()) + "," + std::to_string(bm.cols()),
             bp.cols() == (q + 1) / 2 && bm.cols() == (q - 1) / 2);

    // The N-action.
    const NormGroup N = norm_group(A);
    bool hom = true, conj = true;
    for (const auto& a : N.elements) {
      const MonomialOp pa = W_.n_action(a);
      conj = conj && W_.check_intertwining(from_monomial(pa), embed_unitary(V_, scalar_matrix(V_, a)));
      for (const auto& b : N.elements)
        hom = hom && compose(pa, W_.n_action(b)) == W_.n_action(A.mul(a, b));
    }
    rep_.add("weil/n-action-homomorphism", "P(a)P(b) = P(ab) on N", holds(hom), hom);
    rep_.add("weil/n-action-conjugation", "P(a)S(k)P(a)^-1 = S(ak)", holds(conj), conj);

    // c(a): exact sign for permutations, compared with the float normalization.
    const PrincipalUnits P1 = principal_units(A);
    bool principal = true, agree = true, scalar = true;
    std::vector<Int> cvals;
    for (const auto& a : N.elements) {
      const int c = W_.permutation_normalization(W_.n_action(a));
      cvals.push_back(c);
      if (std::find(P1.powers.begin(), P1.powers.end(), a) != P1.powers.end())
        principal = principal && c == 1;
      const WeilOperator wa =
          weil_normalize(W_, W_.intertwiner(embed_unitary(V_, scalar_matrix(V_, a))), cfg_.tol);
      agree = agree && std::abs(wa.c - Complex(c)) < cfg_.tol;
      const Mat<Complex> ratio = wa.w * to_dense<Complex>(W_.n_action(a)).adjoint();
      scalar = scalar &&
               (ratio - ratio(0, 0) * Mat<Complex>::Identity(d, d)).cwiseAbs().maxCoeff() < cfg_.tol;
    }
    rep_.add("weil/c-principal-units", "c(a) = 1 on N cap (1 + r)", "c on N: " + join(cvals),
             principal);
    const int cm1 = W_.permutation_normalization(W_.parity());
    const int want_cm1 = ((q - 1) / 2) % 2 == 0 ? 1 : -1;
    rep_.add("weil/c-minus-one", std::to_string(want_cm1), std::to_string(cm1), cm1 == want_cm1);
    rep_.add("weil/c-float-agrees", "det formula = exact sign", holds(agree), agree);
    rep_.add("weil/psi-scalar", "W(a) P(a)^-1 scalar", holds(scalar), scalar);

    homomorphism_check(core);
    if (prm_.ell > 1) bot_descent_check();
    if (prm_.ell > 1 && static_cast<double>(V_.ring().size()) <= 10'000'000 &&
        std::pow(static_cast<double>(V_.ring().size()), 4.0 * prm_.n * prm_.n) <= kExhaustiveBound)
      omega_check();
  }

  void homomorphism_check(const std::vector<const PoolElement*>& core) {
    const std::size_t d = W_.dim();
    const int pairs = d <= 243 ? 12 : 3;
    const Int qn = ipow(prm_.p, prm_.n);
    double resid = 0;
    std::set<int> eps;
    bool ok = true;
    for (int k = 0; k < pairs; ++k) {
      const RLinearMap g = random_product(core, 4), h = random_product(core, 4);
      const Mat<Complex> wg = weil_normalize(W_, W_.intertwiner(g), cfg_.tol).w;
      const Mat<Complex> wh = weil_normalize(W_, W_.intertwiner(h), cfg_.tol).w;
      const Mat<Complex> wgh = weil_normalize(W_, W_.intertwiner(compose(V_, g, h)), cfg_.tol).w;
      const Mat<Complex> prod = wg * wh;
      Index i = 0, j = 0;
      wgh.cwiseAbs().maxCoeff(&i, &j);
      const Complex e = prod(i, j) / wgh(i, j);
      const int s = std::abs(e - Complex(1)) < 1e-6 ? 1 : (std::abs(e + Complex(1)) < 1e-6 ? -1 : 0);
      eps.insert(s);
      resid = std::max(resid, (prod - e * wgh).cwiseAbs().maxCoeff());
      ok = ok && s != 0 && (qn % 4 != 1 || s == 1);
    }
    ok = ok && resid < cfg_.tol;
    std::string es;
    for (int s : eps) es += (es.empty() ? "" : ",") + std::to_string(s);
    rep_.add("weil/homomorphism",
             qn % 4 == 1 ? "epsilon = 1" : "epsilon in {1,-1}",
             "epsilon {" + es + "}, residual " + sci(resid), ok);
  }

  void bot_descent_check() {
    const Schrodinger& sch = W_.schrodinger();
    const Ring& A = V_.ring();
    const RingParams cp = RingParams::make(prm_.p, prm_.ell - 1, prm_.n);
    const Schrodinger child(cp, mod(-sch.lambda_unit(), ipow(prm_.p, prm_.ell - 1)));
    const auto supports = bot_supports(W_);
    bool ok = true;
    std::size_t count = 0;
    for (const HeisElem& kb : child.generators()) {
      HeisElem k{mod(-prm_.p * kb.r, A.r_mod()), V_.zero()};
      for (int j = 0; j < V_.rank(); ++j)
        k.u.c[j] = A.mul(A.pi(), A.make(kb.u.c[j].r, kb.u.c[j].s));
      const MonomialOp op = sch.op(k);
      const MonomialOp cop = child.op(kb);
      for (std::size_t w = 0; w < supports.size(); ++w) {
        PhaseVector e{sch.order(), {}};
        for (std::uint32_t i : supports[w]) e.entries.emplace_back(i, 0);
        PhaseVector lhs = apply(op, e);
        PhaseVector rhs{sch.order(), {}};
        for (std::uint32_t i : supports[cop.perm[w]])
          rhs.entries.emplace_back(i, mod(cop.phase[w] * prm_.p, sch.order()));
        std::sort(lhs.entries.begin(), lhs.entries.end());
        ok = ok && lhs == rhs;
      }
      ++count;
    }
    rep_.add("weil/bot-descent", "S(k) on Bot = quotient S(k) (" + std::to_string(count) + " generators)",
             holds(ok), ok);
  }

  void omega_check() {
    const Ring& A = V_.ring();
    const auto U = enumerate_group_exhaustive(V_, GroupTag::U);
    const auto omega = congruence_subgroup(V_, U);
    const Mat<Complex> bot = bot_basis<Complex>(W_);
    std::map<std::vector<AElem>, std::size_t> index;
    std::vector<Complex> chi;
    bool scalar = true;
    double worst = 0;
    for (std::size_t k = 0; k < omega.size(); ++k) {
      index[omega[k].entries()] = k;
      const Mat<Complex> w =
          weil_normalize(W_, W_.intertwiner(embed_unitary(V_, omega[k])), cfg_.tol).w;
      const Mat<Complex> wb = w * bot;
      const Mat<Complex> m = bot.adjoint() * wb;
      const double r = std::max((wb - bot * m).cwiseAbs().maxCoeff(),
                                (m - m(0, 0) * Mat<Complex>::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
      worst = std::max(worst, r);
      scalar = scalar && r < cfg_.tol;
      chi.push_back(m(0, 0));
    }
    rep_.add("weil/omega-scalar", "W(g) scalar on Bot for g in Omega",
             holds(scalar) + " (" + std::to_string(omega.size()) + " elements, residual " + sci(worst) + ")",
             scalar);

    bool character = true;
    std::uniform_int_distribution<std::size_t> pick(0, omega.size() - 1);
    for (int k = 0; k < 500; ++k) {
      const std::size_t a = pick(rng_), b = pick(rng_);
      const auto it = index.find(mat_mul(V_, omega[a], omega[b]).entries());
      character = character && it != index.end() &&
                  std::abs(chi[it->second] - chi[a] * chi[b]) < 1e-6;
    }
    rep_.add("weil/omega-character", "scalars form a character of Omega", holds(character), character);

    // A character phi of N with chi(g) phi(det g) = 1 on Omega.
    const NormGroup N = norm_group(A);
    std::vector<Int> found;
    for (Int j = 0; j < N.order; ++j) {
      bool trivial = true;
      for (std::size_t k = 0; k < omega.size() && trivial; ++k) {
        const AElem dg = det(V_, omega[k]);
        const auto pos = std::find(N.powers.begin(), N.powers.end(), dg) - N.powers.begin();
        const Complex phi = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j * pos) /
                                                static_cast<double>(N.order));
        trivial = std::abs(chi[k] * phi - Complex(1)) < 1e-6;
      }
      if (trivial) found.push_back(j);
    }
    rep_.add("weil/omega-twist", "some phi o det trivializes Omega on Bot",
             found.empty() ? "none found" : "phi_j for j in {" + join(found) + "}", !found.empty());
  }

  // ---- dims -------------------------------------------------------------------

  void dims() {
    const PredictedDims pd = predicted_dimensions(prm_);
    const auto& bl = blocks();
    rep_.expect("dims/dim-x", pd.dim_x, static_cast<Int>(W_.dim()));
    if (prm_.ell > 1) {
      rep_.expect("dims/dim-bot", pd.dim_bot, static_cast<Int>(bot_supports(W_).size()));
      std::vector<Int> tops;
      for (const auto& b : bl)
        if (b.label.rfind("Top(", 0) == 0) tops.push_back(b.basis.cols());
      const std::vector<Int> want(2 * prm_.s_modulus(), top_dimension(prm_.p, prm_.ell, prm_.n));
      rep_.add("dims/top-eigenspaces", join(want), join(tops), tops == want);
    }
    std::vector<Int> got, want;
    Mat<S> all(W_.dim(), 0);
    for (const auto& b : bl) {
      got.push_back(b.basis.cols());
      want.push_back(b.predicted);
      Mat<S> next(W_.dim(), all.cols() + b.basis.cols());
      next << all, b.basis;
      all = std::move(next);
    }
    std::vector<Int> sorted = got;
    std::sort(sorted.rbegin(), sorted.rend());
    rep_.add("dims/u-constituents", join(pd.u_constituents), join(sorted),
             sorted == pd.u_constituents && got == want);
    rep_.expect("dims/sum", pd.dim_x, std::accumulate(got.begin(), got.end(), Int{0}));
    rep_.expect("dims/direct-sum-rank", pd.dim_x, static_cast<Int>(rank<S>(all, cfg_.tol)));
    if (prm_.ell > 1) bot_embedding();
    principal_unit_checks(pd);
    block_invariance();
  }

  void bot_embedding() {
    const WeilModule child(RingParams::make(prm_.p, prm_.ell - 1, prm_.n),
                           mod(-W_.schrodinger().lambda_unit(), ipow(prm_.p, prm_.ell - 1)));
    std::vector<Int> want, got;
    for (const auto& b : u_constituents<S>(child, cfg_.tol)) want.push_back(b.basis.cols());
    for (const auto& b : blocks())
      if (b.label.rfind("Bot/", 0) == 0) got.push_back(b.basis.cols());
    rep_.add("dims/bot-embedding", join(want), join(got), want == got);
  }

  /// G_i sizes, X+-(phi) strata and the N1 permutation-module count.
  void principal_unit_checks(const PredictedDims& pd) {
    const Ring& A = V_.ring();
    const PrincipalUnits P1 = principal_units(A);
    const Int order = P1.order;  // p^(l-1)
    const int l = prm_.ell;
    // G_i: characters phi_k of N1 trivial on N cap (1 + r^(2l-1-i)).
    auto trivial_on = [&](Int k, int j) {
      for (Int m = 0; m < order; ++m)
        if (A.valuation(A.sub(P1.powers[m], A.one())) >= j && mod(k * m, order) != 0) return false;
      return true;
    };
    std::vector<Int> gs;
    std::vector<std::vector<bool>> in_g(2 * l - 1, std::vector<bool>(order));
    for (int i = 0; i <= 2 * l - 2; ++i) {
      Int c = 0;
      for (Int k = 0; k < order; ++k) {
        in_g[i][k] = trivial_on(k, 2 * l - 1 - i);
        c += in_g[i][k] ? 1 : 0;
      }
      gs.push_back(c);
    }
    rep_.add("dims/g-sizes", join(pd.g_sizes), join(gs), gs == pd.g_sizes);

    // X+-(phi) for every character of N1.
    const MonomialOp a1 = W_.n_action(P1.generator);
    bool strata_ok = true;
    std::vector<Int> got_plus, got_minus, want_plus, want_minus;
    for (Int k = 0; k < order; ++k) {
      const MonomialOp tw = twist(a1, -k * (W_.order() / order));
      const Mat<S> x = to_dense<S>(monomial_fixed_space({tw}, true).basis, W_.dim());
      const Int dp = rank<S>(parity_half(x, 1), cfg_.tol);
      const Int dm = rank<S>(parity_half(x, -1), cfg_.tol);
      Int wp = 0, wm = 0;
      if (k == 0) {
        wp = pd.isotypic_trivial_plus;
        wm = pd.isotypic_trivial_minus;
      } else {
        int s = 0;
        while (!(in_g[2 * s][k] && (2 * s + 2 > 2 * l - 2 || !in_g[2 * s + 2][k]))) ++s;
        wp = wm = pd.isotypic_strata[s];
      }
      got_plus.push_back(dp);
      got_minus.push_back(dm);
      want_plus.push_back(wp);
      want_minus.push_back(wm);
      strata_ok = strata_ok && dp == wp && dm == wm;
    }
    rep_.add("dims/isotypic-strata", "+: " + join(want_plus) + " -: " + join(want_minus),
             "+: " + join(got_plus) + " -: " + join(got_minus), strata_ok);

    // dim X(phi_k) = number of N1-orbits on Q whose stabilizer lies in ker phi_k.
    std::vector<bool> seen(W_.dim(), false);
    std::vector<Int> orbit_sizes;
    for (std::size_t v = 0; v < W_.dim(); ++v) {
      if (seen[v]) continue;
      Int s = 0;
      for (std::size_t w = v; !seen[w]; w = a1.perm[w]) {
        seen[w] = true;
        ++s;
      }
      orbit_sizes.push_back(s);
    }
    bool perm_ok = true;
    for (Int k = 0; k < order; ++k) {
      Int predicted = 0;
      for (Int s : orbit_sizes) predicted += mod(k * s, order) == 0 ? 1 : 0;
      const auto fixed = monomial_fixed_space({twist(a1, -k * (W_.order() / order))}, false);
      perm_ok = perm_ok && static_cast<Int>(fixed.consistent) == predicted;
    }
    rep_.add("dims/n1-orbits", "isotypic dims = orbit counts",
             holds(perm_ok) + " (" + std::to_string(orbit_sizes.size()) + " orbits)", perm_ok);
  }

  Mat<S> parity_half(const Mat<S>& y, int sign) {
    const MonomialOp par = W_.parity();
    const S c = S(static_cast<long long>(sign * W_.permutation_normalization(par)));
    return (y + c * apply_sparse<S>(par, y)) * (S(1) / S(2));
  }

  void block_invariance() {
    const PoolOperators& ops = core_ops(GroupTag::U);
    double full = 0, probe = 0;
    for (const auto& b : blocks()) full = std::max(full, invariance_residual<S>(ops, b.basis, false, 0));
    const PoolOperators all = pool_operators(W_, pool(GroupTag::U), false);
    std::uint64_t seed = cfg_.seed;
    for (const auto& b : blocks()) probe = std::max(probe, invariance_residual<S>(all, b.basis, true, ++seed));
    rep_.add("dims/invariance-u-core", "residual < " + sci(cfg_.tol), "residual " + sci(full), full < cfg_.tol);
    rep_.add("dims/invariance-u-pool", "residual < " + sci(cfg_.tol),
             "residual " + sci(probe) + " (" + std::to_string(all.t.size()) + " operators, random probes)",
             probe < cfg_.tol);
  }

  // ---- commutant --------------------------------------------------------------

  Int expected_orbits(GroupTag g) {
    const OrbitCertificate& c = cert(g);
    if (g == GroupTag::SU && su_open())
      return su_reference().value_or(static_cast<Int>(c.bfs_orbit_count));
    return c.exact ? static_cast<Int>(c.bfs_orbit_count)
                   : static_cast<Int>(predicted_orbit_count(prm_, g));
  }

  void commutant() {
    for (GroupTag g : cfg_.groups) {
      const std::string key = "commutant/" + group_key(g);
      const auto cr = commutant_of(g);
      if (!cr) {
        rep_.add(key + "/x", std::to_string(expected_orbits(g)), "skipped: exact system too large", true);
        continue;
      }
      rep_.add(key + "/x", std::to_string(expected_orbits(g)),
               std::to_string(cr->dim) + " (" + cr->method + ", " + std::to_string(cr->monomial_ops) +
                   " monomial, " + std::to_string(cr->constraint_ops) + " constraints)",
               static_cast<Int>(cr->dim) == expected_orbits(g));
      rep_.totals.emplace_back("commutant_" + group_key(g), static_cast<Int>(cr->dim));
    }
    if (wants(GroupTag::U)) u_block_commutants();
    if (wants(GroupTag::Sp) && has_suite("sp-filtration")) sp_layer_commutants();
  }

  /// Dense per-block commutant when small, else deduced from the global count.
  std::vector<Int> per_block(GroupTag g, const std::vector<Block<S>>& bl, const std::string& key) {
    std::vector<Int> out;
    bool large = false;
    for (const auto& b : bl) large = large || b.basis.cols() > 20;
    const auto cr = commutant_of(g);
    if (!large) {
      bool ok = true;
      for (const auto& b : bl) {
        out.push_back(block_commutant<S>(W_, core_ops(g), b.basis, cfg_.tol));
        ok = ok && out.back() == 1;
      }
      rep_.add(key, "1 for each of " + std::to_string(bl.size()) + " blocks", join(out) + " (dense)", ok);
      return out;
    }
    if (!cr) {
      rep_.add(key, "1 for each block", "skipped: exact system too large", true);
      return std::vector<Int>(bl.size(), -1);
    }
    // k invariant blocks spanning X with commutant of dimension k are irreducible and
    // pairwise non-isomorphic.
    const bool ok = cr->dim == bl.size();
    rep_.add(key, "commutant on X = " + std::to_string(bl.size()) + " blocks",
             std::to_string(cr->dim) + " (count identity)", ok);
    return std::vector<Int>(bl.size(), ok ? 1 : -1);
  }

  void u_block_commutants() { block_commutants_ = per_block(GroupTag::U, blocks(), "commutant/u/blocks"); }

  void sp_layer_commutants() {
    layer_commutants_ = per_block(GroupTag::Sp, filtration().layers, "commutant/sp/layers");
  }

  // ---- su ---------------------------------------------------------------------

  void su() {
    const Int u_count = static_cast<Int>(predicted_orbit_count(prm_, GroupTag::U));
    if (!(has_suite("orbits") && wants(GroupTag::SU))) orbit_checks(GroupTag::SU);
    const OrbitCertificate& c = cert(GroupTag::SU);
    if (prm_.n > 1)
      rep_.expect("su/orbits-equal-u", u_count, static_cast<Int>(c.bfs_orbit_count));
    const PoolOperators& ops = core_ops(GroupTag::SU);
    double full = 0;
    for (const auto& b : blocks()) full = std::max(full, invariance_residual<S>(ops, b.basis, false, 0));
    rep_.add("su/blocks-invariant", "residual < " + sci(cfg_.tol), "residual " + sci(full), full < cfg_.tol);
    const auto cr = commutant_of(GroupTag::SU);
    const Int want = prm_.n > 1 ? static_cast<Int>(blocks().size()) : expected_orbits(GroupTag::SU);
    if (!cr) {
      rep_.add("su/commutant", std::to_string(want), "skipped: exact system too large", true);
      return;
    }
    rep_.add("su/commutant", std::to_string(want),
             std::to_string(cr->dim) + " (" + std::to_string(cr->constraint_ops) + " constraints)",
             static_cast<Int>(cr->dim) == want);
    rep_.expect("su/commutant-equals-orbits", expected_orbits(GroupTag::SU), static_cast<Int>(cr->dim));
    su_rows_ = prm_.n > 1 && cr->dim == blocks().size();
    if (std::find_if(rep_.totals.begin(), rep_.totals.end(),
                     [](const auto& t) { return t.first == "commutant_su"; }) == rep_.totals.end())
      rep_.totals.emplace_back("commutant_su", static_cast<Int>(cr->dim));
  }

  // ---- sp-filtration ----------------------------------------------------------

  void sp_layers() {
    const auto& f = filtration();
    std::vector<Int> chain(f.chain_dims.begin(), f.chain_dims.end());
    bool strict = true;
    for (std::size_t i = 1; i < chain.size(); ++i) strict = strict && chain[i] > chain[i - 1];
    rep_.add("sp-filtration/chain", "strictly increasing, ending at " + std::to_string(W_.dim()),
             join(chain), strict && chain.back() == static_cast<Int>(W_.dim()));
    std::vector<Int> got, want;
    for (const auto& b : f.layers) {
      got.push_back(b.basis.cols());
      want.push_back(b.predicted);
    }
    rep_.add("sp-filtration/layers", join(want), join(got), got == want);
    const PoolOperators& ops = core_ops(GroupTag::Sp);
    double full = 0;
    for (const auto& b : f.layers) full = std::max(full, invariance_residual<S>(ops, b.basis, false, 0));
    rep_.add("sp-filtration/invariance", "residual < " + sci(cfg_.tol), "residual " + sci(full),
             full < cfg_.tol);
    if (!has_suite("commutant") || !wants(GroupTag::Sp)) {
      const auto cr = commutant_of(GroupTag::Sp);
      if (cr)
        rep_.expect("sp-filtration/commutant", static_cast<Int>(f.layers.size()), static_cast<Int>(cr->dim));
      if (layer_commutants_.empty()) sp_layer_commutants();
    }
  }

  // ---- constituent table ------------------------------------------------------

  void emit_constituents() {
    if (blocks_) {
      for (std::size_t i = 0; i < blocks_->size(); ++i) {
        const auto& b = (*blocks_)[i];
        rep_.constituents.push_back(ConstituentRow{
            "u", b.label, b.basis.cols(), b.predicted,
            i < block_commutants_.size() ? block_commutants_[i] : -1});
      }
      if (su_rows_)
        for (const auto& b : *blocks_)
          rep_.constituents.push_back(ConstituentRow{"su", b.label, b.basis.cols(), b.predicted, 1});
    }
    if (filtration_) {
      for (std::size_t i = 0; i < filtration_->layers.size(); ++i) {
        const auto& b = filtration_->layers[i];
        rep_.constituents.push_back(ConstituentRow{
            "sp", b.label, b.basis.cols(), b.predicted,
            i < layer_commutants_.size() ? layer_commutants_[i] : -1});
      }
    }
  }
};

}  // namespace

Report verify_all(const VerifyConfig& cfg) {
  check_budget(cfg.params, cfg.budget);
  if (cfg.backend == Backend::Exact && !ModP::supports_order(2 * cfg.params.r_size()))
    throw ParamError("exact backend: F_P has no roots of unity of order 2p^l for this instance");
  Report rep;
  rep.params = cfg.params;
  rep.backend = to_string(cfg.backend);
  for (GroupTag g : cfg.groups) rep.groups.push_back(group_key(g));
  rep.suites = cfg.suites;
  rep.tol = cfg.tol;
  rep.seed = cfg.seed;
  if (cfg.backend == Backend::Exact) {
    Runner<ModP>(cfg, rep).run();
  } else {
    Runner<Complex>(cfg, rep).run();
  }
  return rep;
}

}  // namespace weilrep

// Acceptance gate: one pass/fail line per criterion.
//
//   weilrep_acceptance          all criteria
//   weilrep_acceptance 1 3      selected criteria

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "weilrep/verify.hpp"

using namespace weilrep;

namespace {

// Collects failed conditions of one criterion.
struct Gate {
  std::vector<std::string> failed;
  int total = 0;

  void require(bool ok, const std::string& what) {
    ++total;
    if (!ok) failed.push_back(what);
  }
  template <class T>
  void equal(const T& got, const T& want, const std::string& what) {
    std::ostringstream os;
    os << what << " (got " << got << ", want " << want << ")";
    require(got == want, os.str());
  }
};

std::string join(const std::vector<Int>& v) {
  std::string s;
  for (Int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::vector<Int> sorted_desc(std::vector<Int> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

template <class S>
std::vector<Int> block_dims(const std::vector<Block<S>>& bl, const std::string& prefix = "") {
  std::vector<Int> d;
  for (const auto& b : bl)
    if (b.label.rfind(prefix, 0) == 0) d.push_back(b.basis.cols());
  return d;
}

Report run(Int p, int l, int n, Backend backend = Backend::Float,
           std::vector<GroupTag> groups = {GroupTag::U, GroupTag::SU, GroupTag::Sp},
           std::vector<std::string> suites = suite_names()) {
  VerifyConfig c;
  c.params = RingParams::make(p, l, n);
  c.backend = backend;
  c.groups = std::move(groups);
  c.suites = std::move(suites);
  return verify_all(c);
}

Int total(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.totals)
    if (k == key) return v;
  return -1;
}

void report_clean(Gate& g, const Report& r, const std::string& tag) {
  for (const auto& c : r.checks)
    g.require(c.pass, tag + " " + c.name + ": predicted " + c.predicted + ", computed " + c.computed);
}

std::vector<Int> row_dims(const Report& r, const std::string& group) {
  std::vector<Int> d;
  for (const auto& c : r.constituents)
    if (c.group == group) d.push_back(c.dim);
  return d;
}

std::map<int, std::uint64_t> depth_cells(const OrbitCertificate& c) {
  std::map<int, std::uint64_t> m;
  for (const auto& o : c.orbits) m[o.label.depth] += o.size;
  return m;
}

// ---- criteria -----------------------------------------------------------------

void reference_instance(Gate& g) {
  const RingParams prm = RingParams::make(3, 2, 1);
  const HermitianSpace V(prm);
  const WeilModule W(prm);
  g.equal<std::size_t>(V.ring().norm_one_group().size(), 6, "|N|");

  const OrbitCertificate sp = count_orbits(V, generator_pool(V, GroupTag::Sp));
  g.equal<std::size_t>(sp.bfs_orbit_count, 4, "O_Sp(V)");
  g.require(depth_cells(sp) == std::map<int, std::uint64_t>{{0, 648}, {1, 72}, {2, 8}, {3, 1}},
            "Sp layer sizes 648/72/8/1");
  const OrbitCertificate u = count_orbits(V, generator_pool(V, GroupTag::U));
  g.equal<std::size_t>(u.bfs_orbit_count, 8, "O_U(V)");
  g.require(u.exact, "U-orbit certificate exact");

  g.equal<std::size_t>(W.dim(), 27, "dim X");
  g.equal<std::size_t>(bot_supports(W).size(), 3, "dim Bot");
  const auto top = top_eigenspaces<Complex>(W, 1e-8);
  g.equal(join(block_dims(top)), std::string("4,4,4,4,4,4"), "Top N-eigenspaces");
  const auto bl = u_constituents<Complex>(W, 1e-8);
  g.equal(join(sorted_desc(block_dims(bl, "Bot/"))), std::string("2,1"), "Bot constituents");
  const auto child = u_constituents<Complex>(WeilModule(RingParams::make(3, 1, 1), 2), 1e-8);
  g.equal(join(sorted_desc(block_dims(child))), std::string("2,1"), "l = 1 quotient module");

  const auto cu = commutant_on_x<Complex>(W, generator_pool(V, GroupTag::U), 1e-8);
  const auto csp = commutant_on_x<Complex>(W, generator_pool(V, GroupTag::Sp), 1e-8);
  g.equal<std::size_t>(cu.dim, 8, "commutant over U");
  g.equal<std::size_t>(csp.dim, 4, "commutant over Sp");
  const PoolOperators ops = pool_operators(W, generator_pool(V, GroupTag::U), true);
  std::vector<Int> per;
  for (const auto& b : bl) per.push_back(block_commutant<Complex>(W, ops, b.basis, 1e-8));
  g.equal(join(per), std::string("1,1,1,1,1,1,1,1"), "per-constituent commutants");

  const auto f = sp_filtration<Complex>(W, 1e-8);
  g.equal(join(sorted_desc(block_dims(f.layers))), std::string("12,12,2,1"), "Sp filtration layers");

  const Report rf = run(3, 2, 1);
  const Report re = run(3, 2, 1, Backend::Exact);
  report_clean(g, rf, "float");
  report_clean(g, re, "exact");
}

void classical_cases(Gate& g) {
  const std::map<Int, std::vector<Int>> want{{3, {2, 1}}, {5, {3, 2}}, {7, {4, 3}}};
  for (const auto& [p, dims] : want) {
    const std::string tag = "p=" + std::to_string(p);
    const Report r = run(p, 1, 1);
    report_clean(g, r, tag);
    g.equal(join(sorted_desc(row_dims(r, "u"))), join(dims), tag + " constituent dims");
    g.equal<Int>(total(r, "commutant_u"), 2, tag + " commutant");
    g.equal<Int>(total(r, "orbits_sp"), 2, tag + " O_Sp(V)");
  }
}

void depth_three(Gate& g) {
  const Report r = run(3, 3, 1);
  report_clean(g, r, "p=3 l=3");
  g.equal<Int>(total(r, "orbits_sp"), 6, "O_Sp(V)");
  g.equal<Int>(total(r, "orbits_u"), 26, "O_U(V)");
  const auto* cert = r.find("orbits/u/certificate");
  g.require(cert && cert->pass, "U certificate exact");
  std::vector<Int> want(18, 12);
  for (int k = 0; k < 6; ++k) want.push_back(4);
  want.push_back(2);
  want.push_back(1);
  g.equal(join(sorted_desc(row_dims(r, "u"))), join(want), "constituent dims");
  Int sum = 0;
  for (Int d : row_dims(r, "u")) sum += d;
  g.equal<Int>(sum, 243, "dimension sum");
  g.equal(join(predicted_dimensions(r.params).g_sizes), std::string("9,9,3,3,1"), "|G_i|");
  const auto* gs = r.find("dims/g-sizes");
  g.require(gs && gs->pass && gs->computed == "9,9,3,3,1", "computed |G_i|");

  // The Bot part of the l = 3 report restricted to "Bot/" rows is the l = 2 report.
  const Report inner = run(3, 2, 1, Backend::Float, {GroupTag::U}, {"dims"});
  std::vector<std::string> outer_labels, inner_labels;
  std::vector<Int> outer_dims, inner_dims;
  for (const auto& c : r.constituents)
    if (c.group == "u" && c.label.rfind("Bot/", 0) == 0) {
      outer_labels.push_back(c.label.substr(4));
      outer_dims.push_back(c.dim);
    }
  for (const auto& c : inner.constituents)
    if (c.group == "u") {
      inner_labels.push_back(c.label);
      inner_dims.push_back(c.dim);
    }
  g.require(outer_labels == inner_labels, "Bot labels embed the l = 2 report");
  g.equal(join(outer_dims), join(inner_dims), "Bot dims embed the l = 2 report");
}

void rank_two(Gate& g) {
  const Report r = run(3, 2, 2, Backend::Float, {GroupTag::U, GroupTag::SU},
                       {"orbits", "dims", "commutant", "su"});
  report_clean(g, r, "p=3 l=2 n=2");
  g.equal<Int>(total(r, "orbits_u"), 8, "O_U(V)");
  g.equal<Int>(total(r, "orbits_su"), 8, "O_SU(V)");
  g.equal<Int>(static_cast<Int>(HermitianSpace(r.params).size()), 531441, "|V|");
  const auto* cu = r.find("orbits/u/certificate");
  const auto* cs = r.find("orbits/su/certificate");
  g.require(cu && cu->pass && cs && cs->pass, "dual certificates exact");
  const auto* top = r.find("dims/top-eigenspaces");
  g.require(top && top->pass && top->computed == "120,120,120,120,120,120", "Top eigenspaces all 120");
  std::vector<Int> bot;
  for (const auto& c : r.constituents)
    if (c.group == "u" && c.label.rfind("Bot/", 0) == 0) bot.push_back(c.dim);
  g.equal(join(sorted_desc(bot)), std::string("5,4"), "Bot dims");
  g.equal<Int>(total(r, "commutant_su"), 8, "commutant over SU");
}

void property_suites(Gate& g) {
  const std::vector<std::string> suites{"rings", "forms", "schrodinger", "weil"};
  for (auto [p, l, n] : {std::tuple<Int, int, int>{3, 1, 1}, {5, 1, 1}, {3, 2, 1}, {3, 3, 1}, {3, 1, 2}, {5, 2, 1}}) {
    const Report r = run(p, l, n, Backend::Float, {GroupTag::U, GroupTag::SU, GroupTag::Sp}, suites);
    const std::string tag = "p=" + std::to_string(p) + " l=" + std::to_string(l) + " n=" + std::to_string(n);
    report_clean(g, r, tag);
    for (const char* name : {"rings/axioms", "rings/involution", "rings/norm-multiplicative",
                             "forms/skew-image", "forms/dual-is-ideal", "forms/perp-duality",
                             "schrodinger/heisenberg-group", "schrodinger/homomorphism", "weil/schur",
                             "weil/c-principal-units", "weil/c-minus-one", "weil/homomorphism"})
      g.require(r.find(name) != nullptr, tag + " runs " + name);
    const auto* schur = r.find("weil/schur");
    g.require(schur && schur->predicted.find("50") != std::string::npos, tag + " 50 Schur samples");
    const auto* hom = r.find("weil/homomorphism");
    if (ipow(p, n) % 4 == 1) g.require(hom && hom->predicted == "epsilon = 1", tag + " epsilon = 1");
  }
}

void oracles(Gate& g) {
  for (int l : {1, 2}) {
    const HermitianSpace V(RingParams::make(3, l, 1));
    const auto U = enumerate_group_exhaustive(V, GroupTag::U);
    const auto C = enumerate_group_closure(V, generator_pool(V, GroupTag::U));
    std::set<std::vector<AElem>> a, b;
    for (const auto& x : U) a.insert(x.entries());
    for (const auto& x : C) b.insert(x.entries());
    g.require(a == b, "closure = exhaustive U at l=" + std::to_string(l));

    std::vector<char> seen(V.size(), 0);
    bool constant = true;
    std::set<OrbitLabel> labels;
    std::size_t orbits = 0;
    for (std::uint64_t i = 0; i < V.size(); ++i) {
      if (seen[i]) continue;
      ++orbits;
      const HVector x = V.from_index(i);
      const OrbitLabel lab = orbit_invariant(V, x);
      labels.insert(lab);
      for (const auto& m : U) {
        const HVector y = apply(V, m, x);
        seen[V.index(y)] = 1;
        constant = constant && orbit_invariant(V, y) == lab;
      }
    }
    g.require(constant, "labels constant on brute-force orbits at l=" + std::to_string(l));
    g.equal(labels.size(), orbits, "labels separate orbits at l=" + std::to_string(l));
  }

  // Float and exact backends on every rank and dimension of the reference instance.
  const Report rf = run(3, 2, 1);
  const Report re = run(3, 2, 1, Backend::Exact);
  for (const char* name : {"schrodinger/irreducible", "schrodinger/bot-fixed-space", "schrodinger/fixed-space-zero",
                           "weil/parity-dims", "dims/dim-x", "dims/dim-bot", "dims/top-eigenspaces",
                           "dims/u-constituents", "dims/sum", "dims/direct-sum-rank", "dims/bot-embedding",
                           "dims/g-sizes", "dims/isotypic-strata", "commutant/u/x", "commutant/su/x",
                           "commutant/sp/x", "commutant/u/blocks", "commutant/sp/layers",
                           "sp-filtration/chain", "sp-filtration/layers", "orbits/u/count", "orbits/sp/count"}) {
    const auto* a = rf.find(name);
    const auto* b = re.find(name);
    g.require(a && b && a->computed == b->computed, std::string("float = exact on ") + name);
  }
  g.require(rf.totals == re.totals, "float = exact on totals");
  g.require(rf.constituents.size() == re.constituents.size(), "float = exact on constituent rows");
  for (std::size_t i = 0; i < std::min(rf.constituents.size(), re.constituents.size()); ++i) {
    const auto& a = rf.constituents[i];
    const auto& b = re.constituents[i];
    g.require(a.label == b.label && a.dim == b.dim && a.commutant == b.commutant,
              "float = exact on " + a.group + " " + a.label);
  }
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Gate&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "reference instance p=3 l=2 n=1", reference_instance},
      {2, "classical cases l=1, p = 3, 5, 7", classical_cases},
      {3, "depth-3 instance p=3 l=3 n=1", depth_three},
      {4, "rank-2 instance p=3 l=2 n=2 (extended)", rank_two},
      {5, "property suites", property_suites},
      {6, "oracle cross-checks", oracles},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Gate g;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(g);
    } catch (const std::exception& e) {
      g.failed.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = g.failed.empty();
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << " ("
              << g.total << " conditions, " << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s)\n";
    for (const auto& f : g.failed) std::cout << "         " << f << "\n";
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}

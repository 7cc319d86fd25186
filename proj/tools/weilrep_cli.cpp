// weilrep: instance summaries and verification runs.
//
//   weilrep info -p 3 -l 2 -n 1
//   weilrep verify -p 3 -l 2 -n 1 --suites all --format json --out report.json
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or budget error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weilrep/verify.hpp"

namespace {

using namespace weilrep;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// "4x6, 2, 1" for {4,4,4,4,4,4,2,1}.
std::string multiset(const std::vector<Int>& dims) {
  std::ostringstream os;
  for (std::size_t i = 0; i < dims.size();) {
    std::size_t j = i;
    while (j < dims.size() && dims[j] == dims[i]) ++j;
    os << (i ? ", " : "") << dims[i];
    if (j - i > 1) os << "x" << (j - i);
    i = j;
  }
  return os.str();
}

nlohmann::ordered_json info_json(const RingParams& prm) {
  const Ring A(prm);
  const HermitianSpace V(prm);
  const PredictedDims pd = predicted_dimensions(prm);
  nlohmann::ordered_json j;
  j["p"] = prm.p;
  j["ell"] = prm.ell;
  j["n"] = prm.n;
  j["|R|"] = prm.r_size();
  j["|A|"] = prm.a_size();
  j["|N|"] = A.norm_one_group().size();
  j["|V|"] = V.size();
  j["dim X"] = schrodinger_dim(prm);
  j["dim Bot"] = pd.dim_bot;
  j["orbits"] = {{"u", predicted_orbit_count(prm, GroupTag::U)},
                 {"su", predicted_orbit_count(prm, GroupTag::SU)},
                 {"sp", predicted_orbit_count(prm, GroupTag::Sp)}};
  // No closed form for SU at n = 1 beyond the classical case.
  if (prm.n == 1 && prm.ell > 1) j["orbits"]["su"] = nullptr;
  j["u constituents"] = multiset(pd.u_constituents);
  std::vector<Int> layers;
  for (const auto& [a, b] : pd.sp_layers) {
    layers.push_back(a);
    layers.push_back(b);
  }
  j["sp layers"] = layers;
  j["G sizes"] = pd.g_sizes;
  return j;
}

void print_info(const RingParams& prm, std::ostream& os) {
  const auto j = info_json(prm);
  os << "instance        p=" << prm.p << " l=" << prm.ell << " n=" << prm.n << "\n";
  os << "|R|             " << j["|R|"] << "\n";
  os << "|A|             " << j["|A|"] << "\n";
  os << "|N|             " << j["|N|"] << "\n";
  os << "|V|             " << j["|V|"] << "\n";
  os << "dim X           " << j["dim X"] << "\n";
  os << "dim Bot         " << j["dim Bot"] << "\n";
  const auto& su = j["orbits"]["su"];
  os << "orbits          U " << j["orbits"]["u"] << ", SU " << (su.is_null() ? "-" : su.dump()) << ", Sp "
     << j["orbits"]["sp"] << "\n";
  os << "U constituents  {" << j["u constituents"].get<std::string>() << "}\n";
  os << "Sp layers       " << j["sp layers"].dump() << "\n";
  os << "|G_i|           " << j["G sizes"].dump() << "\n";
}

int write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return kExitUsage;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil representations over ramified quadratic extensions of Z/p^l"};
  app.require_subcommand(1);

  Int p = 3;
  int ell = 1, n = 1;
  std::string format = "json", out, groups = "u,su,sp", suites = "all", backend = "float";
  std::string cache_dir, info_format = "text";
  double tol = 1e-8;
  std::uint64_t seed = 12345, max_dim = 1024, max_vectors = 1'000'000;
  bool verbose = false;
  if (const char* env = std::getenv("WEILREP_CACHE_DIR")) cache_dir = env;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("-p", p, "odd prime")->required();
    sub->add_option("-l,--ell", ell, "nilpotency parameter l >= 1")->required();
    sub->add_option("-n", n, "rank parameter n >= 1 (V has rank 2n)")->required();
  };

  CLI::App* info = app.add_subcommand("info", "sizes and predicted counts, no heavy computation");
  add_instance(info);
  info->add_option("--format", info_format, "text or json")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_instance(verify);
  verify->add_option("--group", groups, "comma-separated subset of u,su,sp")->capture_default_str();
  verify->add_option("--suites", suites,
                     "comma-separated: rings,forms,orbits,schrodinger,weil,dims,commutant,su,"
                     "sp-filtration or all")
      ->capture_default_str();
  verify->add_option("--backend", backend, "float or exact")->capture_default_str();
  verify->add_option("--tol", tol, "tolerance for float rank, nullity and residuals")
      ->capture_default_str();
  verify->add_option("--seed", seed, "seed for randomized spot checks")->capture_default_str();
  verify->add_option("--cache-dir", cache_dir, "orbit cache directory (env WEILREP_CACHE_DIR)");
  verify->add_option("--format", format, "json, csv or markdown")->capture_default_str();
  verify->add_option("--out", out, "output file (default stdout)");
  verify->add_option("--max-dim", max_dim, "budget cap on dim X")->capture_default_str();
  verify->add_option("--max-vectors", max_vectors, "budget cap on |V|")->capture_default_str();
  verify->add_flag("-v,--verbose", verbose, "progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const RingParams prm = RingParams::make(p, ell, n);
    if (info->parsed()) {
      if (info_format == "json") return write_output(info_json(prm).dump(2) + "\n", "");
      if (info_format != "text") throw ParamError("info: format must be text or json");
      print_info(prm, std::cout);
      return kExitPass;
    }
    VerifyConfig cfg;
    cfg.params = prm;
    cfg.groups = parse_groups(groups);
    cfg.suites = parse_suites(suites);
    cfg.backend = parse_backend(backend);
    cfg.tol = tol;
    cfg.seed = seed;
    cfg.cache_dir = cache_dir;
    cfg.budget = Budget{max_dim, max_vectors};
    cfg.log = verbose ? &std::cerr : nullptr;
    const Format fmt = parse_format(format);
    if (tol <= 0) throw ParamError("--tol must be positive");
    const Report rep = verify_all(cfg);
    if (int rc = write_output(render(rep, fmt), out); rc != 0) return rc;
    if (!rep.pass()) {
      std::cerr << rep.failures() << " check(s) failed\n";
      return kExitFail;
    }
    return kExitPass;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

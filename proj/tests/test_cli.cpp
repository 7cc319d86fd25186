#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = WEILREP_TEST_TMP;

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
  fs::create_directories(kTmp);
  const std::string cmd = std::string("\"") + WEILREP_CLI_PATH + "\" " + args + " > \"" +
                          (kTmp / out_name).string() + "\" 2> \"" + (kTmp / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("info -p 3 -l 2 -n 1") == 0);
  CHECK(run("info -p 2 -l 1 -n 1") == 2);
  CHECK(run("info -p 3 -l 0 -n 1") == 2);
  CHECK(run("verify -p 3 -l 4 -n 2") == 2);
  CHECK(slurp(kTmp / "stderr.txt").find("budget") != std::string::npos);
  CHECK(run("verify -p 3 -l 1 -n 1 --suites bogus") == 2);
  CHECK(run("verify -p 3 -l 1 -n 1 --group gl") == 2);
  CHECK(run("verify -p 3 -l 1 -n 1 --format xml") == 2);
  CHECK(run("verify -p 3 -l 1 -n 1 --backend symbolic") == 2);
  CHECK(run("verify -p 3 -l 1 -n 1 --no-such-flag") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
  CHECK(run("verify -p 3 -l 1 -n 1") == 0);
  CHECK(run("verify -p 3 -l 1 -n 1 --max-dim 2") == 2);
}

TEST_CASE("failing checks exit 1 and still emit the report") {
  REQUIRE(run("verify -p 3 -l 2 -n 1 --tol 1e-300 --format csv", "fail.csv") == 1);
  const std::string csv = slurp(kTmp / "fail.csv");
  CHECK(csv.find(",FAIL") != std::string::npos);
  CHECK(csv.find(",pass") != std::string::npos);
  CHECK(csv.find("constituent,u,") != std::string::npos);
}

TEST_CASE("SU suite at rank 2") {
  REQUIRE(run("verify -p 3 -l 2 -n 2 --suites su --format json", "su.json") == 0);
  const auto j = nlohmann::json::parse(slurp(kTmp / "su.json"));
  CHECK(j["totals"]["commutant_su"] == 8);
  CHECK(j["totals"]["orbits_su"] == 8);
}

TEST_CASE("info output") {
  REQUIRE(run("info -p 5 -l 1 -n 1") == 0);
  CHECK(slurp(kTmp / "stdout.txt").find("{3, 2}") != std::string::npos);

  REQUIRE(run("info -p 3 -l 2 -n 1") == 0);
  const std::string text = slurp(kTmp / "stdout.txt");
  CHECK(text.find("dim X           27") != std::string::npos);
  CHECK(text.find("|N|             6") != std::string::npos);
  CHECK(text.find("U 8, SU -, Sp 4") != std::string::npos);
  CHECK(text.find("{4x6, 2, 1}") != std::string::npos);

  REQUIRE(run("info -p 3 -l 3 -n 1 --format json") == 0);
  const auto j = nlohmann::json::parse(slurp(kTmp / "stdout.txt"));
  CHECK(j["dim X"] == 243);
  CHECK(j["orbits"]["u"] == 26);
  CHECK(j["orbits"]["sp"] == 6);
  CHECK(j["orbits"]["su"].is_null());
  CHECK(j["u constituents"] == "12x18, 4x6, 2, 1");
  CHECK(j["G sizes"] == nlohmann::json::array({9, 9, 3, 3, 1}));
}

TEST_CASE("verify writes deterministic reports in every format") {
  const fs::path a = kTmp / "a.json", b = kTmp / "b.json";
  REQUIRE(run("verify -p 3 -l 2 -n 1 --format json --out \"" + a.string() + "\"") == 0);
  REQUIRE(run("verify -p 3 -l 2 -n 1 --format json --seed 12345 --out \"" + b.string() + "\"") == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["totals"]["pass"] == true);
  CHECK(j["totals"]["commutant_u"] == 8);

  REQUIRE(run("verify -p 3 -l 1 -n 1 --format csv", "r.csv") == 0);
  CHECK(slurp(kTmp / "r.csv").rfind("section,name,predicted,computed,pass", 0) == 0);
  REQUIRE(run("verify -p 3 -l 1 -n 1 --format markdown --group u --suites dims,commutant", "r.md") == 0);
  const std::string md = slurp(kTmp / "r.md");
  CHECK(md.find("| commutant/u/x |") != std::string::npos);
  CHECK(md.find("orbits/") == std::string::npos);
}

TEST_CASE("cache directory from flag and environment") {
  const fs::path dir = kTmp / "cache";
  fs::remove_all(dir);
  REQUIRE(run("verify -p 3 -l 2 -n 1 --suites orbits --cache-dir \"" + dir.string() + "\"") == 0);
  CHECK(fs::exists(dir));
  CHECK(!fs::is_empty(dir));
  const std::string env = "WEILREP_CACHE_DIR=\"" + dir.string() + "\" ";
  const std::string cmd = env + "\"" + WEILREP_CLI_PATH + "\" verify -p 3 -l 2 -n 1 --suites orbits -v > /dev/null 2> \"" +
                          (kTmp / "env.txt").string() + "\"";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(kTmp / "env.txt").find("cache hit") != std::string::npos);
}

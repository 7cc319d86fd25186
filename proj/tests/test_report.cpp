#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "weilrep/verify.hpp"

using namespace weilrep;

namespace {

VerifyConfig config(Int p, int l, int n) {
  VerifyConfig c;
  c.params = RingParams::make(p, l, n);
  return c;
}

}  // namespace

TEST_CASE("suite and group parsing") {
  CHECK(parse_suites("all") == suite_names());
  CHECK(parse_suites("rings,dims") == std::vector<std::string>{"rings", "dims"});
  CHECK_THROWS_AS(parse_suites("rings,bogus"), ParamError);
  CHECK(parse_groups("u,sp") == std::vector<GroupTag>{GroupTag::U, GroupTag::Sp});
  CHECK_THROWS_AS(parse_groups("gl"), ParamError);
  CHECK(parse_format("md") == Format::Markdown);
  CHECK_THROWS_AS(parse_format("xml"), ParamError);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(check_budget(RingParams::make(3, 4, 2), Budget{}), BudgetError);
  CHECK_NOTHROW(check_budget(RingParams::make(3, 2, 2), Budget{}));
  CHECK_THROWS_AS(verify_all(config(3, 4, 2)), ParamError);
  VerifyConfig c = config(3, 2, 1);
  c.budget.max_dim = 9;
  CHECK_THROWS_AS(verify_all(c), BudgetError);
}

TEST_CASE("report contents and JSON schema") {
  const Report r = verify_all(config(3, 2, 1));
  CHECK(r.pass());
  CHECK(r.find("rings/axioms") != nullptr);
  CHECK(r.find("no/such") == nullptr);
  const auto j = to_json(r);
  CHECK(j["params"]["p"] == 3);
  CHECK(j["params"]["ell"] == 2);
  CHECK(j["params"]["backend"] == "float");
  CHECK(j["totals"]["dim_x"] == 27);
  CHECK(j["totals"]["constituent_dim_sum_u"] == 27);
  CHECK(j["totals"]["orbits_u"] == 8);
  CHECK(j["totals"]["orbits_sp"] == 4);
  CHECK(j["totals"]["commutant_u"] == 8);
  CHECK(j["totals"]["commutant_sp"] == 4);
  CHECK(j["totals"]["pass"] == true);
  std::size_t u_rows = 0;
  for (const auto& row : j["constituents"]) {
    CHECK(row.contains("label"));
    CHECK(row["dim"] == row["predicted_dim"]);
    if (row["group"] == "u") {
      ++u_rows;
      CHECK(row["commutant"] == 1);
    }
  }
  CHECK(u_rows == 8);
  for (const auto& s : j["suites"]) {
    CHECK(s.contains("name"));
    CHECK(s.contains("predicted"));
    CHECK(s.contains("computed"));
    CHECK(s["pass"] == true);
  }
}

TEST_CASE("reports are deterministic") {
  const std::string a = render(verify_all(config(3, 2, 1)), Format::Json);
  const std::string b = render(verify_all(config(3, 2, 1)), Format::Json);
  CHECK(a == b);
}

TEST_CASE("suite selection and exact backend") {
  VerifyConfig c = config(5, 1, 1);
  c.suites = {"dims", "commutant"};
  c.groups = {GroupTag::U};
  c.backend = Backend::Exact;
  const Report r = verify_all(c);
  CHECK(r.pass());
  for (const auto& ch : r.checks)
    CHECK((ch.name.rfind("dims/", 0) == 0 || ch.name.rfind("commutant/", 0) == 0));
  CHECK(r.backend == "exact");
}

TEST_CASE("orbit cache is used and does not change the report") {
  const auto dir = std::filesystem::temp_directory_path() / "weilrep_test_report_cache";
  std::filesystem::remove_all(dir);
  VerifyConfig c = config(3, 2, 1);
  c.suites = {"orbits"};
  const std::string plain = render(verify_all(c), Format::Json);
  c.cache_dir = dir;
  const std::string first = render(verify_all(c), Format::Json);
  std::ostringstream log;
  c.log = &log;
  const std::string second = render(verify_all(c), Format::Json);
  CHECK(plain == first);
  CHECK(first == second);
  CHECK(log.str().find("cache hit") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV and markdown renderings") {
  VerifyConfig c = config(3, 1, 1);
  c.suites = {"dims"};
  const Report r = verify_all(c);
  const std::string csv = render(r, Format::Csv);
  CHECK(csv.rfind("section,name,predicted,computed,pass\n", 0) == 0);
  CHECK(csv.find("constituent,u,X+,1,1,") != std::string::npos);
  const std::string md = render(r, Format::Markdown);
  CHECK(md.rfind("# weilrep verify p=3 l=1 n=1 (float)", 0) == 0);
  CHECK(md.find("checks passed") != std::string::npos);
}

#pragma once

// Verification report: individual checks, constituent table and totals, with JSON,
// CSV and markdown renderings. Output is a pure function of the report contents.

#include <string>
#include <vector>

#include <json.hpp>

#include "weilrep/ring.hpp"

namespace weilrep {

struct CheckResult {
  std::string name;  // "<suite>/<check>"
  std::string predicted;
  std::string computed;
  bool pass = false;
};

struct ConstituentRow {
  std::string group;
  std::string label;
  Int dim = 0;
  Int predicted_dim = 0;
  /// -1 when not computed.
  Int commutant = -1;
};

struct Report {
  RingParams params;
  std::string backend;
  std::vector<std::string> groups;
  std::vector<std::string> suites;
  double tol = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<ConstituentRow> constituents;
  /// Extra named totals (orbit counts, commutants), in insertion order.
  std::vector<std::pair<std::string, Int>> totals;

  void add(std::string name, std::string predicted, std::string computed, bool pass);
  /// Records predicted == computed.
  void expect(std::string name, Int predicted, Int computed);
  const CheckResult* find(const std::string& name) const;
  std::size_t failures() const;
  bool pass() const { return failures() == 0; }
};

enum class Format { Json, Csv, Markdown };

Format parse_format(const std::string& s);
nlohmann::ordered_json to_json(const Report& r);
std::string render(const Report& r, Format f);

}  // namespace weilrep

#include "weilrep/report.hpp"

#include <algorithm>
#include <sstream>

namespace weilrep {

void Report::add(std::string name, std::string predicted, std::string computed, bool pass) {
  checks.push_back(CheckResult{std::move(name), std::move(predicted), std::move(computed), pass});
}

void Report::expect(std::string name, Int predicted, Int computed) {
  add(std::move(name), std::to_string(predicted), std::to_string(computed), predicted == computed);
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::size_t Report::failures() const {
  std::size_t k = 0;
  for (const auto& c : checks) k += c.pass ? 0 : 1;
  return k;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "markdown" || s == "md") return Format::Markdown;
  throw ParamError("unknown format '" + s + "' (expected json, csv or markdown)");
}

namespace {

Int dim_sum(const Report& r, const std::string& group) {
  Int s = 0;
  for (const auto& c : r.constituents)
    if (c.group == group) s += c.dim;
  return s;
}

std::vector<std::string> row_groups(const Report& r) {
  std::vector<std::string> out;
  for (const auto& c : r.constituents)
    if (std::find(out.begin(), out.end(), c.group) == out.end()) out.push_back(c.group);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["params"] = {{"p", r.params.p},   {"ell", r.params.ell}, {"n", r.params.n},
                 {"backend", r.backend}, {"groups", r.groups}, {"suites", r.suites},
                 {"tol", r.tol},       {"seed", r.seed}};
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    j["suites"].push_back(
        {{"name", c.name}, {"predicted", c.predicted}, {"computed", c.computed}, {"pass", c.pass}});
  j["constituents"] = nlohmann::ordered_json::array();
  for (const auto& c : r.constituents) {
    nlohmann::ordered_json row = {{"group", c.group},
                                  {"label", c.label},
                                  {"dim", c.dim},
                                  {"predicted_dim", c.predicted_dim}};
    row["commutant"] = c.commutant < 0 ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(c.commutant);
    j["constituents"].push_back(row);
  }
  nlohmann::ordered_json totals;
  totals["dim_x"] = ipow(r.params.p, (2 * r.params.ell - 1) * r.params.n);
  for (const auto& g : row_groups(r)) totals["constituent_dim_sum_" + g] = dim_sum(r, g);
  for (const auto& [k, v] : r.totals) totals[k] = v;
  totals["checks"] = r.checks.size();
  totals["failed"] = r.failures();
  totals["pass"] = r.pass();
  j["totals"] = totals;
  return j;
}

std::string render(const Report& r, Format f) {
  std::ostringstream os;
  if (f == Format::Json) {
    os << to_json(r).dump(2) << "\n";
    return os.str();
  }
  const std::string inst = "p=" + std::to_string(r.params.p) + " l=" +
                           std::to_string(r.params.ell) + " n=" + std::to_string(r.params.n);
  if (f == Format::Csv) {
    os << "section,name,predicted,computed,pass\n";
    for (const auto& c : r.checks)
      os << "check," << csv_field(c.name) << "," << csv_field(c.predicted) << ","
         << csv_field(c.computed) << "," << (c.pass ? "pass" : "FAIL") << "\n";
    os << "section,group,label,dim,predicted_dim,commutant\n";
    for (const auto& c : r.constituents)
      os << "constituent," << c.group << "," << csv_field(c.label) << "," << c.dim << ","
         << c.predicted_dim << "," << (c.commutant < 0 ? std::string() : std::to_string(c.commutant))
         << "\n";
    return os.str();
  }
  os << "# weilrep verify " << inst << " (" << r.backend << ")\n\n";
  os << "| check | predicted | computed | result |\n|---|---|---|---|\n";
  for (const auto& c : r.checks)
    os << "| " << md_cell(c.name) << " | " << md_cell(c.predicted) << " | " << md_cell(c.computed)
       << " | " << (c.pass ? "pass" : "**FAIL**") << " |\n";
  if (!r.constituents.empty()) {
    os << "\n| group | constituent | dim | predicted | commutant |\n|---|---|---|---|---|\n";
    for (const auto& c : r.constituents)
      os << "| " << c.group << " | " << md_cell(c.label) << " | " << c.dim << " | "
         << c.predicted_dim << " | " << (c.commutant < 0 ? "-" : std::to_string(c.commutant))
         << " |\n";
  }
  os << "\n" << (r.checks.size() - r.failures()) << "/" << r.checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace weilrep

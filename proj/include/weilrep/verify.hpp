#pragma once

// Verification suites over one instance (p, l, n), aggregated into a Report.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "weilrep/decomposition.hpp"
#include "weilrep/report.hpp"

namespace weilrep {

/// Instance exceeds the feasibility envelope.
struct BudgetError : ParamError {
  using ParamError::ParamError;
};

struct Budget {
  std::uint64_t max_dim = 1024;
  std::uint64_t max_vectors = 1'000'000;
};

/// Throws BudgetError when dim X or |V| exceeds the caps.
void check_budget(const RingParams& params, const Budget& budget);

/// rings, forms, orbits, schrodinger, weil, dims, commutant, su, sp-filtration.
const std::vector<std::string>& suite_names();
/// Comma-separated list; "all" expands to every suite. Throws ParamError on unknown names.
std::vector<std::string> parse_suites(const std::string& list);
/// Comma-separated subset of u, su, sp.
std::vector<GroupTag> parse_groups(const std::string& list);

struct VerifyConfig {
  RingParams params;
  std::vector<GroupTag> groups{GroupTag::U, GroupTag::SU, GroupTag::Sp};
  std::vector<std::string> suites = suite_names();
  Backend backend = Backend::Float;
  double tol = 1e-8;
  std::uint64_t seed = 12345;
  /// Empty disables the orbit cache.
  std::filesystem::path cache_dir;
  Budget budget;
  /// Progress lines, or nullptr.
  std::ostream* log = nullptr;
};

/// Runs the selected suites. Throws ParamError for invalid or over-budget configurations;
/// check failures are recorded in the report.
Report verify_all(const VerifyConfig& config);

}  // namespace weilrep

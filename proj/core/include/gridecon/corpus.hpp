#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gridecon/cost_model.hpp"
#include "gridecon/placement.hpp"
#include "gridecon/workload.hpp"

namespace gridecon {

enum class ToleranceMode {
  Exact,           // relative 1e-9
  Factor3,         // value in [expected/3, expected*3]
  Classification,  // label equality
  AtLeast,         // value >= expected
  AtMost,          // value <= expected
};

std::string_view to_string(ToleranceMode mode);

// One checkable expectation. Metrics are small fixed vocabularies per
// subject kind (e.g. "network_cost", "intensity", "class",
// "optimal_site:<label>", "traditional_headcount"). Assertions marked
// canonical_only encode prices or classes that hold on the canonical
// schedule specifically; they are skipped, not failed, on any other.
struct CaseAssertion {
  std::string metric;
  ToleranceMode mode = ToleranceMode::Exact;
  double expected_value = 0.0;
  std::string expected_label;  // Classification mode
  bool canonical_only = false;
};

// A placement case: a plan plus its federation. Link prices default to the
// run schedule's WAN price unless the case fixes its own default.
struct PlacementScenario {
  Plan plan;
  std::vector<Site> sites;
  std::optional<double> default_link_price;
  std::map<std::pair<std::string, std::string>, double> link_overrides;
};

struct StaffingScenario {
  double storage_tb = 0.0;
  double servers = 0.0;
  double network_gbps = 0.0;
};

struct CaseStudy {
  std::string name;
  std::variant<TaskProfile, PlacementScenario, StaffingScenario> subject;
  std::vector<CaseAssertion> assertions;
  // Which numbers are quoted figures and which are calibrated to match.
  std::string provenance_note;
};

struct AssertionResult {
  CaseAssertion assertion;
  bool executed = false;  // false: skipped on a non-canonical schedule
  bool passed = false;
  double actual_value = 0.0;
  std::string actual_label;
  std::string detail;
};

struct CaseReport {
  std::string case_name;
  std::vector<AssertionResult> assertions;
  int executed = 0;
  int passed = 0;
  int skipped = 0;
  bool all_passed = true;  // over executed assertions only
};

struct CorpusReport {
  std::vector<CaseReport> cases;  // sorted by case name
  int cases_total = 0;
  int cases_passed = 0;
  int assertions_executed = 0;
  int assertions_passed = 0;
  int assertions_skipped = 0;
  bool all_passed = true;
};

// The twelve built-in case studies, sorted by name.
const std::vector<CaseStudy>& builtin_cases();

// Lookup by stable name; throws ValidationError for unknown names.
const CaseStudy& builtin_case(const std::string& name);

// True iff s is exactly the canonical schedule; gates canonical_only
// assertions.
bool is_canonical(const CostSchedule& s);

// Evaluates the case's subject under s and checks every assertion.
// Assertion failures are reported, never thrown; only a malformed case
// (unknown metric, unusable subject) throws.
CaseReport run_case(const CaseStudy& c, const CostSchedule& s);

// Runs every built-in case. Deterministic: cases ordered by name.
CorpusReport run_all(const CostSchedule& s);

}  // namespace gridecon

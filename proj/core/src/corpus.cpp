#include "gridecon/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "gridecon/errors.hpp"

namespace gridecon {

std::string_view to_string(ToleranceMode mode) {
  switch (mode) {
    case ToleranceMode::Exact: return "exact";
    case ToleranceMode::Factor3: return "factor3";
    case ToleranceMode::Classification: return "classification";
    case ToleranceMode::AtLeast: return "at_least";
    case ToleranceMode::AtMost: return "at_most";
  }
  throw ValidationError("unknown tolerance mode");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

bool nearly_equal(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

bool check_numeric(ToleranceMode mode, double expected, double actual) {
  switch (mode) {
    case ToleranceMode::Exact:
      return nearly_equal(expected, actual);
    case ToleranceMode::Factor3:
      return actual >= expected / 3.0 && actual <= expected * 3.0;
    case ToleranceMode::AtLeast:
      return actual >= expected;
    case ToleranceMode::AtMost:
      return actual <= expected;
    case ToleranceMode::Classification:
      break;
  }
  throw ValidationError("classification mode has no numeric check");
}

std::string numeric_expectation(const CaseAssertion& a) {
  switch (a.mode) {
    case ToleranceMode::Exact:
      return "= " + num(a.expected_value);
    case ToleranceMode::Factor3:
      return "within [" + num(a.expected_value / 3.0) + ", " +
             num(a.expected_value * 3.0) + "]";
    case ToleranceMode::AtLeast:
      return ">= " + num(a.expected_value);
    case ToleranceMode::AtMost:
      return "<= " + num(a.expected_value);
    case ToleranceMode::Classification:
      break;
  }
  throw ValidationError("classification mode has no numeric expectation");
}

// Either a number or a label, depending on the metric.
struct MetricValue {
  bool is_label = false;
  double value = 0.0;
  std::string label;
};

MetricValue number(double v) { return {false, v, {}}; }
MetricValue labeled(std::string_view s) { return {true, 0.0, std::string(s)}; }

double demand_hours(const TaskProfile& t, const CostSchedule& s) {
  if (const auto* cpu = std::get_if<CpuTime>(&t.compute)) {
    return cpu->hours();
  }
  return std::get<InstructionCount>(t.compute).count() /
         s.effective_instructions_per_cpu_hour;
}

MetricValue task_metric(const std::string& metric, const TaskProfile& t,
                        const CostSchedule& s) {
  const CostBreakdown b = evaluate(t, s);
  if (metric == "network_cost") return number(b.cost.network);
  if (metric == "compute_cost") return number(b.cost.compute);
  if (metric == "db_access_cost") return number(b.cost.db_access);
  if (metric == "storage_cost") return number(b.cost.storage);
  if (metric == "disk_bw_cost") return number(b.cost.disk_bw);
  if (metric == "energy_cost") return number(b.cost.energy);
  if (metric == "total_cost") return number(b.total);
  if (metric == "network_fraction") return number(b.fraction.network);
  if (metric == "compute_fraction") return number(b.fraction.compute);
  if (metric == "cpu_net_imbalance") {
    if (b.total == 0.0) return number(0.0);
    return number(std::fabs(b.cost.network - b.cost.compute) / b.total);
  }
  if (metric == "cpu_years") {
    return number(demand_hours(t, s) * t.multiplicity / kCpuHoursPerYear);
  }
  if (metric == "intensity") return number(intensity(t, s));
  if (metric == "class") return labeled(to_string(classify(t, s).mobility));
  if (metric == "cluster_advisory") {
    return labeled(t.cluster_bound ? "true" : "false");
  }
  throw ValidationError("unknown task metric: " + metric);
}

struct PlacementContext {
  PlacementResult result;
  double optimal_compute = 0.0;
  double raw_shipping = 0.0;
  double ship_all_total = 0.0;
};

PlacementContext evaluate_scenario(const PlacementScenario& sc,
                                   const CostSchedule& s) {
  LinkPrices links(sc.default_link_price ? *sc.default_link_price
                                         : s.usd_per_wan_byte);
  for (const auto& [pair, price] : sc.link_overrides) {
    links.set(pair.first, pair.second, price);
  }

  PlacementContext ctx;
  ctx.result = optimize(sc.plan, sc.sites, links);
  for (const NodeCost& nc : ctx.result.per_node) {
    ctx.optimal_compute += nc.compute_cost;
  }
  const ShippingBaseline base = shipping_baseline(sc.plan, sc.sites, links);
  ctx.raw_shipping = base.raw_shipping_cost;
  ctx.ship_all_total = base.ship_all_total;
  return ctx;
}

MetricValue placement_metric(const std::string& metric,
                             const PlacementContext& ctx) {
  if (metric == "optimal_total") return number(ctx.result.total_cost);
  if (metric == "optimal_compute_cost") return number(ctx.optimal_compute);
  if (metric == "raw_shipping_cost") return number(ctx.raw_shipping);
  if (metric == "ship_all_total") return number(ctx.ship_all_total);
  constexpr std::string_view kSitePrefix = "optimal_site:";
  if (metric.rfind(kSitePrefix, 0) == 0) {
    const std::string label = metric.substr(kSitePrefix.size());
    auto it = ctx.result.assignment.find(label);
    require(it != ctx.result.assignment.end(),
            "optimal_site metric names unknown operator: " + label);
    return labeled(it->second);
  }
  throw ValidationError("unknown placement metric: " + metric);
}

MetricValue staffing_metric(const std::string& metric,
                            const StaffingScenario& sc) {
  if (metric == "traditional_headcount") {
    return number(staffing_estimate(sc.storage_tb, sc.servers,
                                    sc.network_gbps,
                                    StaffingModel::traditional()));
  }
  if (metric == "megaservice_headcount") {
    return number(staffing_estimate(sc.storage_tb, sc.servers,
                                    sc.network_gbps,
                                    StaffingModel::megaservice()));
  }
  throw ValidationError("unknown staffing metric: " + metric);
}

// Assertion shorthand for the builtin table.
CaseAssertion exact(std::string metric, double v, bool canonical_only) {
  return {std::move(metric), ToleranceMode::Exact, v, {}, canonical_only};
}
CaseAssertion factor3(std::string metric, double v, bool canonical_only) {
  return {std::move(metric), ToleranceMode::Factor3, v, {}, canonical_only};
}
CaseAssertion at_least(std::string metric, double v, bool canonical_only) {
  return {std::move(metric), ToleranceMode::AtLeast, v, {}, canonical_only};
}
CaseAssertion at_most(std::string metric, double v, bool canonical_only) {
  return {std::move(metric), ToleranceMode::AtMost, v, {}, canonical_only};
}
CaseAssertion classified(std::string metric, std::string label,
                         bool canonical_only) {
  return {std::move(metric), ToleranceMode::Classification, 0.0,
          std::move(label), canonical_only};
}

constexpr bool kCanonicalOnly = true;
constexpr bool kAnySchedule = false;

PlanNode source(std::string site, double bytes) {
  return PlanNode{SourceNode{std::move(site), ByteCount(bytes)}};
}

std::vector<CaseStudy> build_cases() {
  std::vector<CaseStudy> cases;

  {
    TaskProfile t;
    t.name = "seti_at_home";
    t.bytes_in = ByteCount(5e5);
    t.compute = CpuTime(12.0);
    t.energy_wh = 1000.0;
    t.multiplicity = 1e9;
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            factor3("network_cost", 1e6, kCanonicalOnly),
            factor3("compute_cost", 1e9, kCanonicalOnly),
            factor3("energy_cost", 1e8, kCanonicalOnly),
            factor3("cpu_years", 1.37e6, kAnySchedule),
            at_least("cpu_years", 1e6, kAnySchedule),
            classified("class", "mobile", kCanonicalOnly),
        },
        "Half-megabyte work unit, 12 cpu-hours each, a billion jobs, and the"
        " ~$1M network / ~$1B compute / ~$100M energy / million-plus"
        " cpu-years totals are quoted figures. bytes_out = 0 and 1,000 Wh"
        " per job (from the 1e12 Wh aggregate) are calibrated. The quoted"
        " per-job intensity uses input bytes only, so the raw intensity is"
        " not asserted, only the mobile class."});
  }

  {
    TaskProfile t;
    t.name = "ftp_100mb";
    t.bytes_out = ByteCount(1e8);
    t.compute = InstructionCount(1e10);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("network_cost", 0.10, kCanonicalOnly),
            factor3("total_cost", 0.10, kCanonicalOnly),
            at_least("network_fraction", 0.99, kCanonicalOnly),
            exact("intensity", 100.0, kAnySchedule),
            classified("class", "stay_home", kCanonicalOnly),
        },
        "The 10-cent total and the 99% network share are quoted; the"
        " 1e10-instruction cpu demand is calibrated so the share lands at"
        " 99%."});
  }

  {
    TaskProfile t;
    t.name = "html_access";
    t.bytes_out = ByteCount(8800.0);
    t.compute = InstructionCount(1.2e7);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("total_cost", 1e-5, kCanonicalOnly),
            at_least("network_fraction", 0.86, kCanonicalOnly),
            at_most("network_fraction", 0.90, kCanonicalOnly),
            classified("class", "stay_home", kCanonicalOnly),
        },
        "Ten microdollars per page view at 88% network cost is quoted; the"
        " 8.8 KB transfer and 1.2e7 instructions are calibrated to match"
        " exactly."});
  }

  {
    TaskProfile t;
    t.name = "hotmail_txn";
    t.bytes_out = ByteCount(5000.0);
    t.compute = InstructionCount(5e7);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("total_cost", 1e-5, kCanonicalOnly),
            at_most("cpu_net_imbalance", 0.2, kCanonicalOnly),
            exact("intensity", 1e4, kAnySchedule),
            classified("class", "break_even", kCanonicalOnly),
        },
        "Ten microdollars per transaction with networking and cpu"
        " approximately balanced is quoted; the 5 KB transfer and 5e7"
        " instructions are calibrated. Balance puts the task exactly at the"
        " break-even intensity."});
  }

  {
    TaskProfile t;
    t.name = "data_loading";
    t.bytes_in = ByteCount(1e9);
    t.compute = InstructionCount(1e12);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("intensity", 1000.0, kAnySchedule),
            classified("class", "stay_home", kCanonicalOnly),
        },
        "About 1,000 instructions per byte for database load parsing and"
        " indexing is quoted; the 1 GB volume is a convenience sizing."});
  }

  {
    TaskProfile t;
    t.name = "sloan_vision";
    t.bytes_in = ByteCount(1e12);
    t.compute = InstructionCount(1e16);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("intensity", 1e4, kAnySchedule),
            classified("class", "break_even", kCanonicalOnly),
        },
        "Astronomy pipeline processing at about 10,000 instructions per"
        " byte, squarely at the break-even point, is quoted; the terabyte"
        " volume is a convenience sizing."});
  }

  {
    TaskProfile t;
    t.name = "crack_propagation";
    t.bytes_in = ByteCount(1e8);
    t.bytes_out = ByteCount(1e10);
    t.compute = CpuTime(7.0 * kCpuHoursPerYear);
    t.cluster_bound = true;
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            factor3("intensity", 7.6e6, kCanonicalOnly),
            exact("cpu_years", 7.0, kAnySchedule),
            classified("class", "mobile", kCanonicalOnly),
            classified("cluster_advisory", "true", kAnySchedule),
        },
        "100 MB in, 10 GB out, 7 cpu-years, and the need for a tightly"
        " coupled cluster are quoted; the ~7.6e6 instructions/byte intensity"
        " follows from them."});
  }

  {
    TaskProfile t;
    t.name = "pixar_render";
    t.bytes_in = ByteCount(5e7);
    t.bytes_out = ByteCount(2e8);
    t.compute = CpuTime(10.0);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            at_least("intensity", 3e4, kCanonicalOnly),
            classified("class", "mobile", kCanonicalOnly),
        },
        "A 50 MB task description, 10 render-hours, and a 200 MB output"
        " image are quoted. The quoted 200k-600k instructions/byte counts"
        " output bytes only while this engine counts both directions, so"
        " only the mobile classification is asserted."});
  }

  {
    PlacementScenario sc;
    sc.sites = {{"client", 1e-13}, {"db", 1e-13}};
    OperatorNode query;
    query.name = "query";
    query.children.push_back(source("db", 4e10));
    query.instr_per_input_byte = 241250.0;
    query.selectivity = 2.5e-5;
    sc.plan = Plan{PlanNode{std::move(query)}, "client"};
    cases.push_back(CaseStudy{
        "blast_swissprot",
        std::move(sc),
        {
            classified("optimal_site:query", "db", kCanonicalOnly),
            exact("raw_shipping_cost", 40.0, kCanonicalOnly),
            exact("optimal_compute_cost", 965.0, kCanonicalOnly),
            factor3("optimal_total", 1000.0, kCanonicalOnly),
            exact("ship_all_total", 1005.0, kCanonicalOnly),
        },
        "The 40 GB database, the $40 cost of shipping it, and the 7,720"
        " cpu-hour combined computation are quoted; the per-byte density"
        " (7,720 h at 1.25e12 instr/h over 40 GB = 241,250 instr/B) and the"
        " 1 MB answer size are calibrated from them."});
  }

  {
    TaskProfile t;
    t.name = "smith_waterman";
    t.bytes_in = ByteCount(4e10);
    t.compute = CpuTime(7200.0);
    cases.push_back(CaseStudy{
        t.name,
        t,
        {
            exact("compute_cost", 900.0, kCanonicalOnly),
            exact("intensity", 225000.0, kCanonicalOnly),
            classified("class", "mobile", kCanonicalOnly),
        },
        "7,200 cpu-hours against the 40 GB database is quoted; the $900"
        " compute cost and 225,000 instructions/byte follow."});
  }

  {
    StaffingScenario sc;
    sc.storage_tb = 2000.0;
    sc.servers = 10000.0;
    cases.push_back(CaseStudy{
        "google_ops",
        sc,
        {
            at_least("traditional_headcount", 2000.0, kAnySchedule),
            exact("traditional_headcount", 2100.0, kAnySchedule),
            exact("megaservice_headcount", 25.0, kAnySchedule),
        },
        "The operations staff of 25 for roughly 10,000 servers and 2"
        " petabytes is quoted; the traditional admin-per-terabyte and"
        " admin-per-100-servers ratios give the 2,100-head comparison."});
  }

  {
    PlacementScenario sc;
    sc.sites = {{"client", 0.0}, {"src", 0.0}};
    OperatorNode filter;
    filter.name = "filter";
    filter.children.push_back(source("src", 1e11));
    filter.instr_per_input_byte = 1000.0;
    filter.selectivity = 0.01;
    sc.plan = Plan{PlanNode{std::move(filter)}, "client"};
    cases.push_back(CaseStudy{
        "filter_pushdown_demo",
        std::move(sc),
        {
            classified("optimal_site:filter", "src", kCanonicalOnly),
            exact("optimal_total", 1.0, kCanonicalOnly),
            exact("ship_all_total", 100.0, kCanonicalOnly),
            exact("raw_shipping_cost", 100.0, kCanonicalOnly),
        },
        "Constructed demonstration of pushing a selective predicate to the"
        " data: 100 GB scanned where it lives, 1% selected, free compute at"
        " both sites. Filtering at the source ships 1 GB for $1; shipping"
        " raw costs $100."});
  }

  std::sort(cases.begin(), cases.end(),
            [](const CaseStudy& a, const CaseStudy& b) {
              return a.name < b.name;
            });
  return cases;
}

}  // namespace

const std::vector<CaseStudy>& builtin_cases() {
  static const std::vector<CaseStudy> cases = build_cases();
  return cases;
}

const CaseStudy& builtin_case(const std::string& name) {
  for (const CaseStudy& c : builtin_cases()) {
    if (c.name == name) return c;
  }
  throw ValidationError("unknown case: " + name);
}

bool is_canonical(const CostSchedule& s) { return s == canonical_schedule(); }

CaseReport run_case(const CaseStudy& c, const CostSchedule& s) {
  require(!c.assertions.empty(), "case must have at least one assertion");
  validate_schedule(s);
  const bool canonical = is_canonical(s);

  // Lazy so that a fully skipped case never evaluates its subject.
  std::optional<PlacementContext> placement_ctx;
  auto metric_value = [&](const std::string& metric) -> MetricValue {
    if (const auto* t = std::get_if<TaskProfile>(&c.subject)) {
      return task_metric(metric, *t, s);
    }
    if (const auto* p = std::get_if<PlacementScenario>(&c.subject)) {
      if (!placement_ctx) placement_ctx = evaluate_scenario(*p, s);
      return placement_metric(metric, *placement_ctx);
    }
    return staffing_metric(metric, std::get<StaffingScenario>(c.subject));
  };

  CaseReport rep;
  rep.case_name = c.name;
  for (const CaseAssertion& a : c.assertions) {
    AssertionResult res;
    res.assertion = a;
    if (a.canonical_only && !canonical) {
      res.detail = "skipped: bound to the canonical schedule";
      ++rep.skipped;
      rep.assertions.push_back(std::move(res));
      continue;
    }
    const MetricValue v = metric_value(a.metric);
    res.executed = true;
    ++rep.executed;
    if (a.mode == ToleranceMode::Classification) {
      require(v.is_label,
              "metric " + a.metric + " is numeric; expected a label metric");
      res.actual_label = v.label;
      res.passed = v.label == a.expected_label;
      res.detail = a.metric + " = " + v.label + " (expected " +
                   a.expected_label + ")";
    } else {
      require(!v.is_label,
              "metric " + a.metric + " is a label; expected a numeric metric");
      res.actual_value = v.value;
      res.passed = check_numeric(a.mode, a.expected_value, v.value);
      res.detail = a.metric + " = " + num(v.value) + " (expected " +
                   numeric_expectation(a) + ")";
    }
    if (res.passed) ++rep.passed;
    rep.assertions.push_back(std::move(res));
  }
  rep.all_passed = rep.passed == rep.executed;
  return rep;
}

CorpusReport run_all(const CostSchedule& s) {
  CorpusReport report;
  for (const CaseStudy& c : builtin_cases()) {
    CaseReport rep = run_case(c, s);
    ++report.cases_total;
    if (rep.all_passed) ++report.cases_passed;
    report.assertions_executed += rep.executed;
    report.assertions_passed += rep.passed;
    report.assertions_skipped += rep.skipped;
    report.all_passed = report.all_passed && rep.all_passed;
    report.cases.push_back(std::move(rep));
  }
  return report;
}

}  // namespace gridecon

#include <cctype>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridecon/corpus.hpp"
#include "gridecon/cost_model.hpp"
#include "gridecon/errors.hpp"
#include "gridecon/json_io.hpp"
#include "gridecon/placement.hpp"
#include "gridecon/quantities.hpp"
#include "gridecon/workload.hpp"

namespace {

using namespace gridecon;
using nlohmann::json;

std::string num(double v, int sig = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

std::string money(double v) { return format_quantity(v, QuantityKind::Money, 3); }

// "1GB" -> "1 GB", "10µ$" -> "10 µ$"; exponents ("1e+09") stay intact
// because the scan stops at the first digit from the right.
std::string spaced(double v, QuantityKind kind, int sig = 6) {
  const std::string s = format_quantity(v, kind, sig);
  std::size_t i = s.size();
  while (i > 0) {
    const unsigned char c = static_cast<unsigned char>(s[i - 1]);
    if (std::isalpha(c) || c == '$' || c >= 0x80) {
      --i;
    } else {
      break;
    }
  }
  if (i == 0 || i == s.size()) return s;
  return s.substr(0, i) + " " + s.substr(i);
}

double schedule_price(const CostSchedule& s, PriceCategory c) {
  switch (c) {
    case PriceCategory::Wan: return s.usd_per_wan_byte;
    case PriceCategory::Lan: return s.usd_per_lan_byte;
    case PriceCategory::Instruction: return s.usd_per_instruction;
    case PriceCategory::CpuHour: return s.usd_per_cpu_hour;
    case PriceCategory::Disk: return s.usd_per_disk_byte;
    case PriceCategory::DbAccess: return s.usd_per_db_access;
    case PriceCategory::DiskBw: return s.usd_per_disk_bw_byte;
    case PriceCategory::Energy: return s.usd_per_watt_hour;
  }
  throw ValidationError("unknown price category");
}

struct ScheduleRow {
  PriceCategory category;
  const char* price_unit;
  QuantityKind per_dollar_kind;
  const char* per_dollar_suffix;
};

constexpr ScheduleRow kScheduleRows[] = {
    {PriceCategory::Wan, "$/byte", QuantityKind::Bytes, ""},
    {PriceCategory::Lan, "$/byte", QuantityKind::Bytes, ""},
    {PriceCategory::Instruction, "$/instruction", QuantityKind::Instructions,
     " instructions"},
    {PriceCategory::CpuHour, "$/cpu-hour", QuantityKind::CpuTime, ""},
    {PriceCategory::Disk, "$/byte", QuantityKind::Bytes, " of capacity"},
    {PriceCategory::DbAccess, "$/access", QuantityKind::Instructions,
     " accesses"},
    {PriceCategory::DiskBw, "$/byte", QuantityKind::Bytes,
     " of disk bandwidth"},
    {PriceCategory::Energy, "$/Wh", QuantityKind::Instructions, " Wh"},
};

void print_schedule_table(const CostSchedule& s,
                          const CostSchedule* annotate_vs) {
  std::printf("%-12s %-22s %s\n", "category", "price", "per $1");
  for (const ScheduleRow& row : kScheduleRows) {
    const double price = schedule_price(s, row.category);
    const std::string price_col = num(price) + " " + row.price_unit;
    std::string per_col = "-";
    if (price > 0.0) {
      per_col = spaced(1.0 / price, row.per_dollar_kind) +
                row.per_dollar_suffix + " per $1";
    }
    if (annotate_vs != nullptr) {
      const double ref = schedule_price(*annotate_vs, row.category);
      if (ref > 0.0) {
        per_col += "  (" + num(price / ref, 3) + "x canonical)";
      }
    }
    std::printf("%-12s %-22s %s\n",
                std::string(to_string(row.category)).c_str(),
                price_col.c_str(), per_col.c_str());
  }
  std::printf("effective rate: %s instructions per cpu-hour\n",
              num(s.effective_instructions_per_cpu_hour).c_str());
}

json schedule_report_json(const CostSchedule& s,
                          const CostSchedule* annotate_vs) {
  json per_dollar = json::object();
  for (const ScheduleRow& row : kScheduleRows) {
    const double price = schedule_price(s, row.category);
    const std::string name(to_string(row.category));
    per_dollar[name] = price > 0.0 ? json(1.0 / price) : json(nullptr);
  }
  json doc{{"schedule", schedule_to_json(s)},
           {"per_dollar", std::move(per_dollar)}};
  if (annotate_vs != nullptr) {
    json ratios = json::object();
    for (const ScheduleRow& row : kScheduleRows) {
      const double ref = schedule_price(*annotate_vs, row.category);
      const std::string name(to_string(row.category));
      ratios[name] =
          ref > 0.0 ? json(schedule_price(s, row.category) / ref)
                    : json(nullptr);
    }
    doc["ratio_vs_canonical"] = std::move(ratios);
  }
  return doc;
}

CostSchedule load_schedule(const std::string& path) {
  if (path.empty()) return canonical_schedule();
  return schedule_from_json(load_json_file(path));
}

void emit(const json& doc) { std::printf("%s\n", doc.dump(2).c_str()); }

// --- schedule ---------------------------------------------------------

struct ScheduleArgs {
  std::string file;
  bool derive = false;
  std::string baseline;
  std::optional<double> project_months;
  std::string trends;
  bool as_json = false;
};

int cmd_schedule(const ScheduleArgs& args) {
  CostSchedule s = canonical_schedule();
  bool annotate = false;
  if (!args.file.empty()) {
    s = schedule_from_json(load_json_file(args.file));
  } else if (args.derive) {
    BaselineDocument doc;
    doc.baseline = reference_baseline();
    if (!args.baseline.empty()) {
      doc = baseline_from_json(load_json_file(args.baseline));
    }
    s = derive_schedule(doc.baseline, doc.params);
    annotate = true;
  }
  if (args.project_months) {
    TrendParams trends = TrendParams::moores_law_default();
    if (!args.trends.empty()) {
      trends = trends_from_json(load_json_file(args.trends));
    }
    s = project_schedule(s, *args.project_months, trends);
  }
  const CostSchedule canonical = canonical_schedule();
  const CostSchedule* reference = annotate ? &canonical : nullptr;
  if (args.as_json) {
    emit(schedule_report_json(s, reference));
  } else {
    print_schedule_table(s, reference);
  }
  return 0;
}

// --- task -------------------------------------------------------------

struct TaskArgs {
  std::string task_file;
  std::string schedule_file;
  bool as_json = false;
};

int cmd_task_cost(const TaskArgs& args) {
  const TaskProfile task = task_from_json(load_json_file(args.task_file));
  const CostSchedule s = load_schedule(args.schedule_file);
  const CostBreakdown b = evaluate(task, s);
  if (args.as_json) {
    json doc = breakdown_to_json(b);
    doc["task"] = task.name;
    emit(doc);
    return 0;
  }
  std::printf("Task: %s\n", task.name.c_str());
  std::printf("%-10s %-12s %s\n", "category", "cost", "fraction");
  for (const auto& [name, field] : kCostCategoryFields) {
    const std::string frac =
        b.total > 0.0 ? num(b.fraction.*field * 100.0, 3) + "%" : "-";
    std::printf("%-10s %-12s %s\n", std::string(name).c_str(),
                money(b.cost.*field).c_str(), frac.c_str());
  }
  std::printf("%-10s %s\n", "total", money(b.total).c_str());
  return 0;
}

int cmd_task_classify(const TaskArgs& args) {
  const TaskProfile task = task_from_json(load_json_file(args.task_file));
  const CostSchedule s = load_schedule(args.schedule_file);
  const double network_bytes = task.bytes_in.bytes() + task.bytes_out.bytes();

  if (network_bytes == 0.0) {
    // No bytes to ship: intensity is unbounded and the task is trivially
    // mobile (modulo the cluster advisory).
    const double breakeven = breakeven_intensity(s);
    if (args.as_json) {
      emit(json{{"task", task.name},
                {"class", "mobile"},
                {"intensity", nullptr},
                {"breakeven_threshold", breakeven},
                {"attractive_threshold", 3.0 * breakeven},
                {"cluster_advisory", task.cluster_bound},
                {"note", "task moves no bytes; intensity unbounded"}});
      return 0;
    }
    std::printf("Task: %s\n", task.name.c_str());
    std::printf("class: mobile (no network traffic; intensity unbounded)\n");
    if (task.cluster_bound) {
      std::printf(
          "advisory: cluster-bound; needs a tightly coupled cluster, not a"
          " federation of sites\n");
    }
    return 0;
  }

  const MobilityReport m = classify(task, s);
  if (args.as_json) {
    json doc = mobility_to_json(m);
    doc["task"] = task.name;
    emit(doc);
    return 0;
  }
  std::string comparison;
  switch (m.mobility) {
    case MobilityClass::StayHome:
      comparison = num(m.intensity) + " instr/byte < " +
                   num(m.breakeven_threshold);
      break;
    case MobilityClass::BreakEven:
      comparison = num(m.intensity) + " instr/byte in [" +
                   num(m.breakeven_threshold) + ", " +
                   num(m.attractive_threshold) + ")";
      break;
    case MobilityClass::Mobile:
      comparison = num(m.intensity) + " instr/byte >= " +
                   num(m.attractive_threshold);
      break;
  }
  std::printf("Task: %s\n", task.name.c_str());
  std::printf("class: %s (%s)\n", std::string(to_string(m.mobility)).c_str(),
              comparison.c_str());
  std::printf("intensity: %s instructions/byte\n", num(m.intensity).c_str());
  std::printf("break-even threshold: %s instructions/byte\n",
              num(m.breakeven_threshold).c_str());
  std::printf("attractive threshold: %s instructions/byte\n",
              num(m.attractive_threshold).c_str());
  if (m.cluster_advisory) {
    std::printf(
        "advisory: cluster-bound; needs a tightly coupled cluster, not a"
        " federation of sites\n");
  }
  return 0;
}

// --- place ------------------------------------------------------------

struct PlaceArgs {
  std::string plan_file;
  std::string schedule_file;
  bool as_json = false;
};

int cmd_place(const PlaceArgs& args) {
  const PlacementScenario sc = plan_from_json(load_json_file(args.plan_file));
  const CostSchedule s = load_schedule(args.schedule_file);
  LinkPrices links(sc.default_link_price ? *sc.default_link_price
                                         : s.usd_per_wan_byte);
  for (const auto& [pair, price] : sc.link_overrides) {
    links.set(pair.first, pair.second, price);
  }
  const PlacementResult result = optimize(sc.plan, sc.sites, links);
  const ShippingBaseline baseline = shipping_baseline(sc.plan, sc.sites, links);

  if (args.as_json) {
    json doc = placement_result_to_json(result);
    doc["raw_shipping_cost"] = baseline.raw_shipping_cost;
    doc["ship_all_total"] = baseline.ship_all_total;
    emit(doc);
    return 0;
  }

  std::printf("client: %s\n", sc.plan.client_site.c_str());
  std::printf("assignment:\n");
  for (const auto& [op, site] : result.assignment) {
    std::printf("  %s -> %s\n", op.c_str(), site.c_str());
  }
  std::printf("%-14s %-10s %-12s %-12s %s\n", "node", "site", "compute",
              "inbound", "output");
  for (const NodeCost& nc : result.per_node) {
    std::printf("%-14s %-10s %-12s %-12s %s\n", nc.label.c_str(),
                nc.site_id.c_str(),
                nc.is_source ? "-" : money(nc.compute_cost).c_str(),
                nc.is_source ? "-" : money(nc.inbound_transfer_cost).c_str(),
                format_quantity(nc.output_bytes.bytes(), QuantityKind::Bytes,
                                4)
                    .c_str());
  }
  std::printf("delivery to client: %s\n", money(result.delivery_cost).c_str());
  std::printf("total: %s\n", money(result.total_cost).c_str());
  std::printf("alternative: %s to ship %s of source data to the client\n",
              money(baseline.raw_shipping_cost).c_str(),
              format_quantity(baseline.total_source_bytes.bytes(),
                              QuantityKind::Bytes, 4)
                  .c_str());
  std::printf("everything-at-client cost: %s\n",
              money(baseline.ship_all_total).c_str());
  return 0;
}

// --- corpus -----------------------------------------------------------

struct CorpusArgs {
  std::string case_name;
  std::string schedule_file;
  bool as_json = false;
};

void print_case_report(const CaseReport& rep, bool detail) {
  std::printf("%s %s (%d/%d", rep.all_passed ? "PASS" : "FAIL",
              rep.case_name.c_str(), rep.passed, rep.executed);
  if (rep.skipped > 0) std::printf(", %d skipped", rep.skipped);
  std::printf(")\n");
  if (!detail) return;
  for (const AssertionResult& ar : rep.assertions) {
    const char* status = !ar.executed ? "skip" : ar.passed ? "pass" : "FAIL";
    std::printf("  %s %s\n", status, ar.detail.c_str());
  }
}

int cmd_corpus_run(const CorpusArgs& args) {
  const CostSchedule s = load_schedule(args.schedule_file);
  if (!args.case_name.empty()) {
    const CaseReport rep = run_case(builtin_case(args.case_name), s);
    if (args.as_json) {
      emit(case_report_to_json(rep));
    } else {
      print_case_report(rep, true);
    }
    return rep.all_passed ? 0 : 1;
  }
  const CorpusReport rep = run_all(s);
  if (args.as_json) {
    emit(corpus_report_to_json(rep));
  } else {
    for (const CaseReport& cr : rep.cases) {
      print_case_report(cr, !cr.all_passed);
    }
    std::printf("%d/%d cases passed", rep.cases_passed, rep.cases_total);
    if (rep.assertions_skipped > 0) {
      std::printf(" (%d assertions skipped)", rep.assertions_skipped);
    }
    std::printf("\n");
  }
  return rep.all_passed ? 0 : 1;
}

int cmd_corpus_export(const std::string& case_name) {
  const CaseStudy& c = builtin_case(case_name);
  if (const auto* t = std::get_if<TaskProfile>(&c.subject)) {
    emit(task_to_json(*t));
    return 0;
  }
  if (const auto* p = std::get_if<PlacementScenario>(&c.subject)) {
    emit(plan_to_json(*p));
    return 0;
  }
  throw ValidationError("case " + case_name +
                        " is a staffing scenario; it has no task or plan"
                        " document form");
}

// --- crossover --------------------------------------------------------

struct CrossoverArgs {
  std::string trends_file;
  double intensity = 0.0;
  std::string schedule_file;
};

int cmd_crossover(const CrossoverArgs& args) {
  const CostSchedule s = load_schedule(args.schedule_file);
  const TrendParams trends = trends_from_json(load_json_file(args.trends_file));
  std::printf("break-even intensity now: %s instructions/byte\n",
              num(breakeven_intensity(s)).c_str());
  std::printf("target intensity: %s instructions/byte\n",
              num(args.intensity).c_str());
  const std::optional<double> months =
      breakeven_crossover(s, trends, args.intensity);
  if (!months) {
    std::printf("crossover: never\n");
    return 0;
  }
  std::printf("crossover: %s months\n", num(*months).c_str());
  std::printf("schedule at crossover:\n");
  print_schedule_table(project_schedule(s, *months, trends), nullptr);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Distributed-computing economics: cost schedules, task"
               " mobility, and cost-based operator placement"};
  app.require_subcommand(1);

  ScheduleArgs schedule_args;
  double project_months = 0.0;
  CLI::App* schedule_cmd =
      app.add_subcommand("schedule", "Show, derive, or project a schedule");
  CLI::Option* file_opt = schedule_cmd->add_option(
      "--file", schedule_args.file, "Schedule JSON document");
  CLI::Option* derive_opt = schedule_cmd->add_flag(
      "--derive", schedule_args.derive,
      "Derive the schedule from a hardware baseline");
  schedule_cmd
      ->add_option("--baseline", schedule_args.baseline,
                   "Hardware baseline JSON document")
      ->needs(derive_opt);
  file_opt->excludes(derive_opt);
  CLI::Option* project_opt = schedule_cmd->add_option(
      "--project", project_months, "Roll prices forward this many months");
  schedule_cmd
      ->add_option("--trends", schedule_args.trends,
                   "Trends JSON document (halving times)")
      ->needs(project_opt);
  schedule_cmd->add_flag("--json", schedule_args.as_json, "JSON output");

  TaskArgs task_args;
  CLI::App* task_cmd =
      app.add_subcommand("task", "Evaluate or classify a task");
  task_cmd->require_subcommand(1);
  CLI::App* cost_cmd = task_cmd->add_subcommand("cost", "Cost breakdown");
  CLI::App* classify_cmd =
      task_cmd->add_subcommand("classify", "Mobility classification");
  for (CLI::App* sub : {cost_cmd, classify_cmd}) {
    sub->add_option("--task", task_args.task_file, "Task JSON document")
        ->required();
    sub->add_option("--schedule", task_args.schedule_file,
                    "Schedule JSON document");
    sub->add_flag("--json", task_args.as_json, "JSON output");
  }

  PlaceArgs place_args;
  CLI::App* place_cmd =
      app.add_subcommand("place", "Optimize operator placement for a plan");
  place_cmd->add_option("--plan", place_args.plan_file, "Plan JSON document")
      ->required();
  place_cmd->add_option("--schedule", place_args.schedule_file,
                        "Schedule JSON document");
  place_cmd->add_flag("--json", place_args.as_json, "JSON output");

  CorpusArgs corpus_args;
  std::string export_case;
  CLI::App* corpus_cmd =
      app.add_subcommand("corpus", "Built-in case studies");
  corpus_cmd->require_subcommand(1);
  CLI::App* corpus_run_cmd =
      corpus_cmd->add_subcommand("run", "Run case assertions");
  corpus_run_cmd->add_option("--case", corpus_args.case_name,
                             "Run a single case by name");
  corpus_run_cmd->add_option("--schedule", corpus_args.schedule_file,
                             "Schedule JSON document");
  corpus_run_cmd->add_flag("--json", corpus_args.as_json, "JSON output");
  CLI::App* corpus_export_cmd = corpus_cmd->add_subcommand(
      "export", "Print a case as a task/plan JSON document");
  corpus_export_cmd->add_option("--case", export_case, "Case name")
      ->required();

  CrossoverArgs crossover_args;
  CLI::App* crossover_cmd = app.add_subcommand(
      "crossover",
      "When does the break-even intensity fall to a target value?");
  crossover_cmd
      ->add_option("--trends", crossover_args.trends_file,
                   "Trends JSON document")
      ->required();
  crossover_cmd
      ->add_option("--intensity", crossover_args.intensity,
                   "Target intensity in instructions/byte")
      ->required()
      ->check(CLI::PositiveNumber);
  crossover_cmd->add_option("--schedule", crossover_args.schedule_file,
                            "Schedule JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (schedule_cmd->parsed()) {
    if (project_opt->count() > 0) schedule_args.project_months = project_months;
    return cmd_schedule(schedule_args);
  }
  if (cost_cmd->parsed()) return cmd_task_cost(task_args);
  if (classify_cmd->parsed()) return cmd_task_classify(task_args);
  if (place_cmd->parsed()) return cmd_place(place_args);
  if (corpus_run_cmd->parsed()) return cmd_corpus_run(corpus_args);
  if (corpus_export_cmd->parsed()) return cmd_corpus_export(export_case);
  if (crossover_cmd->parsed()) return cmd_crossover(crossover_args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gridecon::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gridecon::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "gridecon/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string_view>
#include <vector>

#include "gridecon/errors.hpp"

namespace gridecon {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

void require_object(const json& j, const char* what) {
  require(j.is_object(), std::string(what) + " must be a JSON object");
}

void reject_unknown_fields(const json& j,
                           const std::set<std::string_view>& allowed,
                           const char* what) {
  for (const auto& item : j.items()) {
    require(allowed.count(item.key()) != 0,
            std::string("unknown ") + what + " field: " + item.key());
  }
}

// A quantity field: plain number or suffixed string.
double quantity_field(const json& j, const char* key, QuantityKind kind,
                      double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) {
    return parse_quantity(v.get<std::string>(), kind);
  }
  require(v.is_number(), std::string(key) + " must be a number or a string");
  const double d = v.get<double>();
  require(std::isfinite(d), std::string(key) + " must be finite");
  require(kind == QuantityKind::Money || d >= 0.0,
          std::string(key) + " must be non-negative");
  return d;
}

double number_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  require(v.is_number(), std::string(key) + " must be a number");
  return v.get<double>();
}

std::string string_field(const json& j, const char* key,
                         const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  require(v.is_string(), std::string(key) + " must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  require(v.is_boolean(), std::string(key) + " must be a boolean");
  return v.get<bool>();
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
}

CostSchedule schedule_from_json(const json& doc) {
  require_object(doc, "schedule document");
  reject_unknown_fields(doc,
                        {"usd_per_wan_byte", "usd_per_lan_byte",
                         "usd_per_instruction", "usd_per_cpu_hour",
                         "usd_per_disk_byte", "usd_per_db_access",
                         "usd_per_disk_bw_byte", "usd_per_watt_hour",
                         "effective_instructions_per_cpu_hour"},
                        "schedule");
  CostSchedule s = canonical_schedule();
  s.usd_per_wan_byte = quantity_field(doc, "usd_per_wan_byte",
                                      QuantityKind::Money, s.usd_per_wan_byte);
  s.usd_per_lan_byte = quantity_field(doc, "usd_per_lan_byte",
                                      QuantityKind::Money, s.usd_per_lan_byte);
  s.usd_per_instruction =
      quantity_field(doc, "usd_per_instruction", QuantityKind::Money,
                     s.usd_per_instruction);
  s.usd_per_cpu_hour = quantity_field(doc, "usd_per_cpu_hour",
                                      QuantityKind::Money, s.usd_per_cpu_hour);
  s.usd_per_disk_byte =
      quantity_field(doc, "usd_per_disk_byte", QuantityKind::Money,
                     s.usd_per_disk_byte);
  s.usd_per_db_access =
      quantity_field(doc, "usd_per_db_access", QuantityKind::Money,
                     s.usd_per_db_access);
  s.usd_per_disk_bw_byte =
      quantity_field(doc, "usd_per_disk_bw_byte", QuantityKind::Money,
                     s.usd_per_disk_bw_byte);
  s.usd_per_watt_hour = quantity_field(doc, "usd_per_watt_hour",
                                       QuantityKind::Money,
                                       s.usd_per_watt_hour);
  s.effective_instructions_per_cpu_hour =
      quantity_field(doc, "effective_instructions_per_cpu_hour",
                     QuantityKind::Instructions,
                     s.effective_instructions_per_cpu_hour);
  validate_schedule(s);
  return s;
}

json schedule_to_json(const CostSchedule& s) {
  return json{
      {"usd_per_wan_byte", s.usd_per_wan_byte},
      {"usd_per_lan_byte", s.usd_per_lan_byte},
      {"usd_per_instruction", s.usd_per_instruction},
      {"usd_per_cpu_hour", s.usd_per_cpu_hour},
      {"usd_per_disk_byte", s.usd_per_disk_byte},
      {"usd_per_db_access", s.usd_per_db_access},
      {"usd_per_disk_bw_byte", s.usd_per_disk_bw_byte},
      {"usd_per_watt_hour", s.usd_per_watt_hour},
      {"effective_instructions_per_cpu_hour",
       s.effective_instructions_per_cpu_hour},
  };
}

TaskProfile task_from_json(const json& doc) {
  require_object(doc, "task document");
  reject_unknown_fields(doc,
                        {"name", "bytes_in", "bytes_out", "instructions",
                         "cpu_hours", "db_accesses", "storage_bytes",
                         "disk_bw_bytes", "energy_wh", "multiplicity",
                         "network_class", "cluster_bound"},
                        "task");
  require(!(doc.contains("instructions") && doc.contains("cpu_hours")),
          "task may specify instructions or cpu_hours, not both");

  TaskProfile t;
  t.name = string_field(doc, "name", "task");
  t.bytes_in =
      ByteCount(quantity_field(doc, "bytes_in", QuantityKind::Bytes, 0.0));
  t.bytes_out =
      ByteCount(quantity_field(doc, "bytes_out", QuantityKind::Bytes, 0.0));
  if (doc.contains("instructions")) {
    t.compute = InstructionCount(
        quantity_field(doc, "instructions", QuantityKind::Instructions, 0.0));
  } else if (doc.contains("cpu_hours")) {
    t.compute =
        CpuTime(quantity_field(doc, "cpu_hours", QuantityKind::CpuTime, 0.0));
  }
  t.db_accesses = number_field(doc, "db_accesses", 0.0);
  t.storage_bytes = ByteCount(
      quantity_field(doc, "storage_bytes", QuantityKind::Bytes, 0.0));
  t.disk_bw_bytes = ByteCount(
      quantity_field(doc, "disk_bw_bytes", QuantityKind::Bytes, 0.0));
  t.energy_wh = number_field(doc, "energy_wh", 0.0);
  t.multiplicity = number_field(doc, "multiplicity", 1.0);
  const std::string net = string_field(doc, "network_class", "WAN");
  if (net == "WAN") {
    t.network_class = NetworkClass::Wan;
  } else if (net == "LAN") {
    t.network_class = NetworkClass::Lan;
  } else {
    throw ValidationError("network_class must be \"WAN\" or \"LAN\"");
  }
  t.cluster_bound = bool_field(doc, "cluster_bound", false);
  validate_task(t);
  return t;
}

json task_to_json(const TaskProfile& t) {
  json doc{
      {"name", t.name},
      {"bytes_in", t.bytes_in.bytes()},
      {"bytes_out", t.bytes_out.bytes()},
      {"db_accesses", t.db_accesses},
      {"storage_bytes", t.storage_bytes.bytes()},
      {"disk_bw_bytes", t.disk_bw_bytes.bytes()},
      {"energy_wh", t.energy_wh},
      {"multiplicity", t.multiplicity},
      {"network_class", std::string(to_string(t.network_class))},
      {"cluster_bound", t.cluster_bound},
  };
  if (const auto* instr = std::get_if<InstructionCount>(&t.compute)) {
    doc["instructions"] = instr->count();
  } else {
    doc["cpu_hours"] = std::get<CpuTime>(t.compute).hours();
  }
  return doc;
}

namespace {

PlanNode plan_node_from_json(const json& j) {
  require_object(j, "plan node");
  reject_unknown_fields(j, {"source", "operator"}, "plan node");
  require(j.contains("source") != j.contains("operator"),
          "plan node must carry exactly one of \"source\" / \"operator\"");
  if (j.contains("source")) {
    const json& src = j.at("source");
    require_object(src, "source node");
    reject_unknown_fields(src, {"site_id", "bytes"}, "source node");
    require(src.contains("site_id"), "source node needs a site_id");
    SourceNode node;
    node.site_id = string_field(src, "site_id", "");
    node.bytes =
        ByteCount(quantity_field(src, "bytes", QuantityKind::Bytes, 0.0));
    return PlanNode{std::move(node)};
  }
  const json& op = j.at("operator");
  require_object(op, "operator node");
  reject_unknown_fields(op,
                        {"name", "children", "instr_per_input_byte",
                         "selectivity", "pinned_site"},
                        "operator node");
  require(op.contains("children") && op.at("children").is_array() &&
              !op.at("children").empty(),
          "operator node needs a non-empty children array");
  OperatorNode node;
  node.name = string_field(op, "name", "");
  node.instr_per_input_byte = quantity_field(
      op, "instr_per_input_byte", QuantityKind::Instructions, 0.0);
  node.selectivity = number_field(op, "selectivity", 1.0);
  if (op.contains("pinned_site")) {
    node.pinned_site = string_field(op, "pinned_site", "");
  }
  for (const json& child : op.at("children")) {
    node.children.push_back(plan_node_from_json(child));
  }
  return PlanNode{std::move(node)};
}

json plan_node_to_json(const PlanNode& n) {
  if (const auto* src = std::get_if<SourceNode>(&n.node)) {
    return json{{"source",
                 {{"site_id", src->site_id}, {"bytes", src->bytes.bytes()}}}};
  }
  const auto& op = std::get<OperatorNode>(n.node);
  json obj{
      {"instr_per_input_byte", op.instr_per_input_byte},
      {"selectivity", op.selectivity},
      {"children", json::array()},
  };
  if (!op.name.empty()) obj["name"] = op.name;
  if (op.pinned_site) obj["pinned_site"] = *op.pinned_site;
  for (const PlanNode& child : op.children) {
    obj["children"].push_back(plan_node_to_json(child));
  }
  return json{{"operator", std::move(obj)}};
}

}  // namespace

PlacementScenario plan_from_json(const json& doc) {
  require_object(doc, "plan document");
  reject_unknown_fields(
      doc, {"sites", "links", "root", "client_site", "default_link_price"},
      "plan");
  require(doc.contains("sites") && doc.at("sites").is_array(),
          "plan document needs a sites array");
  require(doc.contains("root"), "plan document needs a root node");
  require(doc.contains("client_site"), "plan document needs a client_site");

  PlacementScenario sc;
  for (const json& js : doc.at("sites")) {
    require_object(js, "site");
    reject_unknown_fields(js, {"id", "usd_per_instruction"}, "site");
    require(js.contains("id"), "site needs an id");
    Site site;
    site.id = string_field(js, "id", "");
    site.usd_per_instruction =
        quantity_field(js, "usd_per_instruction", QuantityKind::Money, 0.0);
    sc.sites.push_back(std::move(site));
  }
  if (doc.contains("default_link_price")) {
    sc.default_link_price = quantity_field(doc, "default_link_price",
                                           QuantityKind::Money, 0.0);
  }
  if (doc.contains("links")) {
    const json& links = doc.at("links");
    require_object(links, "links");
    for (const auto& from : links.items()) {
      require_object(from.value(), "links row");
      for (const auto& to : from.value().items()) {
        const json& v = to.value();
        double price = 0.0;
        if (v.is_string()) {
          price = parse_quantity(v.get<std::string>(), QuantityKind::Money);
        } else {
          require(v.is_number(), "link price must be a number or a string");
          price = v.get<double>();
        }
        sc.link_overrides[{from.key(), to.key()}] = price;
      }
    }
  }
  sc.plan.root = plan_node_from_json(doc.at("root"));
  sc.plan.client_site = string_field(doc, "client_site", "");
  return sc;
}

json plan_to_json(const PlacementScenario& sc) {
  json sites = json::array();
  for (const Site& s : sc.sites) {
    sites.push_back(
        {{"id", s.id}, {"usd_per_instruction", s.usd_per_instruction}});
  }
  json doc{
      {"sites", std::move(sites)},
      {"root", plan_node_to_json(sc.plan.root)},
      {"client_site", sc.plan.client_site},
  };
  if (sc.default_link_price) {
    doc["default_link_price"] = *sc.default_link_price;
  }
  if (!sc.link_overrides.empty()) {
    json links = json::object();
    for (const auto& [pair, price] : sc.link_overrides) {
      links[pair.first][pair.second] = price;
    }
    doc["links"] = std::move(links);
  }
  return doc;
}

TrendParams trends_from_json(const json& doc) {
  require_object(doc, "trends document");
  TrendParams trends;
  for (const auto& item : doc.items()) {
    const auto category = price_category_from_string(item.key());
    require(category.has_value(),
            "unknown price category in trends: " + item.key());
    const json& v = item.value();
    if (v.is_string()) {
      require(v.get<std::string>() == "constant",
              "trend value must be a halving time or \"constant\"");
      continue;
    }
    require(v.is_number(), "trend value must be a number or \"constant\"");
    const double months = v.get<double>();
    require(std::isfinite(months) && months > 0.0,
            "halving time must be positive");
    trends.halving_months[*category] = months;
  }
  return trends;
}

json trends_to_json(const TrendParams& trends) {
  json doc = json::object();
  for (const auto& [category, months] : trends.halving_months) {
    doc[std::string(to_string(category))] = months;
  }
  return doc;
}

BaselineDocument baseline_from_json(const json& doc) {
  require_object(doc, "baseline document");
  reject_unknown_fields(doc,
                        {"cpu_price_usd", "cpu_clock_hz", "disk_price_usd",
                         "disk_capacity", "disk_accesses_per_sec",
                         "disk_transfer_bytes_per_sec",
                         "wan_price_usd_per_month", "wan_bits_per_sec",
                         "derivation"},
                        "baseline");
  BaselineDocument out;
  HardwareBaseline& hw = out.baseline;
  hw = reference_baseline();
  hw.cpu_price_usd =
      quantity_field(doc, "cpu_price_usd", QuantityKind::Money,
                     hw.cpu_price_usd);
  hw.cpu_clock_hz = number_field(doc, "cpu_clock_hz", hw.cpu_clock_hz);
  hw.disk_price_usd = quantity_field(doc, "disk_price_usd",
                                     QuantityKind::Money, hw.disk_price_usd);
  hw.disk_capacity = ByteCount(quantity_field(
      doc, "disk_capacity", QuantityKind::Bytes, hw.disk_capacity.bytes()));
  hw.disk_accesses_per_sec =
      number_field(doc, "disk_accesses_per_sec", hw.disk_accesses_per_sec);
  hw.disk_transfer_bytes_per_sec = quantity_field(
      doc, "disk_transfer_bytes_per_sec", QuantityKind::Bytes,
      hw.disk_transfer_bytes_per_sec);
  hw.wan_price_usd_per_month =
      quantity_field(doc, "wan_price_usd_per_month", QuantityKind::Money,
                     hw.wan_price_usd_per_month);
  hw.wan_bits_per_sec =
      number_field(doc, "wan_bits_per_sec", hw.wan_bits_per_sec);
  if (doc.contains("derivation")) {
    const json& d = doc.at("derivation");
    require_object(d, "derivation");
    reject_unknown_fields(d,
                          {"amortization_months", "link_utilization",
                           "disk_duty_cycle",
                           "effective_instructions_per_second"},
                          "derivation");
    DerivationParams& p = out.params;
    p.amortization_months =
        number_field(d, "amortization_months", p.amortization_months);
    p.link_utilization =
        number_field(d, "link_utilization", p.link_utilization);
    p.disk_duty_cycle = number_field(d, "disk_duty_cycle", p.disk_duty_cycle);
    p.effective_instructions_per_second =
        quantity_field(d, "effective_instructions_per_second",
                       QuantityKind::Instructions,
                       p.effective_instructions_per_second);
  }
  return out;
}

json baseline_to_json(const BaselineDocument& doc) {
  return json{
      {"cpu_price_usd", doc.baseline.cpu_price_usd},
      {"cpu_clock_hz", doc.baseline.cpu_clock_hz},
      {"disk_price_usd", doc.baseline.disk_price_usd},
      {"disk_capacity", doc.baseline.disk_capacity.bytes()},
      {"disk_accesses_per_sec", doc.baseline.disk_accesses_per_sec},
      {"disk_transfer_bytes_per_sec",
       doc.baseline.disk_transfer_bytes_per_sec},
      {"wan_price_usd_per_month", doc.baseline.wan_price_usd_per_month},
      {"wan_bits_per_sec", doc.baseline.wan_bits_per_sec},
      {"derivation",
       {{"amortization_months", doc.params.amortization_months},
        {"link_utilization", doc.params.link_utilization},
        {"disk_duty_cycle", doc.params.disk_duty_cycle},
        {"effective_instructions_per_second",
         doc.params.effective_instructions_per_second}}},
  };
}

namespace {

json categories_to_json(const CostCategories& c) {
  json obj = json::object();
  for (const auto& [name, field] : kCostCategoryFields) {
    obj[std::string(name)] = c.*field;
  }
  return obj;
}

}  // namespace

json breakdown_to_json(const CostBreakdown& b) {
  return json{
      {"cost", categories_to_json(b.cost)},
      {"total", b.total},
      {"fraction", categories_to_json(b.fraction)},
  };
}

json mobility_to_json(const MobilityReport& m) {
  return json{
      {"intensity", m.intensity},
      {"breakeven_threshold", m.breakeven_threshold},
      {"attractive_threshold", m.attractive_threshold},
      {"class", std::string(to_string(m.mobility))},
      {"cluster_advisory", m.cluster_advisory},
  };
}

json placement_result_to_json(const PlacementResult& r) {
  json per_node = json::array();
  for (const NodeCost& nc : r.per_node) {
    per_node.push_back({
        {"node", nc.label},
        {"site", nc.site_id},
        {"is_source", nc.is_source},
        {"compute_cost", nc.compute_cost},
        {"inbound_transfer_cost", nc.inbound_transfer_cost},
        {"output_bytes", nc.output_bytes.bytes()},
    });
  }
  return json{
      {"assignment", json(r.assignment)},
      {"total_cost", r.total_cost},
      {"delivery_cost", r.delivery_cost},
      {"per_node", std::move(per_node)},
  };
}

json case_report_to_json(const CaseReport& r) {
  json assertions = json::array();
  for (const AssertionResult& ar : r.assertions) {
    json obj{
        {"metric", ar.assertion.metric},
        {"mode", std::string(to_string(ar.assertion.mode))},
        {"canonical_only", ar.assertion.canonical_only},
        {"executed", ar.executed},
        {"passed", ar.passed},
        {"detail", ar.detail},
    };
    if (ar.assertion.mode == ToleranceMode::Classification) {
      obj["expected_label"] = ar.assertion.expected_label;
      if (ar.executed) obj["actual_label"] = ar.actual_label;
    } else {
      obj["expected_value"] = ar.assertion.expected_value;
      if (ar.executed) obj["actual_value"] = ar.actual_value;
    }
    assertions.push_back(std::move(obj));
  }
  return json{
      {"case", r.case_name},     {"executed", r.executed},
      {"passed", r.passed},      {"skipped", r.skipped},
      {"all_passed", r.all_passed}, {"assertions", std::move(assertions)},
  };
}

json corpus_report_to_json(const CorpusReport& r) {
  json cases = json::array();
  for (const CaseReport& cr : r.cases) {
    cases.push_back(case_report_to_json(cr));
  }
  return json{
      {"cases", std::move(cases)},
      {"cases_total", r.cases_total},
      {"cases_passed", r.cases_passed},
      {"assertions_executed", r.assertions_executed},
      {"assertions_passed", r.assertions_passed},
      {"assertions_skipped", r.assertions_skipped},
      {"all_passed", r.all_passed},
  };
}

}  // namespace gridecon

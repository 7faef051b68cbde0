#include "gridecon/workload.hpp"

#include <cmath>

#include "gridecon/errors.hpp"

namespace gridecon {

std::string_view to_string(NetworkClass c) {
  return c == NetworkClass::Wan ? "WAN" : "LAN";
}

std::string_view to_string(MobilityClass c) {
  switch (c) {
    case MobilityClass::StayHome: return "stay_home";
    case MobilityClass::BreakEven: return "break_even";
    case MobilityClass::Mobile: return "mobile";
  }
  throw ValidationError("unknown mobility class");
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Demand in instructions for one job, using the schedule's effective rate
// to convert cpu time.
double instructions_of(const ComputeDemand& d, const CostSchedule& s) {
  if (const auto* instr = std::get_if<InstructionCount>(&d)) {
    return instr->count();
  }
  return std::get<CpuTime>(d).hours() * s.effective_instructions_per_cpu_hour;
}

}  // namespace

void validate_task(const TaskProfile& task) {
  require(!task.name.empty(), "task name must be non-empty");
  require(finite_nonneg(task.db_accesses),
          "db_accesses must be finite and non-negative");
  require(finite_nonneg(task.energy_wh),
          "energy_wh must be finite and non-negative");
  require(std::isfinite(task.multiplicity) && task.multiplicity > 0.0,
          "multiplicity must be finite and positive");
}

CostBreakdown evaluate(const TaskProfile& task, const CostSchedule& s) {
  validate_task(task);
  validate_schedule(s);

  const double byte_price = task.network_class == NetworkClass::Wan
                                ? s.usd_per_wan_byte
                                : s.usd_per_lan_byte;
  const double network_bytes = task.bytes_in.bytes() + task.bytes_out.bytes();

  CostBreakdown b;
  b.cost.network = network_bytes * byte_price;
  b.cost.compute = instructions_of(task.compute, s) * s.usd_per_instruction;
  b.cost.db_access = task.db_accesses * s.usd_per_db_access;
  b.cost.storage = task.storage_bytes.bytes() * s.usd_per_disk_byte;
  b.cost.disk_bw = task.disk_bw_bytes.bytes() * s.usd_per_disk_bw_byte;
  b.cost.energy = task.energy_wh * s.usd_per_watt_hour;

  for (const auto& [name, field] : kCostCategoryFields) {
    b.cost.*field *= task.multiplicity;
    b.total += b.cost.*field;
  }
  if (b.total > 0.0) {
    for (const auto& [name, field] : kCostCategoryFields) {
      b.fraction.*field = b.cost.*field / b.total;
    }
  }
  return b;
}

double intensity(const TaskProfile& task, const CostSchedule& s) {
  validate_task(task);
  validate_schedule(s);
  const double network_bytes = task.bytes_in.bytes() + task.bytes_out.bytes();
  if (network_bytes <= 0.0) {
    throw ValidationError(
        "intensity is undefined for a task that moves no bytes");
  }
  return instructions_of(task.compute, s) / network_bytes;
}

double breakeven_intensity(const CostSchedule& s) {
  validate_schedule(s);
  return s.usd_per_wan_byte / s.usd_per_instruction;
}

MobilityReport classify(const TaskProfile& task, const CostSchedule& s) {
  MobilityReport r;
  r.intensity = intensity(task, s);
  r.breakeven_threshold = breakeven_intensity(s);
  r.attractive_threshold = 3.0 * r.breakeven_threshold;
  if (r.intensity < r.breakeven_threshold) {
    r.mobility = MobilityClass::StayHome;
  } else if (r.intensity < r.attractive_threshold) {
    r.mobility = MobilityClass::BreakEven;
  } else {
    r.mobility = MobilityClass::Mobile;
  }
  r.cluster_advisory = task.cluster_bound;
  return r;
}

bool ad_fundable(double cost_per_interaction_usd,
                 double revenue_per_impression_usd) {
  require(std::isfinite(cost_per_interaction_usd) &&
              cost_per_interaction_usd >= 0.0,
          "cost per interaction must be finite and non-negative");
  require(std::isfinite(revenue_per_impression_usd) &&
              revenue_per_impression_usd >= 0.0,
          "revenue per impression must be finite and non-negative");
  return cost_per_interaction_usd <= revenue_per_impression_usd;
}

double staffing_estimate(double storage_tb, double servers,
                         double network_gbps, const StaffingModel& model) {
  require(finite_nonneg(storage_tb), "storage_tb must be non-negative");
  require(finite_nonneg(servers), "servers must be non-negative");
  require(finite_nonneg(network_gbps), "network_gbps must be non-negative");
  if (model.variant == StaffingModel::Variant::Megaservice) {
    require(model.servers_per_admin > 0.0,
            "servers_per_admin must be positive");
    return servers / model.servers_per_admin;
  }
  return storage_tb * model.admins_per_tb +
         (servers / 100.0) * model.admins_per_100_servers +
         network_gbps * model.admins_per_gbps;
}

}  // namespace gridecon

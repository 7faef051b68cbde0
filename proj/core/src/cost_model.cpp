#include "gridecon/cost_model.hpp"

#include <cmath>
#include <string>

#include "gridecon/errors.hpp"

namespace gridecon {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0)
    throw ValidationError(std::string(what) + " must be positive");
}

void require_fraction(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0 || v > 1.0)
    throw ValidationError(std::string(what) + " must be in (0, 1]");
}

double price_of(const CostSchedule& s, PriceCategory c) {
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

double& price_of(CostSchedule& s, PriceCategory c) {
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

}  // namespace

std::string_view to_string(PriceCategory category) {
  switch (category) {
    case PriceCategory::Wan: return "wan";
    case PriceCategory::Lan: return "lan";
    case PriceCategory::Instruction: return "instruction";
    case PriceCategory::CpuHour: return "cpu_hour";
    case PriceCategory::Disk: return "disk";
    case PriceCategory::DbAccess: return "db_access";
    case PriceCategory::DiskBw: return "disk_bw";
    case PriceCategory::Energy: return "energy";
  }
  return "?";
}

std::optional<PriceCategory> price_category_from_string(
    std::string_view name) {
  for (PriceCategory c : kAllPriceCategories)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

void validate_schedule(const CostSchedule& s) {
  for (PriceCategory c : kAllPriceCategories) {
    const double p = price_of(s, c);
    if (!std::isfinite(p) || p < 0.0)
      throw ValidationError("schedule price for " +
                            std::string(to_string(c)) +
                            " must be a non-negative finite number");
  }
  if (s.usd_per_lan_byte > s.usd_per_wan_byte)
    throw ValidationError("LAN bytes must not be priced above WAN bytes");
  if (!std::isfinite(s.effective_instructions_per_cpu_hour) ||
      s.effective_instructions_per_cpu_hour <= 0.0)
    throw ValidationError(
        "effective_instructions_per_cpu_hour must be positive");
}

CostSchedule canonical_schedule() {
  CostSchedule s;
  s.usd_per_wan_byte = 1e-9;        // 1 GB per dollar
  s.usd_per_lan_byte = 1e-13;       // WAN / 10,000
  s.usd_per_instruction = 1e-13;    // 10 T instructions per dollar
  s.usd_per_cpu_hour = 0.125;       // 8 cpu-hours per dollar
  s.usd_per_disk_byte = 1e-9;       // 1 GB of disk per dollar
  s.usd_per_db_access = 1e-7;       // 10 M accesses per dollar
  s.usd_per_disk_bw_byte = 1e-13;   // 10 TB of disk bandwidth per dollar
  s.usd_per_watt_hour = 1e-4;
  s.effective_instructions_per_cpu_hour = 1.25e12;  // (10e12/$) / (8 h/$)
  return s;
}

HardwareBaseline reference_baseline() {
  HardwareBaseline hw;
  hw.cpu_price_usd = 2000.0;
  hw.cpu_clock_hz = 2e9;
  hw.disk_price_usd = 200.0;
  hw.disk_capacity = ByteCount(200e9);
  hw.disk_accesses_per_sec = 100.0;
  hw.disk_transfer_bytes_per_sec = 50e6;
  hw.wan_price_usd_per_month = 100.0;
  hw.wan_bits_per_sec = 1e6;
  return hw;
}

CostSchedule derive_schedule(const HardwareBaseline& hw,
                             const DerivationParams& params) {
  require_positive(hw.cpu_price_usd, "cpu price");
  require_positive(hw.cpu_clock_hz, "cpu clock");
  require_positive(hw.disk_price_usd, "disk price");
  require_positive(hw.disk_capacity.bytes(), "disk capacity");
  require_positive(hw.disk_accesses_per_sec, "disk access rate");
  require_positive(hw.disk_transfer_bytes_per_sec, "disk transfer rate");
  require_positive(hw.wan_price_usd_per_month, "wan price");
  require_positive(hw.wan_bits_per_sec, "wan bit rate");
  require_positive(params.amortization_months, "amortization period");
  require_fraction(params.link_utilization, "link utilization");
  require_fraction(params.disk_duty_cycle, "disk duty cycle");
  require_positive(params.effective_instructions_per_second,
                   "effective instruction rate");

  const double amortized_seconds =
      params.amortization_months * kSecondsPerMonth;
  const double amortized_hours = amortized_seconds / 3600.0;

  CostSchedule s;
  s.usd_per_wan_byte =
      hw.wan_price_usd_per_month /
      (hw.wan_bits_per_sec / 8.0 * kSecondsPerMonth * params.link_utilization);
  s.usd_per_lan_byte = s.usd_per_wan_byte / 10000.0;
  s.usd_per_cpu_hour = hw.cpu_price_usd / amortized_hours;
  s.usd_per_instruction =
      s.usd_per_cpu_hour / (params.effective_instructions_per_second * 3600.0);
  s.usd_per_disk_byte = hw.disk_price_usd / hw.disk_capacity.bytes();
  s.usd_per_db_access =
      hw.disk_price_usd / (hw.disk_accesses_per_sec * amortized_seconds *
                           params.disk_duty_cycle);
  s.usd_per_disk_bw_byte =
      hw.disk_price_usd / (hw.disk_transfer_bytes_per_sec * amortized_seconds *
                           params.disk_duty_cycle);
  s.usd_per_watt_hour = canonical_schedule().usd_per_watt_hour;
  s.effective_instructions_per_cpu_hour =
      params.effective_instructions_per_second * 3600.0;
  return s;
}

CostSchedule beowulf_schedule(const CostSchedule& base) {
  CostSchedule s = base;
  s.usd_per_wan_byte = base.usd_per_lan_byte;
  return s;
}

TrendParams TrendParams::moores_law_default() {
  TrendParams t;
  t.halving_months[PriceCategory::Instruction] = 18.0;
  t.halving_months[PriceCategory::CpuHour] = 18.0;
  return t;
}

std::optional<double> TrendParams::halving_for(PriceCategory category) const {
  const auto it = halving_months.find(category);
  if (it == halving_months.end()) return std::nullopt;
  return it->second;
}

CostSchedule project_schedule(const CostSchedule& s, double t_months,
                              const TrendParams& trends) {
  if (!std::isfinite(t_months) || t_months < 0.0)
    throw ValidationError("projection time must be non-negative");
  for (const auto& [category, halving] : trends.halving_months)
    require_positive(halving, "halving time");

  CostSchedule out = s;
  for (PriceCategory c : kAllPriceCategories) {
    if (const auto halving = trends.halving_for(c))
      price_of(out, c) = price_of(s, c) * std::exp2(-t_months / *halving);
  }
  return out;
}

std::optional<double> breakeven_crossover(const CostSchedule& s,
                                          const TrendParams& trends,
                                          double intensity) {
  if (!std::isfinite(intensity) || intensity <= 0.0)
    throw ValidationError("target intensity must be positive");
  if (s.usd_per_instruction <= 0.0)
    throw ValidationError("instruction price must be positive");
  for (const auto& [category, halving] : trends.halving_months)
    require_positive(halving, "halving time");

  const double threshold_now = s.usd_per_wan_byte / s.usd_per_instruction;
  if (threshold_now <= intensity) return 0.0;

  // threshold(t) = threshold_now * 2^(-t/h_wan + t/h_instr); solve for the
  // t where it reaches the target. Decay exponent per month:
  const auto wan_halving = trends.halving_for(PriceCategory::Wan);
  const auto instr_halving = trends.halving_for(PriceCategory::Instruction);
  const double wan_rate = wan_halving ? 1.0 / *wan_halving : 0.0;
  const double instr_rate = instr_halving ? 1.0 / *instr_halving : 0.0;
  const double decay = wan_rate - instr_rate;
  if (decay <= 0.0) return std::nullopt;  // threshold never falls

  return std::log2(threshold_now / intensity) / decay;
}

}  // namespace gridecon

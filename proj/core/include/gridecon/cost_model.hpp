#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "gridecon/quantities.hpp"

namespace gridecon {

// Unit prices in dollars per canonical unit. A schedule is an immutable
// value; every operation below returns a new one.
struct CostSchedule {
  double usd_per_wan_byte = 0.0;
  double usd_per_lan_byte = 0.0;
  double usd_per_instruction = 0.0;
  double usd_per_cpu_hour = 0.0;
  double usd_per_disk_byte = 0.0;     // capacity, capital cost
  double usd_per_db_access = 0.0;
  double usd_per_disk_bw_byte = 0.0;  // per byte moved to or from disk
  double usd_per_watt_hour = 0.0;
  // Reconciliation rate between the per-instruction and per-cpu-hour
  // pricings; used to express cpu-hour demands in instructions.
  double effective_instructions_per_cpu_hour = 0.0;

  friend bool operator==(const CostSchedule&, const CostSchedule&) = default;
};

// Prices >= 0, LAN no more expensive than WAN, effective rate > 0.
void validate_schedule(const CostSchedule& s);

enum class PriceCategory {
  Wan,
  Lan,
  Instruction,
  CpuHour,
  Disk,
  DbAccess,
  DiskBw,
  Energy,
};

inline constexpr std::array<PriceCategory, 8> kAllPriceCategories = {
    PriceCategory::Wan,      PriceCategory::Lan,    PriceCategory::Instruction,
    PriceCategory::CpuHour,  PriceCategory::Disk,   PriceCategory::DbAccess,
    PriceCategory::DiskBw,   PriceCategory::Energy,
};

std::string_view to_string(PriceCategory category);
std::optional<PriceCategory> price_category_from_string(std::string_view name);

// Commodity hardware reference configuration.
struct HardwareBaseline {
  double cpu_price_usd = 0.0;
  double cpu_clock_hz = 0.0;  // documentation only; pricing uses the
                              // effective instruction rate below
  double disk_price_usd = 0.0;
  ByteCount disk_capacity;
  double disk_accesses_per_sec = 0.0;
  double disk_transfer_bytes_per_sec = 0.0;
  double wan_price_usd_per_month = 0.0;
  double wan_bits_per_sec = 0.0;
};

// The 2003 commodity baseline: $2,000 for a 2 GHz cpu cabinet, $200 for a
// 200 GB disk (100 accesses/s, 50 MB/s transfer), $100/month for 1 Mbps WAN.
HardwareBaseline reference_baseline();

struct DerivationParams {
  double amortization_months = 36.0;
  double link_utilization = 1.0 / 3.0;   // links run well below capacity
  double disk_duty_cycle = 0.2;
  // Sustained rate, not clock speed: 1.25e12 instructions per cpu-hour.
  double effective_instructions_per_second = 3.47e8;
};

// Halving time in months per price category; categories without an entry
// hold their price constant.
struct TrendParams {
  std::map<PriceCategory, double> halving_months;

  // 18-month halving on both compute prices, everything else constant.
  static TrendParams moores_law_default();

  std::optional<double> halving_for(PriceCategory category) const;
};

// Billing month used for amortization arithmetic.
inline constexpr double kSecondsPerMonth = 2.592e6;  // 30 days

// The canonical 2003 price schedule: $1 buys 1 GB WAN traffic, 10 T
// instructions, 8 cpu-hours, 1 GB disk, 10 M database accesses, 10 TB of
// disk bandwidth; LAN bytes are 10,000x cheaper than WAN.
CostSchedule canonical_schedule();

// Prices a schedule from first principles: hardware cost spread over the
// amortization window at the given utilization factors. Energy is copied
// from the canonical schedule (not derivable from the baseline).
CostSchedule derive_schedule(const HardwareBaseline& hw,
                             const DerivationParams& params = {});

// Cluster networking economics: the WAN price collapses to the LAN price,
// everything else is untouched.
CostSchedule beowulf_schedule(const CostSchedule& base);

// Rolls the schedule t_months forward, scaling each category by
// 2^(-t/halving_time). The effective instruction rate is not a price and
// never moves.
CostSchedule project_schedule(const CostSchedule& s, double t_months,
                              const TrendParams& trends);

// Smallest t >= 0 at which the projected break-even intensity
// (wan price / instruction price) falls to `intensity` instructions/byte,
// solved in closed form from the two exponentials. nullopt = never: the
// threshold is non-decreasing and already above the target.
std::optional<double> breakeven_crossover(const CostSchedule& s,
                                          const TrendParams& trends,
                                          double intensity);

}  // namespace gridecon

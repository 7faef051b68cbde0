#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "gridecon/cost_model.hpp"
#include "gridecon/quantities.hpp"

namespace gridecon {

// Compute demand is stated either directly in instructions or as cpu time;
// the schedule's effective rate converts between them.
using ComputeDemand = std::variant<InstructionCount, CpuTime>;

enum class NetworkClass { Wan, Lan };

std::string_view to_string(NetworkClass c);

// A named workload in the four-demand model (network, computation, database
// access, storage) plus disk bandwidth and energy, with a job multiplicity.
struct TaskProfile {
  std::string name;
  ByteCount bytes_in;
  ByteCount bytes_out;
  ComputeDemand compute = InstructionCount(0.0);
  double db_accesses = 0.0;
  ByteCount storage_bytes;
  ByteCount disk_bw_bytes;
  double energy_wh = 0.0;
  double multiplicity = 1.0;
  NetworkClass network_class = NetworkClass::Wan;
  // Needs high bisection bandwidth: only viable on a tightly coupled cluster.
  bool cluster_bound = false;
};

void validate_task(const TaskProfile& task);

struct CostCategories {
  double network = 0.0;
  double compute = 0.0;
  double db_access = 0.0;
  double storage = 0.0;
  double disk_bw = 0.0;
  double energy = 0.0;
};

// Fixed display/report order for the six categories.
inline constexpr std::array<std::pair<std::string_view,
                                      double CostCategories::*>, 6>
    kCostCategoryFields = {{
        {"network", &CostCategories::network},
        {"compute", &CostCategories::compute},
        {"db_access", &CostCategories::db_access},
        {"storage", &CostCategories::storage},
        {"disk_bw", &CostCategories::disk_bw},
        {"energy", &CostCategories::energy},
    }};

// Per-category dollar costs for one evaluated profile. Fractions are all
// zero when the total is zero and otherwise sum to 1.
struct CostBreakdown {
  CostCategories cost;
  double total = 0.0;
  CostCategories fraction;
};

enum class MobilityClass { StayHome, BreakEven, Mobile };

std::string_view to_string(MobilityClass c);

struct MobilityReport {
  double intensity = 0.0;            // instructions per network byte
  double breakeven_threshold = 0.0;  // network and compute cost parity
  double attractive_threshold = 0.0; // 3x break-even
  MobilityClass mobility = MobilityClass::StayHome;
  bool cluster_advisory = false;
};

// Prices every demand linearly against the schedule and scales by
// multiplicity. A zero-demand task costs zero.
CostBreakdown evaluate(const TaskProfile& task, const CostSchedule& s);

// Instructions per network byte for a single job (multiplicity cancels).
// Throws ValidationError when the task moves no bytes; callers that want a
// verdict anyway should treat such tasks as infinitely mobile.
double intensity(const TaskProfile& task, const CostSchedule& s);

// The intensity at which WAN cost equals compute cost: wan price divided by
// instruction price. 10,000 instructions/byte on the canonical schedule.
double breakeven_intensity(const CostSchedule& s);

// StayHome below break-even, Mobile at 3x break-even or above (a 3:1 cost
// benefit), BreakEven between. A cluster-bound task keeps its intensity
// class but carries an advisory: it cannot actually leave a cluster.
MobilityReport classify(const TaskProfile& task, const CostSchedule& s);

// Can advertising pay for one interaction? True iff the cost does not
// exceed the revenue (default: $1 CPM = one milli-dollar per impression).
bool ad_fundable(double cost_per_interaction_usd,
                 double revenue_per_impression_usd = 1e-3);

// Operations staffing ratios. Traditional shops need an administrator per
// terabyte, per 100 servers, and per Gbps; megaservices run hundreds of
// servers per administrator.
struct StaffingModel {
  enum class Variant { Traditional, Megaservice };
  Variant variant = Variant::Traditional;
  double admins_per_tb = 1.0;
  double admins_per_100_servers = 1.0;
  double admins_per_gbps = 1.0;
  double servers_per_admin = 400.0;

  static StaffingModel traditional() { return {}; }
  static StaffingModel megaservice() {
    StaffingModel m;
    m.variant = Variant::Megaservice;
    return m;
  }
};

// Headcount as a real; report with a ceiling when hiring.
double staffing_estimate(double storage_tb, double servers,
                         double network_gbps, const StaffingModel& model);

}  // namespace gridecon

#include <cmath>
#include <string>

#include "doctest.h"
#include "gridecon/cost_model.hpp"
#include "gridecon/errors.hpp"
#include "gridecon/workload.hpp"

using namespace gridecon;

namespace {

TaskProfile task(const std::string& name) {
  TaskProfile t;
  t.name = name;
  return t;
}

double fraction_sum(const CostBreakdown& b) {
  double sum = 0.0;
  for (const auto& [name, field] : kCostCategoryFields) {
    sum += b.fraction.*field;
  }
  return sum;
}

}  // namespace

TEST_CASE("enum labels") {
  CHECK(to_string(NetworkClass::Wan) == "WAN");
  CHECK(to_string(NetworkClass::Lan) == "LAN");
  CHECK(to_string(MobilityClass::StayHome) == "stay_home");
  CHECK(to_string(MobilityClass::BreakEven) == "break_even");
  CHECK(to_string(MobilityClass::Mobile) == "mobile");
}

TEST_CASE("validate_task") {
  TaskProfile t = task("ok");
  CHECK_NOTHROW(validate_task(t));
  SUBCASE("empty name") {
    t.name.clear();
    CHECK_THROWS_AS(validate_task(t), ValidationError);
  }
  SUBCASE("negative db accesses") {
    t.db_accesses = -1.0;
    CHECK_THROWS_AS(validate_task(t), ValidationError);
  }
  SUBCASE("negative energy") {
    t.energy_wh = -0.5;
    CHECK_THROWS_AS(validate_task(t), ValidationError);
  }
  SUBCASE("zero multiplicity") {
    t.multiplicity = 0.0;
    CHECK_THROWS_AS(validate_task(t), ValidationError);
  }
  SUBCASE("non-finite multiplicity") {
    t.multiplicity = std::nan("");
    CHECK_THROWS_AS(validate_task(t), ValidationError);
  }
}

TEST_CASE("a zero-demand task costs nothing") {
  const CostBreakdown b = evaluate(task("idle"), canonical_schedule());
  CHECK(b.total == 0.0);
  CHECK(b.cost.network == 0.0);
  CHECK(b.cost.compute == 0.0);
  CHECK(fraction_sum(b) == 0.0);
}

TEST_CASE("a 100 megabyte transfer with light processing costs a dime") {
  TaskProfile t = task("ftp");
  t.bytes_out = ByteCount(1e8);
  t.compute = InstructionCount(1e10);
  const CostBreakdown b = evaluate(t, canonical_schedule());
  CHECK(b.cost.network == 0.10);
  CHECK(b.cost.compute == 0.001);
  CHECK(b.total == 0.101);
  CHECK(b.fraction.network >= 0.99);
  CHECK(fraction_sum(b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every category is priced and scaled by multiplicity") {
  TaskProfile t = task("full");
  t.bytes_in = ByteCount(1e6);
  t.bytes_out = ByteCount(2e6);
  t.compute = InstructionCount(1e12);
  t.db_accesses = 1e4;
  t.storage_bytes = ByteCount(5e9);
  t.disk_bw_bytes = ByteCount(1e12);
  t.energy_wh = 50.0;
  t.multiplicity = 10.0;
  const CostBreakdown b = evaluate(t, canonical_schedule());
  CHECK(b.cost.network == doctest::Approx(3e6 * 1e-9 * 10.0).epsilon(1e-12));
  CHECK(b.cost.compute == doctest::Approx(1e12 * 1e-13 * 10.0).epsilon(1e-12));
  CHECK(b.cost.db_access == doctest::Approx(1e4 * 1e-7 * 10.0).epsilon(1e-12));
  CHECK(b.cost.storage == doctest::Approx(5e9 * 1e-9 * 10.0).epsilon(1e-12));
  CHECK(b.cost.disk_bw == doctest::Approx(1e12 * 1e-13 * 10.0).epsilon(1e-12));
  CHECK(b.cost.energy == doctest::Approx(50.0 * 1e-4 * 10.0).epsilon(1e-12));
  const double expected_total = b.cost.network + b.cost.compute +
                                b.cost.db_access + b.cost.storage +
                                b.cost.disk_bw + b.cost.energy;
  CHECK(b.total == doctest::Approx(expected_total).epsilon(1e-12));
  CHECK(fraction_sum(b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LAN tasks pay the cluster byte price") {
  TaskProfile t = task("local");
  t.bytes_in = ByteCount(1e9);
  t.network_class = NetworkClass::Lan;
  const CostBreakdown b = evaluate(t, canonical_schedule());
  CHECK(b.cost.network == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("cpu-time demand converts through the effective rate") {
  TaskProfile t = task("render");
  t.bytes_in = ByteCount(1.0);
  t.compute = CpuTime(12.0);
  const CostBreakdown b = evaluate(t, canonical_schedule());
  // 12 cpu-hours at 1.25e12 instructions each, priced per instruction,
  // must equal the direct cpu-hour price: 12 x $0.125.
  CHECK(b.cost.compute == 1.5);

  // Halving the effective rate halves the instruction count.
  CostSchedule slow = canonical_schedule();
  slow.effective_instructions_per_cpu_hour = 0.625e12;
  CHECK(evaluate(t, slow).cost.compute == 0.75);
}

TEST_CASE("intensity is instructions per network byte") {
  const CostSchedule s = canonical_schedule();
  TaskProfile t = task("probe");
  t.bytes_in = ByteCount(1e8);
  t.bytes_out = ByteCount(2e8);
  t.compute = InstructionCount(3e12);
  CHECK(intensity(t, s) == 1e4);

  SUBCASE("multiplicity cancels") {
    t.multiplicity = 1e6;
    CHECK(intensity(t, s) == 1e4);
  }
  SUBCASE("no bytes, no intensity") {
    t.bytes_in = ByteCount(0.0);
    t.bytes_out = ByteCount(0.0);
    CHECK_THROWS_AS(intensity(t, s), ValidationError);
  }
}

TEST_CASE("break-even threshold on the canonical schedule") {
  const CostSchedule s = canonical_schedule();
  CHECK(breakeven_intensity(s) == 10000.0);
  CHECK(breakeven_intensity(beowulf_schedule(s)) == 1.0);
}

TEST_CASE("classification bands and their edges") {
  const CostSchedule s = canonical_schedule();
  TaskProfile t = task("band");
  t.bytes_in = ByteCount(1.0);

  const auto klass = [&](double instructions) {
    t.compute = InstructionCount(instructions);
    return classify(t, s).mobility;
  };
  CHECK(klass(0.0) == MobilityClass::StayHome);
  CHECK(klass(9999.0) == MobilityClass::StayHome);
  // The band edges belong to the upper class.
  CHECK(klass(10000.0) == MobilityClass::BreakEven);
  CHECK(klass(29999.0) == MobilityClass::BreakEven);
  CHECK(klass(30000.0) == MobilityClass::Mobile);
  CHECK(klass(1e9) == MobilityClass::Mobile);

  t.compute = InstructionCount(10000.0);
  const MobilityReport r = classify(t, s);
  CHECK(r.intensity == 10000.0);
  CHECK(r.breakeven_threshold == 10000.0);
  CHECK(r.attractive_threshold == 30000.0);
  CHECK(!r.cluster_advisory);
}

TEST_CASE("cluster-bound tasks keep their class but carry the advisory") {
  TaskProfile t = task("cluster");
  t.bytes_in = ByteCount(1.0);
  t.compute = InstructionCount(1e8);
  t.cluster_bound = true;
  const MobilityReport r = classify(t, canonical_schedule());
  CHECK(r.mobility == MobilityClass::Mobile);
  CHECK(r.cluster_advisory);
}

TEST_CASE("ad fundability against CPM revenue") {
  CHECK(ad_fundable(1e-5));
  CHECK(ad_fundable(1e-3));       // breaking even still funds
  CHECK(!ad_fundable(1.001e-3));
  CHECK(ad_fundable(0.05, 0.10));
  CHECK(!ad_fundable(0.25, 0.10));
  CHECK_THROWS_AS(ad_fundable(-1.0), ValidationError);
  CHECK_THROWS_AS(ad_fundable(1.0, -1.0), ValidationError);
}

TEST_CASE("staffing estimates") {
  SUBCASE("traditional ratios add up") {
    CHECK(staffing_estimate(2000.0, 10000.0, 0.0,
                            StaffingModel::traditional()) == 2100.0);
    CHECK(staffing_estimate(10.0, 200.0, 3.0, StaffingModel::traditional()) ==
          15.0);
  }
  SUBCASE("megaservice ratio divides") {
    CHECK(staffing_estimate(2000.0, 10000.0, 0.0,
                            StaffingModel::megaservice()) == 25.0);
    StaffingModel m = StaffingModel::megaservice();
    m.servers_per_admin = 500.0;
    CHECK(staffing_estimate(0.0, 10000.0, 0.0, m) == 20.0);
  }
  SUBCASE("bad inputs") {
    CHECK_THROWS_AS(
        staffing_estimate(-1.0, 0.0, 0.0, StaffingModel::traditional()),
        ValidationError);
    StaffingModel m = StaffingModel::megaservice();
    m.servers_per_admin = 0.0;
    CHECK_THROWS_AS(staffing_estimate(0.0, 100.0, 0.0, m), ValidationError);
  }
}

#include <cmath>
#include <optional>

#include "doctest.h"
#include "gridecon/cost_model.hpp"
#include "gridecon/errors.hpp"

using namespace gridecon;

TEST_CASE("canonical schedule holds the advertised prices") {
  const CostSchedule s = canonical_schedule();
  CHECK(s.usd_per_wan_byte == 1e-9);
  CHECK(s.usd_per_lan_byte == 1e-13);
  CHECK(s.usd_per_instruction == 1e-13);
  CHECK(s.usd_per_cpu_hour == 0.125);
  CHECK(s.usd_per_disk_byte == 1e-9);
  CHECK(s.usd_per_db_access == 1e-7);
  CHECK(s.usd_per_disk_bw_byte == 1e-13);
  CHECK(s.usd_per_watt_hour == 1e-4);
  CHECK(s.effective_instructions_per_cpu_hour == 1.25e12);
  CHECK_NOTHROW(validate_schedule(s));
}

TEST_CASE("one dollar buys exactly the advertised amounts") {
  const CostSchedule s = canonical_schedule();
  // price times the per-dollar amount is exactly one dollar, in doubles.
  CHECK(s.usd_per_wan_byte * 1e9 == 1.0);        // 1 GB of WAN traffic
  CHECK(s.usd_per_instruction * 1e13 == 1.0);    // 10 T instructions
  CHECK(s.usd_per_cpu_hour * 8.0 == 1.0);        // 8 cpu-hours
  CHECK(s.usd_per_disk_byte * 1e9 == 1.0);       // 1 GB of disk
  CHECK(s.usd_per_db_access * 1e7 == 1.0);       // 10 M database accesses
  CHECK(s.usd_per_disk_bw_byte * 1e13 == 1.0);   // 10 TB of disk bandwidth
}

TEST_CASE("canonical internal ratios") {
  const CostSchedule s = canonical_schedule();
  CHECK(s.usd_per_lan_byte == s.usd_per_wan_byte / 10000.0);
  // The cpu-hour and per-instruction prices agree through the effective
  // rate: 1.25e12 instructions really do cost one eighth of a dollar.
  CHECK(s.effective_instructions_per_cpu_hour * s.usd_per_instruction ==
        s.usd_per_cpu_hour);
}

TEST_CASE("price category names round-trip") {
  for (PriceCategory c : kAllPriceCategories) {
    const auto back = price_category_from_string(to_string(c));
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK(!price_category_from_string("WAN").has_value());
  CHECK(!price_category_from_string("bandwidth").has_value());
  CHECK(!price_category_from_string("").has_value());
}

TEST_CASE("validate_schedule rejects broken schedules") {
  CostSchedule s = canonical_schedule();
  SUBCASE("negative price") {
    s.usd_per_disk_byte = -1e-9;
    CHECK_THROWS_AS(validate_schedule(s), ValidationError);
  }
  SUBCASE("non-finite price") {
    s.usd_per_wan_byte = std::nan("");
    CHECK_THROWS_AS(validate_schedule(s), ValidationError);
  }
  SUBCASE("LAN above WAN") {
    s.usd_per_lan_byte = 2.0 * s.usd_per_wan_byte;
    CHECK_THROWS_AS(validate_schedule(s), ValidationError);
  }
  SUBCASE("zero effective rate") {
    s.effective_instructions_per_cpu_hour = 0.0;
    CHECK_THROWS_AS(validate_schedule(s), ValidationError);
  }
  SUBCASE("zero prices are fine") {
    s.usd_per_wan_byte = 0.0;
    s.usd_per_lan_byte = 0.0;
    CHECK_NOTHROW(validate_schedule(s));
  }
}

TEST_CASE("reference baseline values") {
  const HardwareBaseline hw = reference_baseline();
  CHECK(hw.cpu_price_usd == 2000.0);
  CHECK(hw.cpu_clock_hz == 2e9);
  CHECK(hw.disk_price_usd == 200.0);
  CHECK(hw.disk_capacity.bytes() == 200e9);
  CHECK(hw.disk_accesses_per_sec == 100.0);
  CHECK(hw.disk_transfer_bytes_per_sec == 50e6);
  CHECK(hw.wan_price_usd_per_month == 100.0);
  CHECK(hw.wan_bits_per_sec == 1e6);
}

TEST_CASE("derive_schedule amortizes the reference hardware") {
  const CostSchedule s = derive_schedule(reference_baseline());

  // Recomputed from scratch. A 1 Mbps link at one-third utilization moves
  // 125,000 * 2.592e6 / 3 = 1.08e11 bytes a month for $100.
  CHECK(s.usd_per_wan_byte == doctest::Approx(100.0 / 1.08e11).epsilon(1e-12));
  CHECK(s.usd_per_lan_byte ==
        doctest::Approx(s.usd_per_wan_byte / 10000.0).epsilon(1e-12));
  // $2,000 of cpu over 36 months of 720 hours each.
  CHECK(s.usd_per_cpu_hour == doctest::Approx(2000.0 / 25920.0).epsilon(1e-12));
  // That cpu-hour delivers 3.47e8 * 3600 instructions.
  CHECK(s.usd_per_instruction ==
        doctest::Approx((2000.0 / 25920.0) / 1.2492e12).epsilon(1e-12));
  CHECK(s.effective_instructions_per_cpu_hour ==
        doctest::Approx(1.2492e12).epsilon(1e-12));
  // $200 for 200 GB of capacity is an exact 1e-9 per byte.
  CHECK(s.usd_per_disk_byte == doctest::Approx(1e-9).epsilon(1e-12));
  // 100 accesses/s at 20% duty over 36 months: 1.866 billion accesses.
  CHECK(s.usd_per_db_access ==
        doctest::Approx(200.0 / 1.86624e9).epsilon(1e-12));
  // 50 MB/s at 20% duty over 36 months: 9.3312e14 bytes through the arm.
  CHECK(s.usd_per_disk_bw_byte ==
        doctest::Approx(200.0 / 9.3312e14).epsilon(1e-12));
  // Energy is not derivable from this baseline and stays at the book value.
  CHECK(s.usd_per_watt_hour == canonical_schedule().usd_per_watt_hour);
  CHECK_NOTHROW(validate_schedule(s));
}

TEST_CASE("derived prices stay within factor 3 of the canonical schedule") {
  const CostSchedule d = derive_schedule(reference_baseline());
  const CostSchedule c = canonical_schedule();
  const auto within3 = [](double derived, double canonical) {
    return derived >= canonical / 3.0 && derived <= canonical * 3.0;
  };
  CHECK(within3(d.usd_per_wan_byte, c.usd_per_wan_byte));
  CHECK(within3(d.usd_per_lan_byte, c.usd_per_lan_byte));
  CHECK(within3(d.usd_per_instruction, c.usd_per_instruction));
  CHECK(within3(d.usd_per_cpu_hour, c.usd_per_cpu_hour));
  CHECK(within3(d.usd_per_disk_byte, c.usd_per_disk_byte));
  CHECK(within3(d.usd_per_db_access, c.usd_per_db_access));
  CHECK(within3(d.usd_per_disk_bw_byte, c.usd_per_disk_bw_byte));
  CHECK(within3(d.usd_per_watt_hour, c.usd_per_watt_hour));
}

TEST_CASE("derive_schedule rejects degenerate inputs") {
  HardwareBaseline hw = reference_baseline();
  SUBCASE("free cpu") {
    hw.cpu_price_usd = 0.0;
    CHECK_THROWS_AS(derive_schedule(hw), ValidationError);
  }
  SUBCASE("zero-capacity disk") {
    hw.disk_capacity = ByteCount(0.0);
    CHECK_THROWS_AS(derive_schedule(hw), ValidationError);
  }
  SUBCASE("bad utilization") {
    DerivationParams p;
    p.link_utilization = 0.0;
    CHECK_THROWS_AS(derive_schedule(hw, p), ValidationError);
    p.link_utilization = 1.5;
    CHECK_THROWS_AS(derive_schedule(hw, p), ValidationError);
  }
  SUBCASE("bad amortization") {
    DerivationParams p;
    p.amortization_months = -1.0;
    CHECK_THROWS_AS(derive_schedule(hw, p), ValidationError);
  }
  SUBCASE("zero instruction rate") {
    DerivationParams p;
    p.effective_instructions_per_second = 0.0;
    CHECK_THROWS_AS(derive_schedule(hw, p), ValidationError);
  }
}

TEST_CASE("beowulf schedule collapses WAN to LAN") {
  const CostSchedule base = canonical_schedule();
  const CostSchedule b = beowulf_schedule(base);
  CHECK(b.usd_per_wan_byte == base.usd_per_lan_byte);
  CHECK(b.usd_per_lan_byte == base.usd_per_lan_byte);
  // Nothing else moves.
  CostSchedule expect = base;
  expect.usd_per_wan_byte = base.usd_per_lan_byte;
  CHECK(b == expect);
  // Inside the cluster a byte and an instruction cost the same, so the
  // break-even intensity collapses to 1 instruction per byte.
  CHECK(b.usd_per_wan_byte / b.usd_per_instruction == 1.0);
}

TEST_CASE("cluster byte price is grounded in switch-port hardware") {
  // A $200 port moving 50 MB/s for three years prices a byte at about
  // 4.2e-14, within factor 3 of the 1e-13 cluster figure.
  const double port_price = 200.0 / (50e6 * 3.0 * 8766.0 * 3600.0);
  const double lan = canonical_schedule().usd_per_lan_byte;
  CHECK(port_price >= lan / 3.0);
  CHECK(port_price <= lan * 3.0);
}

TEST_CASE("moores_law_default halves both compute prices") {
  const TrendParams t = TrendParams::moores_law_default();
  CHECK(t.halving_for(PriceCategory::Instruction) == 18.0);
  CHECK(t.halving_for(PriceCategory::CpuHour) == 18.0);
  CHECK(!t.halving_for(PriceCategory::Wan).has_value());
  CHECK(!t.halving_for(PriceCategory::Disk).has_value());
}

TEST_CASE("project_schedule at t = 0 is the identity") {
  const CostSchedule s = canonical_schedule();
  CHECK(project_schedule(s, 0.0, TrendParams::moores_law_default()) == s);
  CHECK(project_schedule(s, 0.0, TrendParams{}) == s);
}

TEST_CASE("project_schedule scales by exact halvings") {
  const CostSchedule s = canonical_schedule();
  TrendParams t;
  t.halving_months[PriceCategory::Wan] = 36.0;
  t.halving_months[PriceCategory::Instruction] = 18.0;
  const CostSchedule p = project_schedule(s, 36.0, t);
  CHECK(p.usd_per_wan_byte == 0.5 * s.usd_per_wan_byte);
  CHECK(p.usd_per_instruction == 0.25 * s.usd_per_instruction);
  // Untrended categories and the effective rate hold still.
  CHECK(p.usd_per_lan_byte == s.usd_per_lan_byte);
  CHECK(p.usd_per_cpu_hour == s.usd_per_cpu_hour);
  CHECK(p.usd_per_disk_byte == s.usd_per_disk_byte);
  CHECK(p.usd_per_watt_hour == s.usd_per_watt_hour);
  CHECK(p.effective_instructions_per_cpu_hour ==
        s.effective_instructions_per_cpu_hour);
  // Under those trends the break-even threshold doubles to 20,000.
  CHECK(p.usd_per_wan_byte / p.usd_per_instruction ==
        doctest::Approx(20000.0).epsilon(1e-12));
}

TEST_CASE("project_schedule composes over time") {
  const CostSchedule s = canonical_schedule();
  TrendParams t;
  t.halving_months[PriceCategory::Wan] = 12.0;
  t.halving_months[PriceCategory::Instruction] = 18.0;
  t.halving_months[PriceCategory::CpuHour] = 18.0;
  const CostSchedule two_step =
      project_schedule(project_schedule(s, 7.5, t), 11.25, t);
  const CostSchedule one_step = project_schedule(s, 18.75, t);
  CHECK(two_step.usd_per_wan_byte ==
        doctest::Approx(one_step.usd_per_wan_byte).epsilon(1e-12));
  CHECK(two_step.usd_per_instruction ==
        doctest::Approx(one_step.usd_per_instruction).epsilon(1e-12));
  CHECK(two_step.usd_per_cpu_hour ==
        doctest::Approx(one_step.usd_per_cpu_hour).epsilon(1e-12));
}

TEST_CASE("project_schedule rejects bad arguments") {
  const CostSchedule s = canonical_schedule();
  CHECK_THROWS_AS(project_schedule(s, -1.0, TrendParams{}), ValidationError);
  TrendParams bad;
  bad.halving_months[PriceCategory::Wan] = 0.0;
  CHECK_THROWS_AS(project_schedule(s, 1.0, bad), ValidationError);
  bad.halving_months[PriceCategory::Wan] = -12.0;
  CHECK_THROWS_AS(project_schedule(s, 1.0, bad), ValidationError);
}

TEST_CASE("breakeven crossover solves the two-exponential race") {
  const CostSchedule s = canonical_schedule();
  TrendParams t;
  t.halving_months[PriceCategory::Wan] = 12.0;
  t.halving_months[PriceCategory::Instruction] = 18.0;

  SUBCASE("telecom outpacing compute halves the threshold in 36 months") {
    // Threshold decays as 2^(-t/36); from 10,000 down to 5,000 takes one
    // net halving.
    const auto res = breakeven_crossover(s, t, 5000.0);
    REQUIRE(res.has_value());
    CHECK(*res == doctest::Approx(36.0).epsilon(1e-9));
    const double then = project_schedule(s, *res, t).usd_per_wan_byte /
                        project_schedule(s, *res, t).usd_per_instruction;
    CHECK(then == doctest::Approx(5000.0).epsilon(1e-9));
  }
  SUBCASE("already at or below the target returns zero") {
    CHECK(breakeven_crossover(s, t, 20000.0) == 0.0);
    CHECK(breakeven_crossover(s, t, 10000.1) == 0.0);
  }
  SUBCASE("compute-only trends push the threshold up, never down") {
    CHECK(!breakeven_crossover(s, TrendParams::moores_law_default(), 5000.0)
               .has_value());
  }
  SUBCASE("no trends at all means no crossover") {
    CHECK(!breakeven_crossover(s, TrendParams{}, 5000.0).has_value());
  }
  SUBCASE("equal halvings cancel") {
    TrendParams even;
    even.halving_months[PriceCategory::Wan] = 18.0;
    even.halving_months[PriceCategory::Instruction] = 18.0;
    CHECK(!breakeven_crossover(s, even, 5000.0).has_value());
  }
}

TEST_CASE("crossover closed form agrees with a numeric search") {
  const CostSchedule s = canonical_schedule();
  TrendParams t;
  t.halving_months[PriceCategory::Wan] = 9.0;
  t.halving_months[PriceCategory::Instruction] = 45.0;
  const double target = 100.0;
  const auto closed = breakeven_crossover(s, t, target);
  REQUIRE(closed.has_value());

  // Bisection on the projected threshold, which is strictly decreasing.
  double lo = 0.0, hi = 1e5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const CostSchedule p = project_schedule(s, mid, t);
    if (p.usd_per_wan_byte / p.usd_per_instruction > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  CHECK(std::fabs(*closed - 0.5 * (lo + hi)) <= 0.01);
}

TEST_CASE("breakeven_crossover rejects bad arguments") {
  const CostSchedule s = canonical_schedule();
  CHECK_THROWS_AS(breakeven_crossover(s, TrendParams{}, 0.0), ValidationError);
  CHECK_THROWS_AS(breakeven_crossover(s, TrendParams{}, -10.0),
                  ValidationError);
  CostSchedule free_compute = s;
  free_compute.usd_per_instruction = 0.0;
  CHECK_THROWS_AS(breakeven_crossover(free_compute, TrendParams{}, 100.0),
                  ValidationError);
  TrendParams bad;
  bad.halving_months[PriceCategory::Wan] = -1.0;
  CHECK_THROWS_AS(breakeven_crossover(s, bad, 100.0), ValidationError);
}

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gridecon/corpus.hpp"
#include "gridecon/cost_model.hpp"
#include "gridecon/placement.hpp"
#include "gridecon/workload.hpp"

namespace gridecon {

// Reads and parses a JSON file. Throws IoError on unreadable files and on
// malformed JSON; schema problems inside well-formed documents throw
// ValidationError from the per-document parsers below.
nlohmann::json load_json_file(const std::string& path);

// Schedule document: an object holding any subset of the nine CostSchedule
// field names; omitted fields keep their canonical values, unknown fields
// are rejected. Prices accept plain numbers or money strings ("10µ$"); the
// effective rate accepts numbers or instruction strings ("1.25T").
CostSchedule schedule_from_json(const nlohmann::json& doc);
nlohmann::json schedule_to_json(const CostSchedule& s);

// Task document: TaskProfile field names, with quantity fields accepting
// suffixed strings ("0.5MB", "12h"). Compute demand is exactly one of
// "instructions" / "cpu_hours" (neither = zero demand). network_class is
// "WAN" or "LAN". Unknown fields are rejected.
TaskProfile task_from_json(const nlohmann::json& doc);
nlohmann::json task_to_json(const TaskProfile& task);

// Plan document: {"sites": [{"id", "usd_per_instruction"}], "links":
// {from: {to: price}}, "root": node, "client_site": id} plus an optional
// "default_link_price". A node object carries exactly one of "source" /
// "operator". Link entries not listed price at the run schedule's WAN rate
// (or the document's default_link_price); diagonal entries must be zero.
PlacementScenario plan_from_json(const nlohmann::json& doc);
nlohmann::json plan_to_json(const PlacementScenario& scenario);

// Trends document: category name -> halving time in months, or the string
// "constant" to pin the category.
TrendParams trends_from_json(const nlohmann::json& doc);
nlohmann::json trends_to_json(const TrendParams& trends);

struct BaselineDocument {
  HardwareBaseline baseline;
  DerivationParams params;
};

// Baseline document: HardwareBaseline field names (omitted fields keep the
// reference baseline's values) plus an optional "derivation" object with
// DerivationParams field names.
BaselineDocument baseline_from_json(const nlohmann::json& doc);
nlohmann::json baseline_to_json(const BaselineDocument& doc);

// Result serializers, full precision.
nlohmann::json breakdown_to_json(const CostBreakdown& b);
nlohmann::json mobility_to_json(const MobilityReport& m);
nlohmann::json placement_result_to_json(const PlacementResult& r);
nlohmann::json case_report_to_json(const CaseReport& r);
nlohmann::json corpus_report_to_json(const CorpusReport& r);

}  // namespace gridecon

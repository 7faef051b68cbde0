#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gridecon/quantities.hpp"

namespace gridecon {

// A federation member offering compute at a site-local instruction price.
// A price of zero models donated cycles.
struct Site {
  std::string id;
  double usd_per_instruction = 0.0;
};

// Directed per-byte transfer prices between sites. The diagonal is always
// zero; pairs without an explicit entry fall back to the default price.
class LinkPrices {
 public:
  explicit LinkPrices(double default_usd_per_byte = 0.0);

  void set(const std::string& from, const std::string& to,
           double usd_per_byte);
  double price(const std::string& from, const std::string& to) const;

  double default_price() const { return default_usd_per_byte_; }
  const std::map<std::pair<std::string, std::string>, double>& overrides()
      const {
    return overrides_;
  }

 private:
  double default_usd_per_byte_;
  std::map<std::pair<std::string, std::string>, double> overrides_;
};

struct PlanNode;

// A pinned dataset: its bytes live at one site and must be shipped from
// there.
struct SourceNode {
  std::string site_id;
  ByteCount bytes;
};

// A relational-style operator: consumes its children's outputs, spends
// instr_per_input_byte on every input byte, and emits selectivity times its
// input bytes. Unnamed operators get stable preorder labels ("op3").
struct OperatorNode {
  std::string name;
  std::vector<PlanNode> children;
  double instr_per_input_byte = 0.0;
  double selectivity = 1.0;
  std::optional<std::string> pinned_site;
};

struct PlanNode {
  std::variant<SourceNode, OperatorNode> node;
};

// An operator tree whose final output must arrive at the client site.
struct Plan {
  PlanNode root;
  std::string client_site;
};

// Operator label -> site id. Sources are not assigned; they live at home.
using Assignment = std::map<std::string, std::string>;

struct LabeledNode {
  std::string label;
  const PlanNode* node = nullptr;
};

// Preorder labels: an operator's explicit name, otherwise "op<N>"/"src<N>"
// with N the 1-based preorder index. Labels must be unique.
std::vector<LabeledNode> labeled_nodes(const Plan& plan);

struct NodeCost {
  std::string label;
  std::string site_id;
  bool is_source = false;
  double compute_cost = 0.0;
  double inbound_transfer_cost = 0.0;
  ByteCount output_bytes;
};

struct PlacementResult {
  Assignment assignment;
  double total_cost = 0.0;
  std::vector<NodeCost> per_node;  // preorder
  double delivery_cost = 0.0;      // root output shipped to the client
};

// Bytes a node emits: a source's size, or selectivity times the sum of the
// children's outputs.
ByteCount node_output_bytes(const PlanNode& node);

// Exact cost of one fixed assignment: every operator's compute plus the
// shipping of each child's output to it, plus delivery of the root output
// to the client.
double cost_of_assignment(const Plan& plan, const std::vector<Site>& sites,
                          const LinkPrices& links,
                          const Assignment& assignment);

// Minimizes cost_of_assignment by dynamic programming over the tree. Ties
// at a node go to the lexicographically smallest site id. The reported
// total is the recomputed cost of the returned assignment.
PlacementResult optimize(const Plan& plan, const std::vector<Site>& sites,
                         const LinkPrices& links);

// The do-nothing-clever reference points: shipping every source's raw
// bytes straight to the client, and running every unpinned operator there.
struct ShippingBaseline {
  double raw_shipping_cost = 0.0;  // source bytes x link(home, client)
  double ship_all_total = 0.0;     // cost of the everything-at-client plan
  ByteCount total_source_bytes;
};

ShippingBaseline shipping_baseline(const Plan& plan,
                                   const std::vector<Site>& sites,
                                   const LinkPrices& links);

}  // namespace gridecon

#include "gridecon/placement.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>

#include "gridecon/errors.hpp"

namespace gridecon {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

constexpr std::size_t kNoSite = static_cast<std::size_t>(-1);

}  // namespace

LinkPrices::LinkPrices(double default_usd_per_byte)
    : default_usd_per_byte_(default_usd_per_byte) {
  require(finite_nonneg(default_usd_per_byte),
          "default link price must be finite and non-negative");
}

void LinkPrices::set(const std::string& from, const std::string& to,
                     double usd_per_byte) {
  require(finite_nonneg(usd_per_byte),
          "link price must be finite and non-negative");
  if (from == to) {
    require(usd_per_byte == 0.0,
            "link price from a site to itself must be zero");
    return;
  }
  overrides_[{from, to}] = usd_per_byte;
}

double LinkPrices::price(const std::string& from, const std::string& to) const {
  if (from == to) return 0.0;
  auto it = overrides_.find({from, to});
  return it == overrides_.end() ? default_usd_per_byte_ : it->second;
}

ByteCount node_output_bytes(const PlanNode& node) {
  if (const auto* src = std::get_if<SourceNode>(&node.node)) {
    return src->bytes;
  }
  const auto& op = std::get<OperatorNode>(node.node);
  require(!op.children.empty(), "operator must have at least one child");
  require(finite_nonneg(op.selectivity),
          "selectivity must be finite and non-negative");
  double input = 0.0;
  for (const PlanNode& child : op.children) {
    input += node_output_bytes(child).bytes();
  }
  return ByteCount(op.selectivity * input);
}

namespace {

// Plan flattened to preorder; children always follow their parent, so a
// reverse index scan visits children before parents.
struct FlatNode {
  const PlanNode* node = nullptr;
  std::string label;
  bool is_source = false;
  std::string source_site;            // sources
  std::vector<std::size_t> children;  // operators
  double density = 0.0;
  double selectivity = 1.0;
  std::optional<std::string> pinned;
  double input_bytes = 0.0;
  double output_bytes = 0.0;
};

struct FlatPlan {
  std::vector<FlatNode> nodes;  // nodes[0] is the root
};

std::size_t flatten_into(const PlanNode& node, FlatPlan& fp) {
  const std::size_t idx = fp.nodes.size();
  fp.nodes.emplace_back();
  const std::size_t preorder = idx + 1;
  if (const auto* src = std::get_if<SourceNode>(&node.node)) {
    FlatNode& fn = fp.nodes[idx];
    fn.node = &node;
    fn.is_source = true;
    fn.source_site = src->site_id;
    fn.label = "src" + std::to_string(preorder);
    fn.output_bytes = src->bytes.bytes();
    return idx;
  }
  const auto& op = std::get<OperatorNode>(node.node);
  require(!op.children.empty(), "operator must have at least one child");
  require(finite_nonneg(op.instr_per_input_byte),
          "instr_per_input_byte must be finite and non-negative");
  require(finite_nonneg(op.selectivity),
          "selectivity must be finite and non-negative");
  {
    FlatNode& fn = fp.nodes[idx];
    fn.node = &node;
    fn.label = op.name.empty() ? "op" + std::to_string(preorder) : op.name;
    fn.density = op.instr_per_input_byte;
    fn.selectivity = op.selectivity;
    fn.pinned = op.pinned_site;
  }
  std::vector<std::size_t> children;
  double input = 0.0;
  for (const PlanNode& child : op.children) {
    const std::size_t ci = flatten_into(child, fp);
    children.push_back(ci);
    input += fp.nodes[ci].output_bytes;
  }
  FlatNode& fn = fp.nodes[idx];
  fn.children = std::move(children);
  fn.input_bytes = input;
  fn.output_bytes = fn.selectivity * input;
  return idx;
}

FlatPlan flatten(const Plan& plan) {
  FlatPlan fp;
  flatten_into(plan.root, fp);
  std::set<std::string> labels;
  for (const FlatNode& fn : fp.nodes) {
    require(labels.insert(fn.label).second,
            "duplicate node label: " + fn.label);
  }
  return fp;
}

// Site table sorted by id, with a dense link price matrix.
struct Resolved {
  std::vector<std::string> ids;
  std::vector<double> instr_price;
  std::vector<std::vector<double>> link;

  std::size_t index_of(const std::string& id, const char* role) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    require(it != ids.end() && *it == id,
            std::string(role) + " references unknown site: " + id);
    return static_cast<std::size_t>(it - ids.begin());
  }
};

Resolved resolve(const std::vector<Site>& sites, const LinkPrices& links) {
  require(!sites.empty(), "site list must be non-empty");
  std::vector<Site> sorted = sites;
  std::sort(sorted.begin(), sorted.end(),
            [](const Site& a, const Site& b) { return a.id < b.id; });
  Resolved r;
  for (const Site& s : sorted) {
    require(!s.id.empty(), "site id must be non-empty");
    require(r.ids.empty() || r.ids.back() != s.id,
            "duplicate site id: " + s.id);
    require(finite_nonneg(s.usd_per_instruction),
            "site instruction price must be finite and non-negative");
    r.ids.push_back(s.id);
    r.instr_price.push_back(s.usd_per_instruction);
  }
  const std::size_t n = r.ids.size();
  r.link.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p = links.price(r.ids[i], r.ids[j]);
      require(finite_nonneg(p), "link price must be finite and non-negative");
      r.link[i][j] = p;
    }
  }
  return r;
}

// Site index per flat node: a source's home, an operator's assignment.
std::vector<std::size_t> bind_sites(const FlatPlan& fp, const Resolved& r,
                                    const Assignment& assignment) {
  std::vector<std::size_t> site(fp.nodes.size(), kNoSite);
  for (std::size_t i = 0; i < fp.nodes.size(); ++i) {
    const FlatNode& fn = fp.nodes[i];
    if (fn.is_source) {
      site[i] = r.index_of(fn.source_site, "source");
      continue;
    }
    auto it = assignment.find(fn.label);
    require(it != assignment.end(),
            "assignment is missing operator: " + fn.label);
    site[i] = r.index_of(it->second, "assignment");
    if (fn.pinned) {
      require(it->second == *fn.pinned,
              "operator " + fn.label + " is pinned to " + *fn.pinned);
    }
  }
  return site;
}

// Cost of a bound plan. The accumulation shape here (term = child subtree
// cost + shipping, folded left to right) is exactly the shape the DP in
// optimize() minimizes over, so the two agree bit for bit.
double accumulate(const FlatPlan& fp, const Resolved& r,
                  const std::vector<std::size_t>& site, std::size_t i,
                  std::vector<NodeCost>* report) {
  const FlatNode& fn = fp.nodes[i];
  if (fn.is_source) {
    if (report) {
      NodeCost& nc = (*report)[i];
      nc.label = fn.label;
      nc.site_id = r.ids[site[i]];
      nc.is_source = true;
      nc.output_bytes = ByteCount(fn.output_bytes);
    }
    return 0.0;
  }
  const std::size_t s = site[i];
  const double compute = fn.density * fn.input_bytes * r.instr_price[s];
  double acc = compute;
  double inbound = 0.0;
  for (const std::size_t c : fn.children) {
    const double child_cost = accumulate(fp, r, site, c, report);
    const double transfer = fp.nodes[c].output_bytes * r.link[site[c]][s];
    acc += child_cost + transfer;
    inbound += transfer;
  }
  if (report) {
    NodeCost& nc = (*report)[i];
    nc.label = fn.label;
    nc.site_id = r.ids[s];
    nc.compute_cost = compute;
    nc.inbound_transfer_cost = inbound;
    nc.output_bytes = ByteCount(fn.output_bytes);
  }
  return acc;
}

double total_cost_of(const FlatPlan& fp, const Resolved& r,
                     const std::vector<std::size_t>& site,
                     std::size_t client, std::vector<NodeCost>* report,
                     double* delivery_out) {
  const double subtree = accumulate(fp, r, site, 0, report);
  const double delivery = fp.nodes[0].output_bytes * r.link[site[0]][client];
  if (delivery_out) *delivery_out = delivery;
  return subtree + delivery;
}

}  // namespace

double cost_of_assignment(const Plan& plan, const std::vector<Site>& sites,
                          const LinkPrices& links,
                          const Assignment& assignment) {
  const FlatPlan fp = flatten(plan);
  const Resolved r = resolve(sites, links);
  const std::size_t client = r.index_of(plan.client_site, "client_site");
  const std::vector<std::size_t> site = bind_sites(fp, r, assignment);
  return total_cost_of(fp, r, site, client, nullptr, nullptr);
}

std::vector<LabeledNode> labeled_nodes(const Plan& plan) {
  const FlatPlan fp = flatten(plan);
  std::vector<LabeledNode> out;
  out.reserve(fp.nodes.size());
  for (const FlatNode& fn : fp.nodes) {
    out.push_back({fn.label, fn.node});
  }
  return out;
}

ShippingBaseline shipping_baseline(const Plan& plan,
                                   const std::vector<Site>& sites,
                                   const LinkPrices& links) {
  ShippingBaseline out;
  double source_bytes = 0.0;
  Assignment at_client;
  for (const LabeledNode& ln : labeled_nodes(plan)) {
    if (const auto* src = std::get_if<SourceNode>(&ln.node->node)) {
      out.raw_shipping_cost +=
          src->bytes.bytes() * links.price(src->site_id, plan.client_site);
      source_bytes += src->bytes.bytes();
    } else {
      const auto& op = std::get<OperatorNode>(ln.node->node);
      at_client[ln.label] =
          op.pinned_site ? *op.pinned_site : plan.client_site;
    }
  }
  out.ship_all_total = cost_of_assignment(plan, sites, links, at_client);
  out.total_source_bytes = ByteCount(source_bytes);
  return out;
}

PlacementResult optimize(const Plan& plan, const std::vector<Site>& sites,
                         const LinkPrices& links) {
  const FlatPlan fp = flatten(plan);
  const Resolved r = resolve(sites, links);
  const std::size_t client = r.index_of(plan.client_site, "client_site");
  const std::size_t n = fp.nodes.size();
  const std::size_t nsites = r.ids.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Candidate sites per node, ascending by id so that taking the first
  // strict improvement yields the lexicographically smallest tie-break.
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FlatNode& fn = fp.nodes[i];
    if (fn.is_source) {
      cand[i] = {r.index_of(fn.source_site, "source")};
    } else if (fn.pinned) {
      cand[i] = {r.index_of(*fn.pinned, "pinned_site")};
    } else {
      cand[i].resize(nsites);
      for (std::size_t s = 0; s < nsites; ++s) cand[i][s] = s;
    }
  }

  // best[i][s]: minimal subtree cost with node i at site s (sources: 0 at
  // home). choice[c][s]: site the child c takes when its parent sits at s.
  std::vector<std::vector<double>> best(n, std::vector<double>(nsites, kInf));
  std::vector<std::vector<std::size_t>> choice(
      n, std::vector<std::size_t>(nsites, kNoSite));
  for (std::size_t ri = n; ri-- > 0;) {
    const FlatNode& fn = fp.nodes[ri];
    if (fn.is_source) {
      best[ri][cand[ri][0]] = 0.0;
      continue;
    }
    for (const std::size_t s : cand[ri]) {
      double acc = fn.density * fn.input_bytes * r.instr_price[s];
      for (const std::size_t c : fn.children) {
        const double out = fp.nodes[c].output_bytes;
        double best_term = kInf;
        std::size_t best_cs = kNoSite;
        for (const std::size_t cs : cand[c]) {
          const double term = best[c][cs] + out * r.link[cs][s];
          if (term < best_term) {
            best_term = term;
            best_cs = cs;
          }
        }
        choice[c][s] = best_cs;
        acc += best_term;
      }
      best[ri][s] = acc;
    }
  }

  double best_total = kInf;
  std::size_t root_site = kNoSite;
  for (const std::size_t s : cand[0]) {
    const double total = best[0][s] + fp.nodes[0].output_bytes * r.link[s][client];
    if (total < best_total) {
      best_total = total;
      root_site = s;
    }
  }

  std::vector<std::size_t> site(n, kNoSite);
  site[0] = root_site;
  // Preorder guarantees parents appear before children, so parents' sites
  // are settled by the time their children are visited.
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::size_t c : fp.nodes[i].children) {
      site[c] = choice[c][site[i]];
    }
  }

  PlacementResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fp.nodes[i].is_source) {
      result.assignment[fp.nodes[i].label] = r.ids[site[i]];
    }
  }
  result.per_node.resize(n);
  result.total_cost = total_cost_of(fp, r, site, client, &result.per_node,
                                    &result.delivery_cost);
  return result;
}

}  // namespace gridecon

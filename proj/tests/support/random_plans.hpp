#pragma once

// Randomized placement instances and an exhaustive reference minimizer.
// Shared by the placement property tests and the acceptance runner. Kept
// header-only and dumb on purpose: the oracle enumerates every assignment,
// so it is correct by inspection and only usable for tiny instances.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gridecon/placement.hpp"

namespace gridecon::testsupport {

struct RandomInstance {
  Plan plan;
  std::vector<Site> sites;
  LinkPrices links;
};

namespace detail {

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(std::mt19937& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

// Random tree over the given sites, spending at most ops_left operators.
inline PlanNode random_tree(std::mt19937& rng,
                            const std::vector<std::string>& site_ids,
                            int& ops_left, int depth) {
  const auto random_site = [&] {
    return site_ids[static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<int>(site_ids.size()) - 1))];
  };
  if (ops_left == 0 || depth >= 3 || chance(rng, 0.35)) {
    const double bytes = chance(rng, 0.1) ? 0.0 : uniform(rng, 0.0, 1e10);
    return PlanNode{SourceNode{random_site(), ByteCount(bytes)}};
  }
  --ops_left;
  OperatorNode op;
  op.instr_per_input_byte = chance(rng, 0.15) ? 0.0 : uniform(rng, 0.0, 1e5);
  if (chance(rng, 0.2)) {
    op.selectivity = chance(rng, 0.5) ? 1.0 : 0.0;
  } else {
    op.selectivity = uniform(rng, 0.0, 2.0);
  }
  if (chance(rng, 0.15)) op.pinned_site = random_site();
  const int arity = uniform_int(rng, 1, 3);
  for (int i = 0; i < arity; ++i) {
    op.children.push_back(random_tree(rng, site_ids, ops_left, depth + 1));
  }
  return PlanNode{OperatorNode{std::move(op)}};
}

}  // namespace detail

// An instance with at most max_ops operators and at most max_sites sites.
// Prices and selectivities cover the degenerate corners (zero prices, zero
// bytes, selectivity 0 and 1) with deliberate probability mass.
inline RandomInstance random_instance(std::mt19937& rng, int max_ops = 4,
                                      int max_sites = 4) {
  RandomInstance inst;
  const int nsites = detail::uniform_int(rng, 1, max_sites);
  std::vector<std::string> ids;
  for (int i = 0; i < nsites; ++i) {
    ids.push_back("s" + std::to_string(i + 1));
  }
  for (const std::string& id : ids) {
    const double price =
        detail::chance(rng, 0.2) ? 0.0 : detail::uniform(rng, 0.0, 2e-13);
    inst.sites.push_back(Site{id, price});
  }
  std::shuffle(inst.sites.begin(), inst.sites.end(), rng);

  inst.links = LinkPrices(detail::uniform(rng, 0.0, 2e-9));
  for (const std::string& from : ids) {
    for (const std::string& to : ids) {
      if (from != to && detail::chance(rng, 0.3)) {
        const double p =
            detail::chance(rng, 0.2) ? 0.0 : detail::uniform(rng, 0.0, 2e-9);
        inst.links.set(from, to, p);
      }
    }
  }

  int ops_left = max_ops;
  inst.plan.root = detail::random_tree(rng, ids, ops_left, 0);
  inst.plan.client_site = ids[static_cast<std::size_t>(
      detail::uniform_int(rng, 0, nsites - 1))];
  return inst;
}

// Exhaustive minimum of cost_of_assignment over every legal assignment
// (pinned operators only consider their pin). Exponential; tiny plans only.
inline double brute_force_min(const Plan& plan, const std::vector<Site>& sites,
                              const LinkPrices& links) {
  std::vector<std::string> op_labels;
  std::vector<std::vector<std::string>> choices;
  std::vector<std::string> all_ids;
  for (const Site& s : sites) all_ids.push_back(s.id);
  for (const LabeledNode& ln : labeled_nodes(plan)) {
    const auto* op = std::get_if<OperatorNode>(&ln.node->node);
    if (!op) continue;
    op_labels.push_back(ln.label);
    if (op->pinned_site) {
      choices.push_back({*op->pinned_site});
    } else {
      choices.push_back(all_ids);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(op_labels.size(), 0);
  for (;;) {
    Assignment a;
    for (std::size_t k = 0; k < op_labels.size(); ++k) {
      a[op_labels[k]] = choices[k][idx[k]];
    }
    const double cost = cost_of_assignment(plan, sites, links, a);
    if (cost < best) best = cost;

    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return best;
}

}  // namespace gridecon::testsupport

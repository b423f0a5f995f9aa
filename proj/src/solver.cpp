#include "streamlease/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

namespace streamlease {

namespace {

using VectorId = std::pair<RegionId, SiteId>;

VectorId vector_id(const MigrationVector& v) {
  return {v.bundle, v.target};
}

std::vector<VectorId> id_list(const std::vector<MigrationVector>& vectors) {
  std::vector<VectorId> ids;
  ids.reserve(vectors.size());
  for (const auto& v : vectors) {
    ids.push_back(vector_id(v));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

double vector_value(const MigrationVector& v, double cost_weight, double pref_weight,
                    Money headroom) {
  return pref_weight * v.degradation - cost_weight * money_ratio(v.saving, headroom);
}

/// Vectors grouped by owning bundle, in graph order.
std::vector<std::vector<const MigrationVector*>> group_by_bundle(const MigrationGraph& g) {
  std::vector<std::vector<const MigrationVector*>> groups;
  for (const auto& region : g.bundles) {
    std::vector<const MigrationVector*> options;
    for (const auto& v : g.vectors) {
      if (v.bundle == region) {
        options.push_back(&v);
      }
    }
    if (!options.empty()) {
      groups.push_back(std::move(options));
    }
  }
  return groups;
}

std::size_t candidate_set_count(const std::vector<std::vector<const MigrationVector*>>& groups) {
  std::size_t count = 1;
  for (const auto& options : groups) {
    if (count > std::numeric_limits<std::size_t>::max() / options.size()) {
      return std::numeric_limits<std::size_t>::max();  // saturate
    }
    count *= options.size();
  }
  return count;
}

/// Odometer over the per-bundle option lists. Invokes fn with one pointer
/// per group; an empty group list yields a single empty selection.
void for_each_selection(const std::vector<std::vector<const MigrationVector*>>& groups,
                        const std::function<void(const std::vector<const MigrationVector*>&)>& fn) {
  std::vector<std::size_t> odo(groups.size(), 0);
  std::vector<const MigrationVector*> selection(groups.size(), nullptr);
  while (true) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      selection[i] = groups[i][odo[i]];
    }
    fn(selection);
    std::size_t i = 0;
    for (; i < groups.size(); ++i) {
      if (++odo[i] < groups[i].size()) {
        break;
      }
      odo[i] = 0;
    }
    if (i == groups.size()) {
      return;
    }
  }
}

void check_enumeration_guard(const std::vector<std::vector<const MigrationVector*>>& groups,
                             const SolverLimits& limits) {
  const std::size_t count = candidate_set_count(groups);
  if (count > limits.max_candidate_sets) {
    throw std::runtime_error("candidate set enumeration would visit " + std::to_string(count) +
                             " sets, above the guard of " +
                             std::to_string(limits.max_candidate_sets));
  }
}

// Every candidate set satisfies the preference constraint by construction:
// vectors only ever point inside their bundle's top-k.
void assert_targets_within_top_k([[maybe_unused]] const Scenario& s,
                                 [[maybe_unused]] const MigrationGraph& g) {
#ifndef NDEBUG
  for (const auto& v : g.vectors) {
    const auto top = top_preferred_sites(s, v.bundle);
    assert(std::find(top.begin(), top.end(), v.target) != top.end());
  }
#endif
}

struct BestSolution {
  bool found = false;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<MigrationVector> chosen;
  std::vector<VectorId> ids;

  void offer(std::vector<MigrationVector> vectors, double obj) {
    if (found && obj > objective) {
      return;  // ties are the only case that needs the id comparison
    }
    auto ids_in = id_list(vectors);
    if (!found || obj < objective || (obj == objective && ids_in < ids)) {
      found = true;
      objective = obj;
      chosen = std::move(vectors);
      ids = std::move(ids_in);
    }
  }

  MigrationSolution finish() const {
    MigrationSolution sol;
    if (found) {
      sol.chosen = chosen;
      sol.objective = objective;
      sol.feasible = true;
    } else {
      sol.objective = std::numeric_limits<double>::infinity();
      sol.feasible = false;
    }
    return sol;
  }
};

// Branch and bound for the 0-1 knapsack, used past the DP cell guard.
// Items must be sorted by value/weight descending for the fractional bound.
struct KnapsackItem {
  std::size_t index;  // position in the caller's item list
  std::int64_t weight;
  double value;
};

struct BranchAndBound {
  const std::vector<KnapsackItem>& items;
  std::int64_t capacity = 0;
  double best_value = 0.0;
  std::vector<std::size_t> best_pick{};
  std::vector<std::size_t> pick{};

  void run(std::size_t i, std::int64_t room, double value) {
    if (value > best_value) {
      best_value = value;
      best_pick = pick;
    }
    if (i == items.size()) {
      return;
    }
    double bound = value;
    std::int64_t slack = room;
    for (std::size_t j = i; j < items.size() && slack > 0; ++j) {
      if (items[j].weight <= slack) {
        bound += items[j].value;
        slack -= items[j].weight;
      } else {
        bound += items[j].value * static_cast<double>(slack) /
                 static_cast<double>(items[j].weight);
        slack = 0;
      }
    }
    if (bound <= best_value) {
      return;
    }
    if (items[i].weight <= room) {
      pick.push_back(items[i].index);
      run(i + 1, room - items[i].weight, value + items[i].value);
      pick.pop_back();
    }
    run(i + 1, room, value);
  }
};

}  // namespace

std::vector<CandidateSet> enumerate_candidate_sets(const MigrationGraph& g,
                                                   const SolverLimits& limits) {
  const auto groups = group_by_bundle(g);
  check_enumeration_guard(groups, limits);
  std::vector<CandidateSet> sets;
  for_each_selection(groups, [&](const std::vector<const MigrationVector*>& selection) {
    CandidateSet set;
    set.vectors.reserve(selection.size());
    for (const MigrationVector* v : selection) {
      set.vectors.push_back(*v);
    }
    sets.push_back(std::move(set));
  });
  return sets;
}

std::vector<MigrationVector> knapsack_exclude(const std::vector<MigrationVector>& items,
                                              Money capacity, double cost_weight,
                                              double pref_weight, Money lease_headroom,
                                              const SolverLimits& limits) {
  if (capacity < Money{}) {
    throw std::invalid_argument("knapsack capacity must be >= 0");
  }

  // Only positively valued items are worth excluding; excluding anything
  // else would lower the total while still consuming capacity.
  std::vector<KnapsackItem> pool;
  std::int64_t pool_weight = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double value = vector_value(items[i], cost_weight, pref_weight, lease_headroom);
    const std::int64_t weight = items[i].saving.cents();
    if (weight <= 0) {
      throw std::invalid_argument("knapsack item weights must be positive cents");
    }
    if (value > 0.0 && weight <= capacity.cents()) {
      pool.push_back({i, weight, value});
      pool_weight += weight;
    }
  }
  if (pool.empty()) {
    return {};
  }

  const std::int64_t cap = std::min(capacity.cents(), pool_weight);
  std::vector<std::size_t> picked;

  const std::size_t cells = pool.size() * static_cast<std::size_t>(cap + 1);
  if (cells <= limits.max_dp_cells) {
    std::vector<double> best(cap + 1, 0.0);
    std::vector<std::uint8_t> take(cells, 0);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::int64_t w = cap; w >= pool[i].weight; --w) {
        const double candidate = best[w - pool[i].weight] + pool[i].value;
        if (candidate > best[w]) {
          best[w] = candidate;
          take[i * (cap + 1) + w] = 1;
        }
      }
    }
    std::int64_t w = cap;
    for (std::size_t i = pool.size(); i-- > 0;) {
      if (take[i * (cap + 1) + w]) {
        picked.push_back(pool[i].index);
        w -= pool[i].weight;
      }
    }
  } else {
    std::sort(pool.begin(), pool.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
      return a.value * static_cast<double>(b.weight) > b.value * static_cast<double>(a.weight);
    });
    BranchAndBound bb{pool, cap};
    bb.run(0, cap, 0.0);
    picked = bb.best_pick;
  }

  std::sort(picked.begin(), picked.end());
  std::vector<MigrationVector> out;
  out.reserve(picked.size());
  for (std::size_t index : picked) {
    out.push_back(items[index]);
  }
  return out;
}

MigrationSolution optimal_service_migration(const Scenario& s, const MigrationGraph& g,
                                            const SolverLimits& limits) {
  const Money headroom = lease_budget(s);
  if (headroom <= Money{}) {
    return MigrationSolution{{}, std::numeric_limits<double>::infinity(), false};
  }
  const Money needed = required_saving(s);
  const double p = s.cost_weight;
  const double q = s.pref_weight;

  assert_targets_within_top_k(s, g);
  const auto groups = group_by_bundle(g);
  check_enumeration_guard(groups, limits);

  BestSolution best;
  for_each_selection(groups, [&](const std::vector<const MigrationVector*>& selection) {
    Money total_save;
    for (const MigrationVector* v : selection) {
      total_save += v->saving;
    }
    if (total_save < needed) {
      return;  // this candidate set cannot reach the budget
    }
    std::vector<MigrationVector> set;
    set.reserve(selection.size());
    for (const MigrationVector* v : selection) {
      set.push_back(*v);
    }
    // Excluding the knapsack optimum leaves the cheapest-objective subset
    // that still saves at least `needed`.
    const auto excluded = knapsack_exclude(set, total_save - needed, p, q, headroom, limits);
    auto excluded_ids = id_list(excluded);
    std::vector<MigrationVector> kept;
    double objective = 0.0;
    for (const auto& v : set) {
      if (!std::binary_search(excluded_ids.begin(), excluded_ids.end(), vector_id(v))) {
        objective += vector_value(v, p, q, headroom);
        kept.push_back(v);
      }
    }
    best.offer(std::move(kept), objective);
  });
  return best.finish();
}

MigrationSolution online_service_migration(const Scenario& s, const MigrationGraph& g,
                                           const SolverLimits& limits) {
  const Money headroom = lease_budget(s);
  if (headroom <= Money{}) {
    return MigrationSolution{{}, std::numeric_limits<double>::infinity(), false};
  }
  const Money needed = required_saving(s);
  const double p = s.cost_weight;
  const double q = s.pref_weight;

  assert_targets_within_top_k(s, g);
  const auto groups = group_by_bundle(g);
  check_enumeration_guard(groups, limits);

  BestSolution best;
  for_each_selection(groups, [&](const std::vector<const MigrationVector*>& selection) {
    std::vector<const MigrationVector*> order = selection;
    std::sort(order.begin(), order.end(), [](const MigrationVector* a, const MigrationVector* b) {
      const double ra = a->degradation / static_cast<double>(a->saving.cents());
      const double rb = b->degradation / static_cast<double>(b->saving.cents());
      if (ra != rb) {
        return ra < rb;
      }
      return vector_id(*a) < vector_id(*b);
    });
    std::vector<MigrationVector> kept;
    double objective = 0.0;
    Money total_save;
    for (const MigrationVector* v : order) {
      const bool pays_for_itself =
          q * v->degradation < p * money_ratio(v->saving, headroom);
      // Cheapest degradation per saved cent goes first, so forced picks
      // while below the required saving hurt the objective the least.
      if (pays_for_itself || total_save < needed) {
        kept.push_back(*v);
        objective += vector_value(*v, p, q, headroom);
        total_save += v->saving;
      }
    }
    if (total_save < needed) {
      return;  // greedy could not reach the budget on this candidate set
    }
    best.offer(std::move(kept), objective);
  });
  return best.finish();
}

Assignment apply_migration(const Scenario& s, const MigrationSolution& solution) {
  if (!solution.feasible) {
    throw std::invalid_argument("cannot apply an infeasible migration solution");
  }
  ServedBy served;
  for (const auto& b : s.bundles) {
    if (!b.inert()) {
      served[b.region] = top_site(s, b.region);
    }
  }
  for (const auto& v : solution.chosen) {
    served[v.bundle] = v.target;
  }
  return Assignment{served, cost_breakdown(s, served)};
}

Assignment assign_top_preferred(const Scenario& s) {
  ServedBy served;
  for (const auto& b : s.bundles) {
    if (!b.inert()) {
      served[b.region] = top_site(s, b.region);
    }
  }
  return Assignment{served, cost_breakdown(s, served)};
}

Assignment assign_centralized(const Scenario& s, const std::vector<SiteId>& centers) {
  if (centers.empty()) {
    throw std::invalid_argument("centralized assignment needs at least one center");
  }
  for (const auto& center : centers) {
    s.site(center);  // throws on unknown ids
  }
  ServedBy served;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    SiteId choice = centers.front();
    double choice_pref = s.preference(b.region, choice);
    for (std::size_t i = 1; i < centers.size(); ++i) {
      const double pref = s.preference(b.region, centers[i]);
      if (pref > choice_pref || (pref == choice_pref && centers[i] < choice)) {
        choice = centers[i];
        choice_pref = pref;
      }
    }
    served[b.region] = std::move(choice);
  }
  return Assignment{served, cost_breakdown(s, served)};
}

SiteId cds_center(const std::vector<Scenario>& trace) {
  if (trace.empty()) {
    throw std::invalid_argument("cds_center needs a non-empty trace");
  }
  std::map<RegionId, std::int64_t> streams;
  for (const auto& slice : trace) {
    for (const auto& b : slice.bundles) {
      streams[b.region] += b.stream_count;
    }
  }
  const RegionId* busiest = nullptr;
  std::int64_t most = -1;
  for (const auto& [region, count] : streams) {  // map order breaks ties by id
    if (count > most) {
      busiest = &region;
      most = count;
    }
  }
  if (busiest == nullptr) {
    throw std::invalid_argument("cds_center needs a trace with at least one region");
  }
  return top_site(trace.front(), *busiest);
}

Money cds_benchmark_cost(const std::vector<Scenario>& trace, const SiteId& center) {
  if (trace.empty()) {
    throw std::invalid_argument("cds_benchmark_cost needs a non-empty trace");
  }
  Money peak;
  bool first = true;
  for (const auto& slice : trace) {
    const Assignment a = assign_centralized(slice, {center});
    if (first || a.breakdown.total > peak) {
      peak = a.breakdown.total;
      first = false;
    }
  }
  return peak;
}

Money cds_benchmark_cost(const std::vector<Scenario>& trace) {
  return cds_benchmark_cost(trace, cds_center(trace));
}

OracleResult brute_force_oracle(const Scenario& s, const SolverLimits& limits) {
  const Money headroom = lease_budget(s);
  if (headroom <= Money{}) {
    throw std::logic_error("lease budget is not positive; scenario is invalid");
  }
  const Money fixed = s.bootstrap_cost + cdn_cost(s);
  const double mass = preference_mass(s);
  const double p = s.cost_weight;
  const double q = s.pref_weight;

  struct Choice {
    SiteId site;
    std::int64_t lease_cents;
    double pref_mass;
  };
  std::vector<const SourceBundle*> active;
  std::vector<std::vector<Choice>> choices;
  std::size_t count = 1;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    active.push_back(&b);
    std::vector<Choice> options;
    for (const auto& site_id : top_preferred_sites(s, b.region)) {
      options.push_back({site_id, site_lease_cost(s.site(site_id), b.stream_count).cents(),
                         b.demand * s.preference(b.region, site_id)});
    }
    if (count > limits.max_oracle_assignments / options.size()) {
      throw std::runtime_error("instance too large for exhaustive search");
    }
    count *= options.size();
    choices.push_back(std::move(options));
  }

  OracleResult best;
  std::vector<std::size_t> best_odo;
  std::vector<std::size_t> odo(choices.size(), 0);
  while (true) {
    std::int64_t lease = 0;
    double achieved = 0.0;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      lease += choices[i][odo[i]].lease_cents;
      achieved += choices[i][odo[i]].pref_mass;
    }
    if (Money::from_cents(lease) + fixed <= s.budget) {
      const double pg = mass > 0.0 ? achieved / mass : 1.0;
      const double objective =
          p * money_ratio(Money::from_cents(lease), headroom) + q * (1.0 - pg);
      if (!best.feasible || objective < best.objective) {
        best.feasible = true;
        best.objective = objective;
        best_odo = odo;
      }
    }
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++odo[i] < choices[i].size()) {
        break;
      }
      odo[i] = 0;
    }
    if (i == choices.size()) {
      break;
    }
  }

  if (best.feasible) {
    ServedBy served;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      served[active[i]->region] = choices[i][best_odo[i]].site;
    }
    best.assignment = Assignment{served, cost_breakdown(s, served)};
  } else {
    best.objective = std::numeric_limits<double>::infinity();
  }
  return best;
}

}  // namespace streamlease

#pragma once

#include <cstddef>
#include <vector>

#include "streamlease/cost.hpp"
#include "streamlease/graph.hpp"
#include "streamlease/model.hpp"

namespace streamlease {

/// One maximal choice of migration vectors: exactly one vector for every
/// bundle that owns at least one, never two for the same bundle.
struct CandidateSet {
  std::vector<MigrationVector> vectors;

  bool operator==(const CandidateSet&) const = default;
};

/// Outcome of a migration solve. `objective` is the relative term the
/// solvers minimize: sum over chosen vectors of
/// pref_weight * degradation - cost_weight * saving / lease_budget.
/// An infeasible solution carries no vectors and an infinite objective.
struct MigrationSolution {
  std::vector<MigrationVector> chosen;
  double objective = 0.0;
  bool feasible = false;
};

/// Size guards for the exhaustive parts of the solver.
struct SolverLimits {
  std::size_t max_candidate_sets = 1'000'000;
  std::size_t max_dp_cells = 10'000'000;       // knapsack table size before branch and bound
  std::size_t max_oracle_assignments = 1'000'000;
};

/// Every maximal per-bundle vector selection (Cartesian product across
/// bundles owning vectors). A graph with no vectors yields one empty set.
/// Throws when the product exceeds limits.max_candidate_sets.
std::vector<CandidateSet> enumerate_candidate_sets(const MigrationGraph& g,
                                                   const SolverLimits& limits = {});

/// 0-1 knapsack over integer-cent weights: returns the subset of `items`
/// maximizing the summed objective value subject to total saving <= capacity.
/// Items whose value is not positive are never selected. Exact; falls back
/// to branch and bound past the DP cell guard.
std::vector<MigrationVector> knapsack_exclude(const std::vector<MigrationVector>& items,
                                              Money capacity, double cost_weight,
                                              double pref_weight, Money lease_headroom,
                                              const SolverLimits& limits = {});

/// Exact solver: walks every candidate set, discards those that cannot reach
/// the required saving, and removes the best knapsack exclusion from each
/// survivor. Returns the feasible solution with the minimal objective, ties
/// broken by the lexicographically smallest chosen-vector id list.
MigrationSolution optimal_service_migration(const Scenario& s, const MigrationGraph& g,
                                            const SolverLimits& limits = {});

/// Greedy heuristic: per candidate set, scans vectors by increasing
/// degradation/saving ratio and takes a vector when it pays for itself or
/// while the accumulated saving is still short of the required one. Matches
/// the exact solver's objective whenever the required saving is <= 0.
MigrationSolution online_service_migration(const Scenario& s, const MigrationGraph& g,
                                           const SolverLimits& limits = {});

/// Materializes a solution: migrated bundles go to their vector's target,
/// all other bundles to their most preferred site. Throws on an infeasible
/// solution.
Assignment apply_migration(const Scenario& s, const MigrationSolution& solution);

/// Baseline: every bundle at its most preferred site.
Assignment assign_top_preferred(const Scenario& s);

/// Baseline: every bundle at its most preferred site among `centers` (ties
/// by ascending site id). May violate the top-k constraint by design.
Assignment assign_centralized(const Scenario& s, const std::vector<SiteId>& centers);

/// The dedicated-server reference site: most preferred site of the region
/// with the most streams across the trace (ties by ascending region id).
SiteId cds_center(const std::vector<Scenario>& trace);

/// Peak total cost across the trace when one dedicated site serves every
/// bundle. Used as the budget for migration runs benchmarked against it.
Money cds_benchmark_cost(const std::vector<Scenario>& trace);
Money cds_benchmark_cost(const std::vector<Scenario>& trace, const SiteId& center);

struct OracleResult {
  Assignment assignment;
  double objective = 0.0;
  bool feasible = false;
};

/// Exhaustive reference: tries every assignment of each bundle to any of its
/// top-k sites, keeps those within budget, and minimizes the combined
/// objective under per-bundle costing. Throws when the assignment count
/// exceeds limits.max_oracle_assignments.
OracleResult brute_force_oracle(const Scenario& s, const SolverLimits& limits = {});

}  // namespace streamlease

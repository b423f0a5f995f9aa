#pragma once

#include <map>

#include "streamlease/model.hpp"

namespace streamlease {

/// Who serves whom: region id -> site id, covering every non-inert bundle.
using ServedBy = std::map<RegionId, SiteId>;

/// The full bill of one configuration. `total` is always the exact sum of
/// the three components.
struct CostBreakdown {
  Money bootstrap;
  Money lease;
  Money cdn;
  Money total;

  bool operator==(const CostBreakdown&) const = default;
};

/// A complete placement with its bill. `breakdown.lease` is the realized
/// (per-site packed) lease cost.
struct Assignment {
  ServedBy served_by;
  CostBreakdown breakdown;

  bool operator==(const Assignment&) const = default;
};

/// Lease cost of hosting `channel_count` channels at one site:
/// whole instances at the instance rate plus per-channel egress.
Money site_lease_cost(const CloudSite& site, std::int64_t channel_count);

/// Lease cost with every bundle at its most preferred site, each bundle
/// costed on its own instances (no packing across bundles).
Money initial_lease_cost(const Scenario& s);

/// Delivery cost: cdn_unit_cost times the demand of all non-inert bundles,
/// rounded to the nearest cent.
Money cdn_cost(const Scenario& s);

/// What remains of the budget for leasing: budget - bootstrap - CDN.
/// Positive for every valid scenario.
Money lease_budget(const Scenario& s);

/// Minimum total saving migrations must reach for the budget to hold:
/// initial lease + bootstrap + CDN - budget. Negative when the budget has
/// slack at the initial placement.
Money required_saving(const Scenario& s);

/// Lease cost of a placement with each bundle costed independently. This is
/// the cost model the solvers optimize against.
Money per_bundle_lease_cost(const Scenario& s, const ServedBy& served);

/// Lease cost of a placement with co-located bundles packed into shared
/// instances per site. Never exceeds the per-bundle figure.
Money packed_lease_cost(const Scenario& s, const ServedBy& served);

/// Demand-weighted preference of the best possible placement:
/// sum of demand * preference(region, top site) over non-inert bundles.
double preference_mass(const Scenario& s);

/// Achieved demand-weighted preference divided by the best possible one.
/// Always in (0, 1]; exactly 1 when every demand-carrying bundle sits at a
/// top-preference site. Throws if a non-inert bundle is unassigned.
double global_relative_preference(const Scenario& s, const ServedBy& served);

/// The scalar the solvers minimize:
///   cost_weight * per_bundle_lease / lease_budget
/// + pref_weight * (1 - global_relative_preference).
double combined_objective(const Scenario& s, const ServedBy& served);

/// Full bill of a placement; the lease component is packed per site.
CostBreakdown cost_breakdown(const Scenario& s, const ServedBy& served);

}  // namespace streamlease

#include "streamlease/cost.hpp"

#include <stdexcept>

namespace streamlease {

Money site_lease_cost(const CloudSite& site, std::int64_t channel_count) {
  if (channel_count < 0) {
    throw std::invalid_argument("channel_count must be >= 0");
  }
  const std::int64_t capacity = site.pricing.instance_capacity;
  const std::int64_t instances = (channel_count + capacity - 1) / capacity;
  return site.pricing.instance_rate * instances + site.pricing.egress_rate * channel_count;
}

Money initial_lease_cost(const Scenario& s) {
  Money sum;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    sum += site_lease_cost(s.site(top_site(s, b.region)), b.stream_count);
  }
  return sum;
}

Money cdn_cost(const Scenario& s) {
  double demand = 0.0;
  for (const auto& b : s.bundles) {
    if (!b.inert()) {
      demand += b.demand;
    }
  }
  return money_scale(s.cdn_unit_cost, demand);
}

Money lease_budget(const Scenario& s) {
  return s.budget - s.bootstrap_cost - cdn_cost(s);
}

Money required_saving(const Scenario& s) {
  return initial_lease_cost(s) + s.bootstrap_cost + cdn_cost(s) - s.budget;
}

namespace {

const SiteId& assigned_site(const ServedBy& served, const RegionId& region) {
  auto it = served.find(region);
  if (it == served.end()) {
    throw std::invalid_argument("bundle " + region + " is not assigned to any site");
  }
  return it->second;
}

}  // namespace

Money per_bundle_lease_cost(const Scenario& s, const ServedBy& served) {
  Money sum;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    sum += site_lease_cost(s.site(assigned_site(served, b.region)), b.stream_count);
  }
  return sum;
}

Money packed_lease_cost(const Scenario& s, const ServedBy& served) {
  std::map<SiteId, std::int64_t> channels;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    channels[assigned_site(served, b.region)] += b.stream_count;
  }
  Money sum;
  for (const auto& [site_id, count] : channels) {
    sum += site_lease_cost(s.site(site_id), count);
  }
  return sum;
}

double preference_mass(const Scenario& s) {
  double mass = 0.0;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    mass += b.demand * s.preference(b.region, top_site(s, b.region));
  }
  return mass;
}

double global_relative_preference(const Scenario& s, const ServedBy& served) {
  double achieved = 0.0;
  double best = 0.0;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    achieved += b.demand * s.preference(b.region, assigned_site(served, b.region));
    best += b.demand * s.preference(b.region, top_site(s, b.region));
  }
  if (best == 0.0) {
    return 1.0;  // no demand anywhere: nothing can be degraded
  }
  return achieved / best;
}

double combined_objective(const Scenario& s, const ServedBy& served) {
  const Money headroom = lease_budget(s);
  if (headroom <= Money{}) {
    throw std::logic_error("lease budget is not positive; scenario is invalid");
  }
  return s.cost_weight * money_ratio(per_bundle_lease_cost(s, served), headroom) +
         s.pref_weight * (1.0 - global_relative_preference(s, served));
}

CostBreakdown cost_breakdown(const Scenario& s, const ServedBy& served) {
  CostBreakdown bd;
  bd.bootstrap = s.bootstrap_cost;
  bd.lease = packed_lease_cost(s, served);
  bd.cdn = cdn_cost(s);
  bd.total = bd.bootstrap + bd.lease + bd.cdn;
  return bd;
}

}  // namespace streamlease

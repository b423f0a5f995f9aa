#pragma once

#include <map>
#include <string>
#include <vector>

#include "streamlease/money.hpp"

namespace streamlease {

using RegionId = std::string;
using SiteId = std::string;

/// A geographic area from which crowdsourced streams originate.
struct Region {
  RegionId id;
  std::string label;

  bool operator==(const Region&) const = default;
};

/// Lease pricing of one cloud site: instances are rented in whole units of
/// `instance_capacity` ingest channels at `instance_rate` each, plus a
/// per-channel egress charge.
struct PricingPolicy {
  Money instance_rate;
  int instance_capacity = 1;
  Money egress_rate;

  bool operator==(const PricingPolicy&) const = default;
};

/// A leasable datacenter location.
struct CloudSite {
  SiteId id;
  std::string label;
  PricingPolicy pricing;

  bool operator==(const CloudSite&) const = default;
};

/// All live streams uploaded from one region during the current time slice,
/// together with the aggregate viewer demand behind them. A bundle with no
/// streams is inert: it occupies no channels and carries no preference mass.
struct SourceBundle {
  RegionId region;
  int stream_count = 0;
  double demand = 0.0;

  bool inert() const { return stream_count == 0; }
  bool operator==(const SourceBundle&) const = default;
};

/// Quality score in (0, 1] of serving a region's streams from a site,
/// decreasing with network latency between the two.
using PreferenceTable = std::map<RegionId, std::map<SiteId, double>>;

/// The complete world at one decision epoch. Immutable once built; safe to
/// share across concurrent solver calls.
struct Scenario {
  std::vector<Region> regions;
  std::vector<CloudSite> sites;
  std::vector<SourceBundle> bundles;
  PreferenceTable preferences;

  int top_k = 1;         // bundles may only be served within their top_k sites
  Money bootstrap_cost;  // per-slice charge for the stream redirection front-end
  Money cdn_unit_cost;   // delivery cost per unit of viewer demand
  Money budget;          // per-slice ceiling on the total cost
  double cost_weight = 1.0;  // weight of the lease-cost term in the objective
  double pref_weight = 1.0;  // weight of the preference term in the objective

  const CloudSite* find_site(const SiteId& id) const;
  const SourceBundle* find_bundle(const RegionId& region) const;
  const CloudSite& site(const SiteId& id) const;            // throws if unknown
  const SourceBundle& bundle(const RegionId& region) const; // throws if unknown
  double preference(const RegionId& region, const SiteId& site) const;  // throws if absent

  bool operator==(const Scenario&) const = default;
};

/// Checks every structural invariant of the scenario. Violations are data,
/// not failures: each entry names the offending entity and the broken rule.
std::vector<std::string> validate_scenario(const Scenario& s);

/// The region's sites ordered by descending preference, ties broken by
/// ascending site id, truncated to min(top_k, site count).
std::vector<SiteId> top_preferred_sites(const Scenario& s, const RegionId& region);

/// The single most preferred site of a region (first entry of the list above).
SiteId top_site(const Scenario& s, const RegionId& region);

}  // namespace streamlease

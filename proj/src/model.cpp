#include "streamlease/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace streamlease {

const CloudSite* Scenario::find_site(const SiteId& id) const {
  for (const auto& s : sites) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

const SourceBundle* Scenario::find_bundle(const RegionId& region) const {
  for (const auto& b : bundles) {
    if (b.region == region) {
      return &b;
    }
  }
  return nullptr;
}

const CloudSite& Scenario::site(const SiteId& id) const {
  const CloudSite* s = find_site(id);
  if (s == nullptr) {
    throw std::out_of_range("unknown site id: " + id);
  }
  return *s;
}

const SourceBundle& Scenario::bundle(const RegionId& region) const {
  const SourceBundle* b = find_bundle(region);
  if (b == nullptr) {
    throw std::out_of_range("unknown region id: " + region);
  }
  return *b;
}

double Scenario::preference(const RegionId& region, const SiteId& site) const {
  auto row = preferences.find(region);
  if (row != preferences.end()) {
    auto cell = row->second.find(site);
    if (cell != row->second.end()) {
      return cell->second;
    }
  }
  throw std::out_of_range("missing preference entry (" + region + ", " + site + ")");
}

namespace {

double total_active_demand(const Scenario& s) {
  double sum = 0.0;
  for (const auto& b : s.bundles) {
    if (!b.inert()) {
      sum += b.demand;
    }
  }
  return sum;
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out;

  std::set<SiteId> site_ids;
  for (const auto& site : s.sites) {
    if (!site_ids.insert(site.id).second) {
      out.push_back("site " + site.id + ": duplicate id");
    }
    if (site.pricing.instance_rate < Money{}) {
      out.push_back("site " + site.id + ": instance_rate must be >= 0");
    }
    if (site.pricing.egress_rate < Money{}) {
      out.push_back("site " + site.id + ": egress_rate must be >= 0");
    }
    if (site.pricing.instance_capacity < 1) {
      out.push_back("site " + site.id + ": instance_capacity must be >= 1");
    }
  }

  std::set<RegionId> region_ids;
  for (const auto& region : s.regions) {
    if (!region_ids.insert(region.id).second) {
      out.push_back("region " + region.id + ": duplicate id");
    }
  }

  std::set<RegionId> bundled;
  for (const auto& b : s.bundles) {
    if (region_ids.count(b.region) == 0) {
      out.push_back("bundle " + b.region + ": no such region");
    }
    if (!bundled.insert(b.region).second) {
      out.push_back("bundle " + b.region + ": more than one bundle for the region");
    }
    if (b.stream_count < 0) {
      out.push_back("bundle " + b.region + ": stream_count must be >= 0");
    }
    if (b.demand < 0.0) {
      out.push_back("bundle " + b.region + ": demand must be >= 0");
    }
  }
  for (const auto& region : s.regions) {
    if (bundled.count(region.id) == 0) {
      out.push_back("region " + region.id + ": missing bundle");
    }
  }

  for (const auto& region : s.regions) {
    for (const auto& site : s.sites) {
      auto row = s.preferences.find(region.id);
      const double* value = nullptr;
      if (row != s.preferences.end()) {
        auto cell = row->second.find(site.id);
        if (cell != row->second.end()) {
          value = &cell->second;
        }
      }
      if (value == nullptr) {
        out.push_back("preference (" + region.id + ", " + site.id + "): missing entry");
      } else if (*value <= 0.0 || *value > 1.0) {
        out.push_back("preference (" + region.id + ", " + site.id + "): value " +
                      std::to_string(*value) + " outside (0, 1]");
      }
    }
  }
  for (const auto& [region, row] : s.preferences) {
    if (region_ids.count(region) == 0) {
      out.push_back("preference (" + region + ", *): unknown region");
      continue;
    }
    for (const auto& [site, value] : row) {
      if (site_ids.count(site) == 0) {
        out.push_back("preference (" + region + ", " + site + "): unknown site");
      }
    }
  }

  if (s.top_k < 1) {
    out.push_back("params: k must be >= 1");
  }
  if (s.top_k > static_cast<int>(s.sites.size())) {
    out.push_back("params: k exceeds the site count (k=" + std::to_string(s.top_k) +
                  ", sites=" + std::to_string(s.sites.size()) + ")");
  }
  if (s.cost_weight < 0.0) {
    out.push_back("params: weight p must be >= 0");
  }
  if (s.pref_weight < 0.0) {
    out.push_back("params: weight q must be >= 0");
  }
  if (s.cost_weight + s.pref_weight <= 0.0) {
    out.push_back("params: weights p and q must not both be zero");
  }
  if (s.bootstrap_cost < Money{}) {
    out.push_back("params: c0 must be >= 0");
  }
  if (s.cdn_unit_cost < Money{}) {
    out.push_back("params: cdn_unit_cost must be >= 0");
  }

  // Below this floor even an empty lease plan busts the budget.
  const Money cdn = money_scale(s.cdn_unit_cost, total_active_demand(s));
  if (s.budget <= s.bootstrap_cost + cdn) {
    out.push_back("params: budget " + s.budget.str() + " must exceed bootstrap plus CDN cost " +
                  (s.bootstrap_cost + cdn).str());
  }

  return out;
}

std::vector<SiteId> top_preferred_sites(const Scenario& s, const RegionId& region) {
  const bool known = std::any_of(s.regions.begin(), s.regions.end(),
                                 [&](const Region& r) { return r.id == region; });
  if (!known) {
    throw std::out_of_range("unknown region id: " + region);
  }
  std::vector<SiteId> ids;
  ids.reserve(s.sites.size());
  for (const auto& site : s.sites) {
    ids.push_back(site.id);
  }
  std::sort(ids.begin(), ids.end(), [&](const SiteId& a, const SiteId& b) {
    const double pa = s.preference(region, a);
    const double pb = s.preference(region, b);
    if (pa != pb) {
      return pa > pb;
    }
    return a < b;
  });
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s.top_k), ids.size());
  ids.resize(k);
  return ids;
}

SiteId top_site(const Scenario& s, const RegionId& region) {
  auto top = top_preferred_sites(s, region);
  if (top.empty()) {
    throw std::logic_error("scenario has no sites");
  }
  return top.front();
}

}  // namespace streamlease

#include "streamlease/graph.hpp"

#include <cstdio>
#include <sstream>

namespace streamlease {

Money reference_price(const CloudSite& site) {
  return site_lease_cost(site, 1);
}

std::vector<DirectionEdge> build_direction_edges(const Scenario& s) {
  std::vector<DirectionEdge> edges;
  for (const auto& from : s.sites) {
    for (const auto& to : s.sites) {
      if (from.id != to.id && reference_price(from) > reference_price(to)) {
        edges.push_back({from.id, to.id});
      }
    }
  }
  return edges;
}

std::vector<MigrationVector> generate_migration_vectors(const Scenario& s) {
  const double mass = preference_mass(s);
  std::vector<MigrationVector> vectors;
  for (const auto& b : s.bundles) {
    if (b.inert()) {
      continue;
    }
    const auto top = top_preferred_sites(s, b.region);
    const CloudSite& origin = s.site(top.front());
    for (const auto& target_id : top) {
      if (target_id == origin.id) {
        continue;
      }
      const CloudSite& target = s.site(target_id);
      if (reference_price(origin) <= reference_price(target)) {
        continue;  // no direction edge towards this site
      }
      const Money saving =
          site_lease_cost(origin, b.stream_count) - site_lease_cost(target, b.stream_count);
      if (saving <= Money{}) {
        continue;  // cheaper at the reference load but not at this bundle's load
      }
      const double drop = s.preference(b.region, origin.id) - s.preference(b.region, target_id);
      MigrationVector v;
      v.bundle = b.region;
      v.origin = origin.id;
      v.target = target_id;
      v.degradation = mass > 0.0 ? b.demand * drop / mass : 0.0;
      v.saving = saving;
      vectors.push_back(std::move(v));
    }
  }
  return vectors;
}

MigrationGraph build_migration_graph(const Scenario& s) {
  MigrationGraph g;
  for (const auto& site : s.sites) {
    g.sites.push_back(site.id);
  }
  for (const auto& b : s.bundles) {
    if (!b.inert()) {
      g.bundles.push_back(b.region);
    }
  }
  g.direction_edges = build_direction_edges(s);
  g.vectors = generate_migration_vectors(s);
  return g;
}

std::string dump_graph(const MigrationGraph& g) {
  std::ostringstream out;
  for (const auto& site : g.sites) {
    out << "site " << site << "\n";
  }
  for (const auto& bundle : g.bundles) {
    out << "bundle " << bundle << "\n";
  }
  for (const auto& e : g.direction_edges) {
    out << "edge " << e.from << " -> " << e.to << "\n";
  }
  char buf[64];
  for (const auto& v : g.vectors) {
    std::snprintf(buf, sizeof(buf), "%.5f", v.degradation);
    out << "vector " << v.bundle << ": " << v.origin << " -> " << v.target << " deg=" << buf
        << " save=" << v.saving.str() << "\n";
  }
  return out.str();
}

}  // namespace streamlease
